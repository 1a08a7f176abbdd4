#ifndef TTSTAR_SEQUENT_HPP
#define TTSTAR_SEQUENT_HPP

#include <compare>
#include <initializer_list>
#include <optional>
#include <set>
#include <vector>

#include "ttstar/term.hpp"

namespace ttstar {

// X :t x  or  X :t !  (rhs == nullopt). A proper rhs is always a variable or
// an acquisition other than bot.
class Match {
 public:
  Match(Construction lhs, Type type, std::optional<Construction> rhs);
  static Match improper(Construction lhs, Type type) { return Match(std::move(lhs), std::move(type), std::nullopt); }

  const Construction& lhs() const { return lhs_; }
  const Type& type() const { return type_; }
  const std::optional<Construction>& rhs() const { return rhs_; }
  bool is_improper() const { return !rhs_.has_value(); }
  bool is_proper() const { return rhs_.has_value(); }

  friend bool operator==(const Match&, const Match&) = default;
  friend std::strong_ordering operator<=>(const Match& a, const Match& b);

 private:
  Construction lhs_;
  Type type_;
  std::optional<Construction> rhs_;
};

// Variables and non-bot acquisitions: the constructions that are proper
// under every assignment.
bool is_simple(const Construction& x);

// lhs and rhs both infer exactly the stated type.
void check_match(const Match& m, const Signature& signature);

std::set<Variable> free_variables(const Match& m);
bool occurs_free(std::string_view name, const Match& m);

using MatchSet = std::set<Match>;

struct Sequent {
  MatchSet antecedent;
  Match succedent;

  Sequent(MatchSet antecedent, Match succedent)
      : antecedent(std::move(antecedent)), succedent(std::move(succedent)) {}

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

std::set<Variable> free_variables(const Sequent& s);
bool free_in(std::string_view name, const MatchSet& gamma);
void collect_names(const Sequent& s, std::set<std::string>& out);
void check_sequent(const Sequent& s, const Signature& signature);

inline MatchSet with(MatchSet gamma, std::initializer_list<Match> extra) {
  for (const auto& m : extra) gamma.insert(m);
  return gamma;
}

inline MatchSet without(MatchSet gamma, const Match& m) {
  gamma.erase(m);
  return gamma;
}

}  // namespace ttstar

#endif  // TTSTAR_SEQUENT_HPP
