#include "ttstar/sequent.hpp"

#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

bool is_simple(const Construction& x) {
  return x.is_variable() || x.is_quote() || (x.is_constant() && !x.is_bot());
}

Match::Match(Construction lhs, Type type, std::optional<Construction> rhs)
    : lhs_(std::move(lhs)), type_(std::move(type)), rhs_(std::move(rhs)) {
  if (rhs_ && !is_simple(*rhs_))
    fail(ErrorKind::Shape, "match right-hand side must be a variable or acquisition, got " + print(*rhs_));
}

std::strong_ordering operator<=>(const Match& a, const Match& b) {
  if (auto c = a.lhs_ <=> b.lhs_; c != 0) return c;
  if (auto c = a.type_ <=> b.type_; c != 0) return c;
  if (a.rhs_.has_value() != b.rhs_.has_value()) return a.rhs_.has_value() <=> b.rhs_.has_value();
  if (!a.rhs_) return std::strong_ordering::equal;
  return *a.rhs_ <=> *b.rhs_;
}

void check_match(const Match& m, const Signature& signature) {
  Type lt = type_of(m.lhs(), signature);
  if (lt != m.type())
    fail(ErrorKind::Type, "match " + print(m) + ": left-hand side has type " + print(lt));
  if (m.rhs()) {
    Type rt = type_of(*m.rhs(), signature);
    if (rt != m.type())
      fail(ErrorKind::Type, "match " + print(m) + ": right-hand side has type " + print(rt));
  }
}

std::set<Variable> free_variables(const Match& m) {
  auto out = free_variables(m.lhs());
  if (m.rhs())
    for (const auto& v : free_variables(*m.rhs())) out.insert(v);
  return out;
}

bool occurs_free(std::string_view name, const Match& m) {
  return occurs_free(name, m.lhs()) || (m.rhs() && occurs_free(name, *m.rhs()));
}

std::set<Variable> free_variables(const Sequent& s) {
  auto out = free_variables(s.succedent);
  for (const auto& m : s.antecedent)
    for (const auto& v : free_variables(m)) out.insert(v);
  return out;
}

bool free_in(std::string_view name, const MatchSet& gamma) {
  for (const auto& m : gamma)
    if (occurs_free(name, m)) return true;
  return false;
}

void collect_names(const Sequent& s, std::set<std::string>& out) {
  auto add = [&](const Match& m) {
    collect_names(m.lhs(), out);
    if (m.rhs()) collect_names(*m.rhs(), out);
  };
  for (const auto& m : s.antecedent) add(m);
  add(s.succedent);
}

void check_sequent(const Sequent& s, const Signature& signature) {
  for (const auto& m : s.antecedent) check_match(m, signature);
  check_match(s.succedent, signature);
}

}  // namespace ttstar
