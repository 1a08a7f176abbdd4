#ifndef TTSTAR_KERNEL_HPP
#define TTSTAR_KERNEL_HPP

// The trusted core. A Theorem can only be obtained from Kernel::assume (a
// hypothesis, recorded as such) or from Kernel::apply on theorems and
// explicit parameters; every side condition is checked there.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ttstar/sequent.hpp"
#include "ttstar/term.hpp"

namespace ttstar {

enum class RuleId : std::uint8_t {
  // structural
  Ax, Wr, Cut, Efq, Exh,
  // form
  Tm, LambdaInst, BetaCon, BetaExp, ASubI, ASubII, AInst, Ext, AImpBot,
  // operational
  NotI, Ra, NotInst, ImpI, ImpE, ImpInst,
  SomeI, SomeE, SomeInst, AllI, AllE, AllInst,
  EqI, EqE, EqInst, IotaI, IotaE, IotaInst,
};

enum class RuleGroup : std::uint8_t { Structural, Form, Operational };

const std::vector<RuleId>& all_rules();
std::string_view rule_name(RuleId id);  // ax, beta-con, a-sub-ii, iota-inst, ...
std::optional<RuleId> rule_from_name(std::string_view name);
RuleGroup rule_group(RuleId id);

// A rule parameter as written in proof scripts:
//   [M, ...]   a match set          X :t x    a match
//   X          a construction       x:t       a variable (binder form)
//   @1.2       an occurrence path   type t    a type
using Param = std::variant<MatchSet, Match, Construction, Variable, Path, Type>;
using Params = std::vector<Param>;
std::string print(const Param& p);

class Theorem {
 public:
  const Sequent& sequent() const;
  // "hyp" for hypotheses, otherwise the primitive rule name.
  std::string_view rule() const;
  std::optional<RuleId> rule_id() const;
  const std::vector<Theorem>& premises() const;
  const Params& params() const;
  const std::string& hypothesis() const;  // name given to assume()

 private:
  friend class Kernel;
  struct Node;
  explicit Theorem(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct KernelConfig {
  bool enable_a_imp_bot = false;
};

// Same lhs and type, and either one rhs proper and the other improper, or
// both rhs acquisitions whose objects are fixed and distinct in every model
// (T against F, or two syntactically distinct quotations).
bool patently_incompatible(const Match& m1, const Match& m2);

// Variables a rule introduces must be pairwise distinct and not free in any
// of the listed contexts. Returns a description of the first violation.
struct FreshnessCheck {
  std::vector<Variable> introduced;
  std::vector<const MatchSet*> sets;
  std::vector<Match> matches;
  std::vector<Construction> constructions;
};
std::optional<std::string> check_freshness(const FreshnessCheck& check);

class Kernel {
 public:
  explicit Kernel(Signature signature, KernelConfig config = {});

  const Signature& signature() const { return signature_; }
  const KernelConfig& config() const { return config_; }

  // A hypothesis theorem; the sequent must type-check.
  Theorem assume(const Sequent& s, std::string name = {}) const;

  Theorem apply(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const;
  Theorem apply_structural(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const;
  Theorem apply_form(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const;
  Theorem apply_operational(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const;

  // Re-executes the whole provenance tree from its hypotheses; Replay error
  // if any step yields a different sequent.
  Theorem replay(const Theorem& t) const;

 private:
  Theorem make(RuleId rule, const std::vector<Theorem>& premises, const Params& params, Sequent s) const;

  Signature signature_;
  KernelConfig config_;
};

}  // namespace ttstar

#endif  // TTSTAR_KERNEL_HPP
