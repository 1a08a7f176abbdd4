#ifndef TTSTAR_DERIVED_HPP
#define TTSTAR_DERIVED_HPP

// Derived rules as fixed expansions into primitive kernel steps, and the
// proof-script replay engine. Expansions never bypass the kernel: the theorem
// they return is built from primitive applications only, so Kernel::replay
// reproduces it without knowing the derived rule existed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttstar/error.hpp"
#include "ttstar/kernel.hpp"
#include "ttstar/script.hpp"
#include "ttstar/syntax.hpp"

namespace ttstar {

enum class DerivedRuleId : std::uint8_t {
  Eg,                // C(X) :o 'T  =>  'some<t>(\x. C(x)) :o 'T
  LNotIii,           // 'not(O) :o 'T  =>  O :o 'F
  LAppBot,           // Xi :ti !  =>  Y(X1..Xm) :t !               (Y(X..) given)
  Si1,               // S :o 'T, 'eq<i>(A, B) :o 'T  =>  S[B/A]     (@paths optional)
  Si2,               // as si1 for office identity 'eq<(w)->t>
  LDescE,            // 'eq<t>('the<t>(C), x) :o 'T  =>  C(x) :o 'T  (redex contracted)
  Spr1,              // F(D) :o o  =>  'some<t>(\x. 'eq<t>(D, x)) :o 'T
  Spr2,              // 'not('some<t>(\x. 'eq<t>(D, x))) :o 'T  =>  F(D) :o !   (F(D) given)
  Spr3,              // F(D) :o !, F(y) :o o  =>  'some<t>(\x. 'eq<t>(x, D)) :o 'F
  LDescBotApp,       // F(D) :o !, F(y) :o o  =>  D :t !
  LSigmaDescBotApp,  // D :t !  =>  'some<t>(\x. 'eq<t>(x, D)) :o 'F
};

const std::vector<DerivedRuleId>& all_derived_rules();
std::string_view derived_rule_name(DerivedRuleId id);  // eg, l-not-iii, spr2, ...
std::optional<DerivedRuleId> derived_rule_from_name(std::string_view name);

struct Expansion {
  Theorem theorem;
  std::vector<Theorem> trace;  // primitive applications in the order performed
};

// Parameters: eg, spr1, spr3 and l-sigma-desc-bot-app accept an optional
// binder `x:t` naming the bound variable of the conclusion (default: a fresh
// name); l-app-bot and spr2 take the application to conclude improper;
// si1/si2 take zero or more occurrence paths into S (default: all).
// Fresh variables avoid every name occurring in the premises and parameters.
Expansion expand_derived(const Kernel& kernel, DerivedRuleId rule, const std::vector<Theorem>& premises,
                         const Params& params);

struct StepReport {
  std::string id;
  std::string rule;
  int line = 0;
  bool ok = false;
  std::size_t primitive_steps = 0;
  std::string message;  // failure description
  std::optional<ErrorKind> error;
};

struct ProofReport {
  std::string name;
  bool ok = false;
  std::vector<StepReport> steps;  // up to and including the first failure
  std::optional<Theorem> theorem;  // the last step, replayed through the kernel alone
  std::size_t primitive_steps = 0;
  std::string message;
  std::optional<ErrorKind> error;

  const StepReport* failure() const;
};

// Checks every step in order: the (possibly derived) rule is applied to the
// referenced theorems and the produced sequent must equal the claimed one.
// Halts at the first failing step. Never throws for step failures.
ProofReport replay_proof(const ProofScript& script, const Theory& theory, KernelConfig config = {});

}  // namespace ttstar

#endif  // TTSTAR_DERIVED_HPP
