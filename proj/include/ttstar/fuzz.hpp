#ifndef TTSTAR_FUZZ_HPP
#define TTSTAR_FUZZ_HPP

// Randomised soundness checking. An instance of a rule is drawn from a
// bounded-depth grammar shaped by the rule's schema, accepted only if the
// kernel (or the derived-rule expansion) accepts it, and then checked against
// several random finite models: whenever every premise is valid in a model,
// the conclusion must be valid there too.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ttstar/derived.hpp"
#include "ttstar/kernel.hpp"
#include "ttstar/model.hpp"
#include "ttstar/syntax.hpp"

namespace ttstar {

// Random constructions over a theory: its constants and declared variables
// are the atoms; binders reuse a few names per type so capture situations
// arise often.
class Generator {
 public:
  Generator(const Theory& theory, std::mt19937_64& rng, int max_depth = 4);

  bool chance(double p);
  std::size_t below(std::size_t n);
  int max_depth() const { return max_depth_; }

  Type element_type();  // i, o or w, weighted toward i
  Construction construction(const Type& t);  // depth 1 .. max_depth
  Construction construction(const Type& t, int depth);
  Construction abstraction(const Type& function_type, int depth);
  Construction simple(const Type& t);  // variable or non-bot acquisition
  Construction klass(const Type& element);  // a construction of (element)->o
  Match match();
  Match match(Construction lhs, const Type& t);  // random rhs, sometimes improper
  MatchSet context(std::size_t max_size = 2);

  // A variable named apart from the theory (n1, n2, ...); now and then a
  // declared variable instead, so that freshness conditions get exercised.
  Variable fresh(const Type& t);
  void reset();  // restarts fresh numbering

  const Signature& signature() const { return theory_.signature; }

 private:
  std::optional<Construction> atom(const Type& t, bool allow_bot);
  Construction compound(const Type& t, int depth);
  std::string binder_name(const Type& t, const std::vector<Variable>& taken);

  const Theory& theory_;
  std::mt19937_64& rng_;
  int max_depth_;
  std::vector<Type> function_types_;  // operator types reachable from the theory, curried results included
  std::vector<Variable> bound_;
  int fresh_counter_ = 0;
};

Frame random_frame(int max_i, int max_w, std::mt19937_64& rng);
// Each table entry is undefined with probability 1/4, otherwise uniform.
Model random_model(const Signature& signature, const Frame& frame, std::mt19937_64& rng,
                   std::size_t cap = kDefaultCap);

// Constants P, Q : (i)->o, R : (i,i)->o, g : (i)->i, c, d : i, q : o,
// offices h, h2 : (w)->i, B : (w)->((i)->o), S : (w)->((i,(w)->i)->o);
// variables x, y, z : i, p, r : o, u : w, f : (i)->o, k : (i)->i, e : (w)->i.
const Theory& fuzz_theory();

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::size_t first_trial = 0;  // trial indices first_trial .. first_trial + trials - 1
  int max_i = 3;
  int max_w = 2;
  std::size_t cap = kDefaultCap;
  int max_depth = 4;
  std::size_t models_per_trial = 16;
  std::size_t max_attempts = 400;  // rejection sampling per trial
  KernelConfig kernel;
};

struct Violation {
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // the trial's generator seed
  std::vector<std::string> premises;
  std::string conclusion;
  std::string model;
  std::string assignment;
};

struct FuzzStats {
  std::string rule;
  std::size_t trials = 0;
  std::size_t instances = 0;      // trials with an accepted instance
  std::size_t rejected = 0;       // candidates refused by the kernel
  std::size_t models = 0;         // model checks completed
  std::size_t capped = 0;         // model checks abandoned at the size cap
  std::size_t premise_valid = 0;  // trials where some model validated every premise
  std::size_t nonvacuous = 0;     // ... with the conclusion's antecedent satisfiable there
  std::vector<Violation> violations;
};

// Independent of the order in which trials are run.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view rule, std::size_t trial);

struct FuzzInstance {
  std::vector<Sequent> premises;  // as read semantically
  Sequent conclusion;
};
// Draws one instance; an Error rejects the draw and sampling retries.
using FuzzProducer = std::function<FuzzInstance(Generator&, const Kernel&)>;

// The trial loop for any instance producer over the fuzz theory.
FuzzStats fuzz_with(const std::string& name, const FuzzProducer& produce, const FuzzConfig& config);

// a-imp-bot is refused (Gated) unless the configuration enables it.
FuzzStats fuzz_rule(RuleId rule, const FuzzConfig& config);
FuzzStats fuzz_derived_rule(DerivedRuleId rule, const FuzzConfig& config);

}  // namespace ttstar

#endif  // TTSTAR_FUZZ_HPP
