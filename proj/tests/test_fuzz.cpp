// Semantic soundness fuzzing: every accepted rule instance preserves
// validity in random finite models, and the harness catches unsound ones.

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "ttstar/error.hpp"
#include "ttstar/fuzz.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

void PrintTo(RuleId r, std::ostream* os) { *os << rule_name(r); }
void PrintTo(DerivedRuleId r, std::ostream* os) { *os << derived_rule_name(r); }

namespace {

FuzzConfig small(std::size_t trials = 25) {
  FuzzConfig cfg;
  cfg.seed = 11;
  cfg.trials = trials;
  return cfg;
}

class RuleSoundness : public ::testing::TestWithParam<RuleId> {};

TEST_P(RuleSoundness, NoViolations) {
  FuzzStats s = fuzz_rule(GetParam(), small());
  EXPECT_EQ(s.trials, 25u);
  EXPECT_GT(s.instances, 0u);
  EXPECT_TRUE(s.violations.empty()) << s.violations.front().conclusion << "\n" << s.violations.front().model;
}

std::vector<RuleId> ungated() {
  std::vector<RuleId> out;
  for (RuleId r : all_rules())
    if (r != RuleId::AImpBot) out.push_back(r);
  return out;
}

INSTANTIATE_TEST_SUITE_P(Ungated, RuleSoundness, ::testing::ValuesIn(ungated()), [](const auto& info) {
  std::string n(rule_name(info.param));
  for (char& c : n)
    if (c == '-') c = '_';
  return n;
});

class DerivedSoundness : public ::testing::TestWithParam<DerivedRuleId> {};

TEST_P(DerivedSoundness, NoViolations) {
  FuzzStats s = fuzz_derived_rule(GetParam(), small(20));
  EXPECT_GT(s.instances, 0u);
  EXPECT_TRUE(s.violations.empty()) << s.violations.front().conclusion;
}

INSTANTIATE_TEST_SUITE_P(Derived, DerivedSoundness, ::testing::ValuesIn(all_derived_rules()),
                         [](const auto& info) {
                           std::string n(derived_rule_name(info.param));
                           for (char& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

TEST(Fuzz, GatedRuleIsRefused) {
  try {
    fuzz_rule(RuleId::AImpBot, small(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Gated);
  }
}

// Affirming the consequent: from A -> B and B conclude A.
TEST(Fuzz, DetectsAffirmingTheConsequent) {
  FuzzStats s = fuzz_with(
      "affirm",
      [](Generator& g, const Kernel&) {
        MatchSet gamma = g.context();
        Construction a = g.construction(Type::truth());
        Construction b = g.construction(Type::truth());
        Match ab(mk::imp(a, b), Type::truth(), mk::T());
        Match mb(b, Type::truth(), mk::T());
        if (g.chance(0.5)) gamma.insert(ab);
        if (g.chance(0.5)) gamma.insert(mb);
        return FuzzInstance{{Sequent(gamma, ab), Sequent(gamma, mb)}, Sequent(gamma, Match(a, Type::truth(), mk::T()))};
      },
      small(100));
  EXPECT_FALSE(s.violations.empty());
  const Violation& v = s.violations.front();
  EXPECT_EQ(v.premises.size(), 2u);
  EXPECT_FALSE(v.model.empty());
}

// Identity elimination concluding an arbitrary constant's value.
TEST(Fuzz, DetectsWrongIdentityElimination) {
  FuzzStats s = fuzz_with(
      "eq-e-wrong",
      [](Generator& g, const Kernel&) {
        const Type t = Type::individual();
        MatchSet gamma = g.context();
        Construction x = g.construction(t);
        Match m(mk::eq(t, g.simple(t), x), Type::truth(), mk::T());
        if (g.chance(0.5)) gamma.insert(m);
        return FuzzInstance{{Sequent(gamma, m)}, Sequent(gamma, Match(x, t, mk::cnst("c")))};
      },
      small(100));
  EXPECT_FALSE(s.violations.empty());
}

TEST(Fuzz, RunsAreDeterministic) {
  FuzzStats a = fuzz_rule(RuleId::BetaCon, small(15));
  FuzzStats b = fuzz_rule(RuleId::BetaCon, small(15));
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_EQ(a.rejected, b.rejected);
  EXPECT_EQ(a.models, b.models);
  EXPECT_EQ(a.premise_valid, b.premise_valid);
}

// A trial's outcome depends only on its own seed, so split runs add up.
TEST(Fuzz, TrialsAreIndependent) {
  FuzzConfig whole = small(20);
  FuzzConfig first = small(10);
  FuzzConfig second = small(10);
  second.first_trial = 10;
  FuzzStats w = fuzz_rule(RuleId::ImpE, whole);
  FuzzStats f = fuzz_rule(RuleId::ImpE, first);
  FuzzStats s = fuzz_rule(RuleId::ImpE, second);
  EXPECT_EQ(w.instances, f.instances + s.instances);
  EXPECT_EQ(w.models, f.models + s.models);
  EXPECT_EQ(w.premise_valid, f.premise_valid + s.premise_valid);
}

TEST(Fuzz, TrialSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::size_t t = 0; t < 200; ++t) {
    seen.insert(trial_seed(1, "ax", t));
    seen.insert(trial_seed(1, "tm", t));
    seen.insert(trial_seed(2, "ax", t));
  }
  EXPECT_EQ(seen.size(), 600u);
  EXPECT_EQ(trial_seed(9, "exh", 3), trial_seed(9, "exh", 3));
}

TEST(Fuzz, PremisesAreOftenValidated) {
  // Non-vacuity: the check is exercised on models where the premises hold.
  FuzzStats s = fuzz_rule(RuleId::EqE, small(40));
  EXPECT_GT(s.premise_valid, 0u);
  EXPECT_GT(s.nonvacuous, 0u);
}

TEST(Generator, RespectsDepthAndType) {
  std::mt19937_64 rng(3);
  Generator g(fuzz_theory(), rng, 4);
  for (int n = 0; n < 500; ++n) {
    Type t = g.element_type();
    Construction x = g.construction(t);
    EXPECT_LE(x.depth(), 4);
    EXPECT_EQ(type_of(x, fuzz_theory().signature), t);
  }
}

TEST(RandomModel, Validates) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 50; ++n) {
    Frame f = random_frame(3, 2, rng);
    EXPECT_GE(f.size(BaseType::Individual), 1u);
    EXPECT_LE(f.size(BaseType::Individual), 3u);
    EXPECT_LE(f.size(BaseType::World), 2u);
    EXPECT_NO_THROW(random_model(fuzz_theory().signature, f, rng).validate());
  }
}

}  // namespace
}  // namespace ttstar
