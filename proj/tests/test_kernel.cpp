// The trusted kernel: rule schemas, side conditions, gating and replay.

#include <gtest/gtest.h>

#include <map>

#include "kernel_cases.hpp"
#include "support.hpp"
#include "ttstar/error.hpp"
#include "ttstar/print.hpp"

namespace ttstar {
namespace {

using testing::kf;
using testing::M;
using testing::S;

const Type I = Type::individual();
const Type O = Type::truth();

Match kfm(const std::string& text) { return M(text, kf()); }
Sequent kfs(const std::string& text) { return S(text, kf()); }

class RuleCaseTest : public ::testing::TestWithParam<testing::RuleCase> {};

TEST_P(RuleCaseTest, BehavesAsSpecified) {
  const auto& c = GetParam();
  testing::RuleOutcome out = testing::run_case(c);
  if (c.error) {
    EXPECT_FALSE(out.accepted) << "accepted: " << print(out.theorem->sequent());
    EXPECT_FALSE(out.theorem.has_value());
    ASSERT_TRUE(out.error.has_value());
    EXPECT_EQ(*out.error, *c.error) << out.message;
  } else {
    EXPECT_TRUE(out.accepted) << out.message;
    ASSERT_TRUE(out.theorem.has_value());
    EXPECT_EQ(out.theorem->rule_id(), c.rule);
  }
}

std::string case_name(const ::testing::TestParamInfo<testing::RuleCase>& info) {
  std::string n = std::string(rule_name(info.param.rule)) + "_" + std::to_string(info.index);
  for (char& ch : n)
    if (ch == '-') ch = '_';
  return n;
}

INSTANTIATE_TEST_SUITE_P(Rules, RuleCaseTest, ::testing::ValuesIn(testing::rule_cases()), case_name);

TEST(RuleCases, EveryRuleHasThreeRejectionsAndOneAcceptance) {
  std::map<RuleId, int> rejected;
  std::map<RuleId, int> accepted;
  for (const auto& c : testing::rule_cases()) (c.error ? rejected : accepted)[c.rule]++;
  for (RuleId r : all_rules()) {
    EXPECT_GE(rejected[r], 3) << rule_name(r);
    EXPECT_GE(accepted[r], 1) << rule_name(r);
  }
  EXPECT_EQ(all_rules().size(), 32u);
}

TEST(RuleNames, RoundTrip) {
  for (RuleId r : all_rules()) EXPECT_EQ(rule_from_name(rule_name(r)), r);
  EXPECT_FALSE(rule_from_name("modus-ponens").has_value());
}

TEST(PatentlyIncompatible, Examples) {
  EXPECT_TRUE(patently_incompatible(M("'q :o 'T"), M("'q :o !")));
  EXPECT_TRUE(patently_incompatible(M("'q :o 'T"), M("'q :o 'F")));
  EXPECT_FALSE(patently_incompatible(M("'q :o 'T"), M("p :o 'F")));
  EXPECT_FALSE(patently_incompatible(M("'q :o 'T"), M("'q :o 'T")));
  EXPECT_FALSE(patently_incompatible(M("'q :o p"), M("'q :o 'F")));
  EXPECT_FALSE(patently_incompatible(M("'g('c) :i 'c"), M("'g('c) :i 'd")));  // 'c and 'd may coincide
  EXPECT_TRUE(patently_incompatible(M("quote{x} :*1 quote{x}"), M("quote{x} :*1 quote{y}")));
}

TEST(Freshness, Examples) {
  Variable x{"x", I};
  MatchSet gamma{M("'P(y) :o 'T")};
  EXPECT_FALSE(check_freshness({{x}, {&gamma}, {M("'q :o 'T")}, {}}).has_value());
  auto in_m = check_freshness({{x}, {&gamma}, {M("'P(x) :o 'T")}, {}});
  ASSERT_TRUE(in_m.has_value());
  EXPECT_NE(in_m->find("'x'"), std::string::npos);
  EXPECT_TRUE(check_freshness({{x, x}, {}, {}, {}}).has_value());
  EXPECT_TRUE(check_freshness({{x}, {}, {}, {testing::C("\\y:i. 'R(x, y)")}}).has_value());
  EXPECT_FALSE(check_freshness({{x}, {}, {}, {testing::C("\\x:i. 'P(x)")}}).has_value());
}

class KfKernel : public ::testing::Test {
 protected:
  Kernel k{kf().signature};
};

TEST_F(KfKernel, AxiomAddsTheMatch) {
  Theorem t = k.apply(RuleId::Ax, {}, {MatchSet{kfm("'B@w('L) :o 'T")}, kfm("'K@w('L, 'Fr) :o 'T")});
  EXPECT_EQ(t.sequent(), kfs("['B@w('L) :o 'T, 'K@w('L, 'Fr) :o 'T] => 'K@w('L, 'Fr) :o 'T"));
}

TEST_F(KfKernel, ExhaustionOverAnOffice) {
  Theorem p1 = k.assume(kfs("['FY@w :i !] => 'FY@w :i !"));
  Theorem p2 = k.assume(kfs("['FY@w :i y] => 'FY@w :i !"));
  Theorem t = k.apply(RuleId::Exh, {p1, p2}, {Variable{"y", I}});
  EXPECT_EQ(t.sequent(), kfs("[] => 'FY@w :i !"));
}

TEST_F(KfKernel, EfqNeedsTheSameLeftHandSide) {
  Theorem a = k.assume(kfs("[] => o :o 'T"));
  Theorem b = k.assume(kfs("[] => 'B@w(y) :o 'F"));
  try {
    k.apply(RuleId::Efq, {a, b}, {kfm("'L :i 'L")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Incompatibility);
  }
}

TEST_F(KfKernel, BetaContraction) {
  Theorem p = k.assume(kfs("[] => [\\x:i. 'K@w(x, 'Fr)]('L) :o 'T"));
  EXPECT_EQ(k.apply(RuleId::BetaCon, {p}, {}).sequent(), kfs("[] => 'K@w('L, 'Fr) :o 'T"));
}

TEST_F(KfKernel, TrivialMatch) {
  Theorem t = k.apply(RuleId::Tm, {}, {MatchSet{}, Variable{"y", I}});
  EXPECT_EQ(t.sequent(), kfs("[] => y :i y"));
}

TEST_F(KfKernel, BetaExpansionWithSideAntecedentContained) {
  Theorem main = k.assume(kfs("['FY@w :i y] => 'eq<i>('FY@w, y) :o 'T"));
  Theorem side = k.assume(kfs("[] => y :i y"));
  Construction lam = testing::C("\\x:i. 'eq<i>('FY@w, x)", kf());
  Theorem t = k.apply(RuleId::BetaExp, {main, side}, {lam});
  EXPECT_EQ(t.sequent(), kfs("['FY@w :i y] => [\\x:i. 'eq<i>('FY@w, x)](y) :o 'T"));
}

TEST_F(KfKernel, GatedRuleIsRefusedByDefault) {
  Scope scope = kf().scope();
  scope.emplace("f", Type::function({I}, O));
  Theorem a = k.assume(parse_sequent("[] => 'B@w :(i)->o f", kf().signature, scope));
  Theorem b = k.assume(kfs("['L :i y] => o :o 'T"));
  try {
    k.apply(RuleId::AImpBot, {a, b}, {Variable{"y", I}, Type::individual()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Gated);
  }
}

TEST_F(KfKernel, IdentityElimination) {
  Theorem p = k.assume(kfs("[] => 'eq<i>('the<i>(\\x:i. 'K@w(x, 'Fr)), 'L) :o 'T"));
  EXPECT_EQ(k.apply(RuleId::EqE, {p}, {}).sequent(), kfs("[] => 'the<i>(\\x:i. 'K@w(x, 'Fr)) :i 'L"));
}

TEST_F(KfKernel, DescriptionElimination) {
  Theorem p = k.assume(kfs("[] => 'the<i>('B@w) :i y"));
  EXPECT_EQ(k.apply(RuleId::IotaE, {p}, {}).sequent(), kfs("[] => 'B@w(y) :o 'T"));
}

TEST_F(KfKernel, ExistentialIntroduction) {
  Theorem p = k.assume(kfs("['FY@w :i y] => [\\x:i. 'eq<i>('FY@w, x)](y) :o 'T"));
  EXPECT_EQ(k.apply(RuleId::SomeI, {p}, {}).sequent(),
            kfs("['FY@w :i y] => 'some<i>(\\x:i. 'eq<i>('FY@w, x)) :o 'T"));
}

TEST_F(KfKernel, NegationIntroductionNeedsIncompatibility) {
  Theorem a = k.assume(kfs("[o :o 'T] => 'B@w('L) :o 'T"));
  Theorem b = k.assume(kfs("[o :o 'T] => 'B@w('L) :o 'T"));
  try {
    k.apply(RuleId::NotI, {a, b}, {kfm("o :o 'T")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Incompatibility);
  }
}

TEST_F(KfKernel, WeakeningBySubsetIsIdentity) {
  Theorem p = k.assume(kfs("['B@w('L) :o 'T, o :o 'F] => 'L :i 'L"));
  Theorem t = k.apply(RuleId::Wr, {p}, {MatchSet{kfm("o :o 'F")}});
  EXPECT_EQ(t.sequent(), p.sequent());
  EXPECT_EQ(k.apply(RuleId::Wr, {p}, {MatchSet{}}).sequent(), p.sequent());
}

TEST_F(KfKernel, GroupEntryPointsCheckTheGroup) {
  EXPECT_THROW(k.apply_structural(RuleId::Tm, {}, {MatchSet{}, Variable{"y", I}}), Error);
  EXPECT_NO_THROW(k.apply_form(RuleId::Tm, {}, {MatchSet{}, Variable{"y", I}}));
  EXPECT_THROW(k.apply_operational(RuleId::Ax, {}, {MatchSet{}, kfm("o :o 'T")}), Error);
}

TEST_F(KfKernel, AssumeTypeChecks) {
  Sequent ill(MatchSet{}, Match(mk::app(mk::cnst("K"), {mk::cnst("Fr")}), O, mk::T()));
  EXPECT_THROW(k.assume(ill), Error);
}

TEST_F(KfKernel, ReplayReproducesProvenance) {
  Theorem h = k.assume(kfs("[] => 'eq<i>('the<i>(\\x:i. 'K@w(x, 'Fr)), 'L) :o 'T"), "h");
  Theorem t1 = k.apply(RuleId::EqE, {h}, {});
  Theorem t2 = k.apply(RuleId::IotaE, {t1}, {});
  Theorem t3 = k.apply(RuleId::BetaCon, {t2}, {});
  Theorem again = k.replay(t3);
  EXPECT_EQ(again.sequent(), t3.sequent());
  EXPECT_EQ(again.premises().at(0).premises().at(0).premises().at(0).hypothesis(), "h");
  EXPECT_EQ(t3.rule(), "beta-con");
  EXPECT_EQ(h.rule(), "hyp");
}

// A kernel with a richer signature must not replay a theorem under one
// lacking its constants.
TEST_F(KfKernel, ReplayUnderAnotherSignatureFails) {
  Theorem t = k.apply(RuleId::Tm, {}, {MatchSet{}, Construction::constant("L")});
  Kernel other(fuzz_theory().signature);
  EXPECT_THROW(other.replay(t), Error);
}

// Every accepted instance replays identically.
TEST(KernelReplay, AcceptedCasesReplay) {
  for (const auto& c : testing::rule_cases()) {
    if (c.error) continue;
    auto out = testing::run_case(c);
    ASSERT_TRUE(out.theorem) << rule_name(c.rule) << ": " << out.message;
    Kernel k(fuzz_theory().signature, KernelConfig{c.enable_gate});
    EXPECT_EQ(k.replay(*out.theorem).sequent(), out.theorem->sequent()) << rule_name(c.rule);
  }
}

}  // namespace
}  // namespace ttstar
