// Term core: free variables, substitution, identity, occurrence paths.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {
namespace {

using testing::C;
using testing::kf;

const Type I = Type::individual();
const Type O = Type::truth();

Variable var(const std::string& name, const Type& t) { return Variable{name, t}; }

TEST(FreeVariables, SelfIdentityIsClosed) {
  EXPECT_TRUE(free_variables(C("\\x:i. 'eq<i>(x, x)")).empty());
}

TEST(FreeVariables, KingOfFranceIsBaldDependsOnTheWorldOnly) {
  auto fv = free_variables(C("'B@w('the<i>(\\x:i. 'K@w(x, 'Fr)))", kf()));
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(*fv.begin(), var("w", Type::world()));
}

TEST(FreeVariables, SingleVariable) {
  auto fv = free_variables(C("x"));
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv.begin()->name, "x");
}

TEST(FreeVariables, QuotationIsOpaque) {
  EXPECT_TRUE(free_variables(C("'eq<*1>(quote{x}, quote{'g(y)})")).empty());
  EXPECT_FALSE(occurs_free("x", C("'eq<*1>(quote{x}, quote{x})")));
}

TEST(FreeVariables, BinderShadowsOnlyInsideItsScope) {
  auto fv = free_variables(C("'imp('P(x), [\\x:i. 'P(x)](y))"));
  EXPECT_EQ(fv, (std::set<Variable>{var("x", I), var("y", I)}));
}

TEST(Substitute, BetaContractsTheDescribedKing) {
  Construction body = C("'K@w(y, 'Fr)", kf());
  Construction out = substitute(body, var("y", I), C("'L", kf()), &kf().signature);
  EXPECT_EQ(out, C("'K@w('L, 'Fr)", kf()));
}

TEST(Substitute, CaptureForcesRename) {
  Construction y = C("\\x:i. 'eq<i>(x, y)");
  Construction out = substitute(y, var("y", I), C("x"));
  ASSERT_TRUE(out.is_abstraction());
  const Variable& z = out.binders().at(0);
  EXPECT_NE(z.name, "x");
  EXPECT_EQ(z.type, I);
  EXPECT_EQ(out.body(), mk::eq(I, Construction::variable(z), C("x")));
  // Deterministic fresh name: smallest unused index.
  EXPECT_EQ(z.name, "x1");
}

TEST(Substitute, NoRenameWithoutCapture) {
  Construction y = C("\\x:i. 'eq<i>(x, y)");
  EXPECT_EQ(substitute(y, var("y", I), C("'c")), C("\\x:i. 'eq<i>(x, 'c)"));
}

TEST(Substitute, IdentityOnNonOccurringVariable) {
  EXPECT_EQ(substitute(C("x"), var("y", I), C("'g('c)")), C("x"));
}

TEST(Substitute, BoundOccurrencesUntouched) {
  Construction y = C("\\x:i. 'P(x)");
  EXPECT_EQ(substitute(y, var("x", I), C("'c")), y);
}

TEST(Substitute, Simultaneous) {
  Construction y = C("'R(x, y)");
  Construction out = substitute(y, {{var("x", I), C("y")}, {var("y", I), C("x")}});
  EXPECT_EQ(out, C("'R(y, x)"));
}

TEST(Substitute, NothingUnderQuotation) {
  Construction q = Construction::quote(C("'P(x)"));
  EXPECT_EQ(substitute(q, var("x", I), C("'c")), q);
}

TEST(Substitute, TypeMismatchedBindingIsRejected) {
  try {
    substitute(C("'P(x)"), var("x", I), C("'q"), &fuzz_theory().signature);
    FAIL() << "expected a substitution error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Substitution);
  }
}

TEST(Substitute, DuplicateBindingIsRejected) {
  EXPECT_THROW(substitute(C("x"), {{var("x", I), C("'c")}, {var("x", I), C("'d")}}), Error);
}

TEST(SyntacticEqual, HyperintensionalIdentity) {
  Signature sig;
  sig.declare("mul", Type::function({I, I}, I));
  sig.declare("sub", Type::function({I, I}, I));
  for (const char* n : {"1", "2", "3", "5"}) sig.declare(n, I);
  auto c = [&](const char* text) { return parse_construction(text, sig); };
  EXPECT_TRUE(syntactic_equal(c("'mul('3, '1)"), c("'mul('3, '1)")));
  EXPECT_FALSE(syntactic_equal(c("'mul('3, '1)"), c("'sub('5, '2)")));
  EXPECT_FALSE(syntactic_equal(c("\\x:i. x"), c("\\y:i. y")));
}

TEST(FreshName, SmallestUnusedIndex) {
  EXPECT_EQ(fresh_name("x", {}), "x1");
  EXPECT_EQ(fresh_name("x", {"x1", "x2"}), "x3");
  EXPECT_EQ(fresh_name("x7", {"x1"}), "x2");
  EXPECT_EQ(fresh_name("", {}), "v1");
}

TEST(Paths, SelectReplaceAndFind) {
  Construction y = C("'R('g(x), 'g(x))");
  EXPECT_EQ(subterm_at(y, {2, 1}), C("x"));
  EXPECT_EQ(subterm_at(y, {0}), C("'R"));
  EXPECT_FALSE(subterm_at(y, {3}).has_value());
  EXPECT_EQ(replace_at(y, {1}, C("'c")), C("'R('c, 'g(x))"));
  EXPECT_EQ(occurrences(y, C("'g(x)")), (std::vector<Path>{{1}, {2}}));
  Construction lam = C("\\v:i. 'P(v)");
  EXPECT_EQ(binders_along(lam, {0, 1}), (std::set<std::string>{"v"}));
}

TEST(Paths, QuotationCannotBeEntered) {
  Construction q = C("'eq<*1>(quote{'P(x)}, quote{'P(x)})");
  EXPECT_TRUE(occurrences(q, C("x")).empty());
  EXPECT_FALSE(subterm_at(q, {1, 0}).has_value());
}

TEST(Signature, BuiltinsAndRedeclarationsAreRejected) {
  Signature sig;
  sig.declare("c", I);
  EXPECT_THROW(sig.declare("c", I), Error);
  EXPECT_THROW(sig.declare("eq", I), Error);
  EXPECT_EQ(sig.lookup("c", std::nullopt), I);
  EXPECT_FALSE(sig.lookup("d", std::nullopt).has_value());
  EXPECT_EQ(sig.lookup("eq", I), Type::function({I, I}, O));
}

// ---------------------------------------------------------------------------
// Properties over random constructions of the fuzz theory.

constexpr int kCases = 1000;

struct RandomTerm {
  Construction y;
  Type type;
};

RandomTerm random_term(Generator& g) {
  Type t = g.chance(0.7) ? g.element_type() : Type::function({g.element_type()}, Type::truth());
  return {g.construction(t), t};
}

// A variable to substitute for: usually one free in y.
Variable pick_variable(Generator& g, const Construction& y) {
  auto fv = free_variables(y);
  if (!fv.empty() && g.chance(0.85)) {
    auto it = fv.begin();
    std::advance(it, static_cast<long>(g.below(fv.size())));
    return *it;
  }
  const auto& vars = fuzz_theory().variables;
  return vars[g.below(vars.size())];
}

TEST(SubstituteProperty, SelfBindingIsIdentity) {
  std::mt19937_64 rng(11);
  Generator g(fuzz_theory(), rng, 5);
  for (int n = 0; n < kCases; ++n) {
    Construction y = random_term(g).y;
    Variable x = pick_variable(g, y);
    ASSERT_TRUE(syntactic_equal(substitute(y, x, Construction::variable(x)), y)) << print(y);
  }
}

TEST(SubstituteProperty, FreeVariablesBounded) {
  std::mt19937_64 rng(12);
  Generator g(fuzz_theory(), rng, 5);
  int exercised = 0;
  for (int n = 0; exercised < kCases; ++n) {
    ASSERT_LT(n, 20 * kCases);
    Construction y = random_term(g).y;
    Variable x = pick_variable(g, y);
    if (!free_variables(y).count(x)) continue;
    ++exercised;
    Construction xval = g.construction(x.type);
    auto allowed = free_variables(y);
    allowed.erase(x);
    for (const auto& v : free_variables(xval)) allowed.insert(v);
    for (const auto& v : free_variables(substitute(y, x, xval)))
      ASSERT_TRUE(allowed.count(v)) << v.name << " escaped in " << print(y) << " [" << print(xval) << "/" << x.name << "]";
  }
}

TEST(SubstituteProperty, PreservesType) {
  std::mt19937_64 rng(13);
  Generator g(fuzz_theory(), rng, 5);
  const Signature& sig = fuzz_theory().signature;
  for (int n = 0; n < kCases; ++n) {
    RandomTerm r = random_term(g);
    Variable x = pick_variable(g, r.y);
    Construction xval = g.construction(x.type);
    Construction out = substitute(r.y, x, xval, &sig);
    ASSERT_EQ(type_of(out, sig), type_of(r.y, sig)) << print(out);
  }
}

TEST(SubstituteProperty, QuotationOpacity) {
  std::mt19937_64 rng(14);
  Generator g(fuzz_theory(), rng, 5);
  for (int n = 0; n < kCases; ++n) {
    Construction q = Construction::quote(random_term(g).y);
    Variable x = pick_variable(g, q.quoted());
    ASSERT_EQ(substitute(q, x, g.construction(x.type)), q);
  }
}

// Semantic substitution lemma: with X proper under v, Y[X/x] v-constructs
// what Y constructs under v with x reassigned to X's value. Capture would
// break this whenever a binder rebinds a free variable of X.
TEST(SubstituteProperty, AgreesWithReassignment) {
  std::mt19937_64 rng(15);
  Generator g(fuzz_theory(), rng, 4);
  const Signature& sig = fuzz_theory().signature;
  int exercised = 0;
  for (int n = 0; exercised < kCases; ++n) {
    ASSERT_LT(n, 40 * kCases);
    RandomTerm r = random_term(g);
    Variable x = pick_variable(g, r.y);
    if (!free_variables(r.y).count(x)) continue;
    Construction xval = g.construction(x.type);
    Model m = random_model(sig, random_frame(2, 2, rng), rng);
    Evaluator ev(m.frame(), m);
    auto vars = free_variables(r.y);
    for (const auto& v : free_variables(xval)) vars.insert(v);
    Assignment a = testing::random_assignment(vars, ev, rng);
    EvalResult xv = ev.evaluate(xval, a);
    if (!xv.proper()) continue;
    ++exercised;
    Assignment b = a;
    b.insert_or_assign(x.name, *xv.value);
    EvalResult lhs = ev.evaluate(substitute(r.y, x, xval), a);
    EvalResult rhs = ev.evaluate(r.y, b);
    ASSERT_EQ(lhs.proper(), rhs.proper()) << print(r.y) << " [" << print(xval) << "/" << x.name << "]";
    if (lhs.proper()) ASSERT_EQ(ev.materialize(*lhs.value), ev.materialize(*rhs.value)) << print(r.y);
  }
}

}  // namespace
}  // namespace ttstar
