// Finite models: builtin tables, strict evaluation, satisfaction, validity.

#include <gtest/gtest.h>

#include <random>

#include "properties.hpp"
#include "support.hpp"
#include "ttstar/countermodel.hpp"
#include "ttstar/error.hpp"
#include "ttstar/print.hpp"

namespace ttstar {
namespace {

using testing::C;
using testing::M;
using testing::S;

const Type I = Type::individual();
const Type O = Type::truth();
const Type W = Type::world();
const Value T = Value::truth(true);
const Value F = Value::truth(false);

Value ind(int k) { return Value::element(BaseType::Individual, k); }

Theory arith() { return parse_theory(read_file(testing::corpus("arith.thy"))); }
Model arith_model() {
  static const Theory th = arith();
  return parse_model(read_file(testing::corpus("arith.mdl")), th);
}

// The fuzz signature over a frame with every constant nowhere defined or
// at element 0.
Model blank(const Frame& frame) {
  Model out(fuzz_theory().signature, frame);
  for (const auto& [name, type] : fuzz_theory().signature.constants())
    out.interpret(name, type.is_base() ? Value::element(type.base_type(), 0) : Value::function({}));
  return out;
}

TEST(BuiltinTable, MaterialConditional) {
  Frame f = make_frame(1, 1);
  const Value imp_table = builtin_table("imp", std::nullopt, f);
  const FunctionTable& imp = imp_table.table();
  EXPECT_EQ(imp.at({T, F}), F);
  EXPECT_EQ(imp.at({T, T}), T);
  EXPECT_EQ(imp.at({F, T}), T);
  EXPECT_EQ(imp.at({F, F}), T);
  EXPECT_EQ(builtin_table("not", std::nullopt, f).table().at({T}), F);
}

TEST(BuiltinTable, DescriptionNeedsExactlyOneTrueEntry) {
  Frame f = make_frame(2, 1);
  const Value the_table = builtin_table("the", I, f);
  const FunctionTable& the = the_table.table();
  Value single = Value::function({{{ind(0)}, T}, {{ind(1)}, F}});
  Value both = Value::function({{{ind(0)}, T}, {{ind(1)}, T}});
  Value partial = Value::function({{{ind(0)}, T}});
  EXPECT_EQ(the.at({single}), ind(0));
  EXPECT_FALSE(the.count({both}));
  EXPECT_EQ(the.at({partial}), ind(0));
  EXPECT_FALSE(the.count({Value::function({})}));
}

TEST(BuiltinTable, QuantifiersAndIdentity) {
  Frame f = make_frame(2, 1);
  Value all_true = Value::function({{{ind(0)}, T}, {{ind(1)}, T}});
  Value gap = Value::function({{{ind(0)}, T}});
  EXPECT_EQ(builtin_table("all", I, f).table().at({all_true}), T);
  EXPECT_EQ(builtin_table("all", I, f).table().at({gap}), F);
  EXPECT_EQ(builtin_table("some", I, f).table().at({gap}), T);
  EXPECT_EQ(builtin_table("some", I, f).table().at({Value::function({})}), F);
  EXPECT_EQ(builtin_table("eq", I, f).table().at({ind(0), ind(1)}), F);
  // Tables are total over the class space: 3^2 classes.
  EXPECT_EQ(builtin_table("some", I, f).table().size(), 9u);
}

TEST(BuiltinTable, HigherOrderIsUnsupported) {
  try {
    builtin_table("some", Type::construction(1), make_frame(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedOrder);
  }
}

// The evaluator and the explicit tables are two computations of the same
// semantics; they must agree on every class.
TEST(BuiltinTable, AgreesWithEvaluator) {
  Frame frame = make_frame(3, 2);
  Model m = blank(frame);
  Evaluator ev(frame, m);
  for (const Type& t : {I, O, W}) {
    Variable cls{"cls", Type::function({t}, O)};
    for (const char* name : {"some", "all", "the"}) {
      const FunctionTable table = builtin_table(name, t, frame).table();
      for (const Value& c : enumerate_function_space({t}, O, frame)) {
        EvalResult r = ev.evaluate(mk::app(Construction::constant(name, t), {Construction::variable(cls)}),
                                   {{cls.name, c}});
        auto it = table.find({c});
        ASSERT_EQ(r.proper(), it != table.end()) << name;
        if (r.proper()) ASSERT_EQ(*r.value, it->second) << name;
      }
    }
  }
}

TEST(Evaluate, DivisionByZeroIsImproper) {
  Model m = arith_model();
  EXPECT_FALSE(evaluate(C("'div('3, '0)", arith()), m, {}).proper());
  EvalResult r = evaluate(C("'div('3, '1)", arith()), m, {});
  ASSERT_TRUE(r.proper());
  EXPECT_EQ(print_value(*r.value, I, m.frame()), "three");
}

TEST(Evaluate, IdentityOfEmptyDescriptionsIsImproper) {
  Model m = blank(make_frame(2, 1));
  EXPECT_FALSE(evaluate(C("'eq<i>('the<i>(\\x:i. 'F), 'the<i>(\\x:i. 'F))"), m, {}).proper());
}

TEST(Evaluate, IdentityAbstraction) {
  Model m = blank(make_frame(2, 1));
  EvalResult r = evaluate(C("\\x:i. x"), m, {});
  ASSERT_TRUE(r.proper());
  EXPECT_EQ(*r.value, Value::function({{{ind(0)}, ind(0)}, {{ind(1)}, ind(1)}}));
}

TEST(Evaluate, AbstractionOverImproperBodyIsTheEmptyMap) {
  Model m = arith_model();
  EvalResult r = evaluate(C("\\x:i. 'div('3, '0)", arith()), m, {});
  ASSERT_TRUE(r.proper());
  EXPECT_TRUE(r.value->table().empty());
}

TEST(Evaluate, QuotationDeliversTheConstruction) {
  Model m = blank(make_frame(1, 1));
  EvalResult r = evaluate(Construction::quote(C("'P(x)")), m, {});
  ASSERT_TRUE(r.proper());
  EXPECT_EQ(r.value->construction(), C("'P(x)"));
}

TEST(Evaluate, UnenumerableDomainIsAnErrorNotImproper) {
  Model m = blank(make_frame(1, 1));
  try {
    evaluate(C("'some<*1>(\\k:*1. 'T)"), m, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedOrder);
  }
}

TEST(Satisfies, Examples) {
  Model m = arith_model();
  Theory th = arith();
  th.variables.push_back(Variable{"x", I});
  Evaluator ev(m.frame(), m);
  for (const auto& e : ev.domain(I)) {
    Assignment v{{"x", e}};
    EXPECT_TRUE(ev.satisfies(M("'div('3, '0) :i !", th), v));
    EXPECT_TRUE(ev.satisfies(M("x :i x", th), v));
    EXPECT_FALSE(ev.satisfies(M("'div('3, '0) :i x", th), v));
  }
}

TEST(SequentValid, AxiomShapeIsValid) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    Model m = testing::draw_model(rng);
    EXPECT_TRUE(sequent_valid(S("['P(x) :o p] => 'P(x) :o p"), m).valid);
  }
}

// Modus ponens, by brute force over every interpretation of the two truth
// variables: the four assignments are all there is.
TEST(SequentValid, ModusPonens) {
  Sequent s = S("['imp(p, r) :o 'T, p :o 'T] => r :o 'T");
  Model m = blank(make_frame(1, 1));
  Validity v = sequent_valid(s, m);
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.assignments, 4u);
  EXPECT_EQ(v.satisfying, 1u);
}

TEST(SequentValid, IntensionalTransitiveLacksExistentialImport) {
  const Theory& th = testing::kf();
  Model m = parse_model(read_file(testing::corpus("itv.mdl")), th);
  Validity v = sequent_valid(parse_sequent_file(read_file(testing::corpus("itv.seq")), th), m);
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->at("w"), Value::element(BaseType::World, 0));
}

TEST(SequentValid, HigherOrderFreeVariableIsUnsupported) {
  Scope scope{{"k", Type::construction(1)}};
  Sequent s = parse_sequent("[] => 'eq<*1>(k, k) :o 'T", fuzz_theory().signature, scope);
  EXPECT_THROW(sequent_valid(s, blank(make_frame(1, 1))), Error);
}

TEST(FunctionSpace, CountsPartialMaps) {
  Frame f = make_frame(2, 1);
  EXPECT_EQ(enumerate_function_space({I}, O, f).size(), 9u);
  EXPECT_EQ(enumerate_function_space({O}, O, f).size(), 9u);
  EXPECT_EQ(enumerate_function_space({I, I}, O, f).size(), 81u);
  EXPECT_EQ(enumerate_function_space({W}, I, f).size(), 3u);
  auto space = enumerate_function_space({I}, O, f);
  EXPECT_EQ(std::set<Value>(space.begin(), space.end()).size(), space.size());
}

TEST(FunctionSpace, CapIsEnforced) {
  try {
    enumerate_function_space({I, I}, I, make_frame(3, 1), 1000);  // 4^9
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeCap);
  }
}

TEST(ModelFile, UnlistedEntriesAreUndefined) {
  const Theory& th = testing::kf();
  Model m = parse_model(read_file(testing::corpus("kf.mdl")), th);
  Validity v = sequent_valid(S("[] => 'B@w('the<i>(\\x:i. 'K@w(x, 'Fr))) :o !", th), m);
  EXPECT_FALSE(v.valid);  // proper at w2
  Evaluator ev(m.frame(), m);
  Assignment at_w1{{"w", Value::element(BaseType::World, 0)}};
  EXPECT_FALSE(ev.evaluate(C("'B@w('the<i>(\\x:i. 'K@w(x, 'Fr)))", th), at_w1).proper());
  EXPECT_FALSE(ev.evaluate(C("'FY@w", th), at_w1).proper());
}

TEST(ModelFile, InterpretationMustFitTheType) {
  Model m(fuzz_theory().signature, make_frame(1, 1));
  EXPECT_THROW(m.interpret("c", Value::truth(true)), Error);
  EXPECT_THROW(m.validate(), Error);
}

// ---------------------------------------------------------------------------
// Evaluator properties

constexpr std::size_t kCases = 1000;

TEST(EvaluatorProperty, Strictness) {
  auto r = testing::strictness(101, kCases);
  EXPECT_TRUE(r.ok(kCases)) << r.cases << " cases, " << r.violations << " violations: " << r.first_failure;
}

TEST(EvaluatorProperty, AbstractionAlwaysProper) {
  auto r = testing::abstraction_proper(102, kCases);
  EXPECT_TRUE(r.ok(kCases)) << r.cases << " cases, " << r.violations << " violations: " << r.first_failure;
}

TEST(EvaluatorProperty, DescriptionDefinedExactlyOnSingletons) {
  auto r = testing::iota_singletons(103, kCases);
  EXPECT_TRUE(r.ok(kCases)) << r.cases << " cases, " << r.violations << " violations: " << r.first_failure;
}

TEST(EvaluatorProperty, PatentlyIncompatibleNeverCoSatisfied) {
  auto r = testing::incompatible_pairs(104, kCases);
  EXPECT_TRUE(r.ok(kCases)) << r.cases << " cases, " << r.violations << " violations: " << r.first_failure;
}

TEST(EvaluatorProperty, WeakeningPreservesValidity) {
  auto r = testing::weakening(105, kCases);
  EXPECT_TRUE(r.ok(kCases)) << r.cases << " cases, " << r.violations << " violations: " << r.first_failure;
}

// Each match is decided: satisfied exactly when its two sides agree.
TEST(EvaluatorProperty, MatchDeterminacy) {
  std::mt19937_64 rng(106);
  Generator g(fuzz_theory(), rng, 4);
  for (std::size_t n = 0; n < kCases; ++n) {
    Match m = g.match();
    testing::World w(testing::draw_model(rng));
    Assignment v = testing::random_assignment(free_variables(m), w.ev, rng);
    EvalResult lhs = w.ev.evaluate(m.lhs(), v);
    bool expected = m.is_improper() ? !lhs.proper()
                                    : lhs.proper() && testing::same(w.ev, lhs, w.ev.evaluate(*m.rhs(), v));
    ASSERT_EQ(w.ev.satisfies(m, v), expected) << print(m);
  }
}

}  // namespace
}  // namespace ttstar
