// Typing of constructions and the order of types.

#include <gtest/gtest.h>

#include <functional>
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
const Type W = Type::world();

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Syntax;
}

TEST(InferType, KingOfFranceIsAnIndividual) {
  Construction kf_desc = C("'the<i>(\\x:i. 'K@w(x, 'Fr))", kf());
  TypingJudgment j = infer_type(kf_desc, TypingContext{&kf().signature, {{"w", W}}});
  EXPECT_EQ(j.type, I);
  EXPECT_EQ(j.order, 1);
  EXPECT_EQ(type_of(C("\\w:w. 'the<i>(\\x:i. 'K@w(x, 'Fr))", kf()), kf().signature), Type::function({W}, I));
}

TEST(InferType, DivisionIsPartialButTyped) {
  Theory arith = parse_theory(read_file(testing::corpus("arith.thy")));
  EXPECT_EQ(type_of(C("'div('3, '0)", arith), arith.signature), I);
}

TEST(InferType, QuotedConstructionHasItsOrder) {
  EXPECT_EQ(type_of(C("quote{\\x:i. x}"), fuzz_theory().signature), Type::construction(1));
  EXPECT_EQ(type_of(C("quote{quote{x}}"), fuzz_theory().signature), Type::construction(2));
}

TEST(InferType, OperandMismatchNamesTheExpectedType) {
  Construction bad = mk::app(mk::cnst("K"), {mk::cnst("Fr")});
  try {
    type_of(bad, kf().signature);
    FAIL() << "expected a type error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Type);
    EXPECT_NE(std::string(e.what()).find("w"), std::string::npos) << e.what();
  }
}

TEST(InferType, Errors) {
  const Signature& sig = fuzz_theory().signature;
  EXPECT_EQ(kind_of([&] { type_of(mk::cnst("nope"), sig); }), ErrorKind::Reference);
  EXPECT_EQ(kind_of([&] { type_of(mk::app(mk::cnst("R"), {mk::cnst("c")}), sig); }), ErrorKind::Type);
  EXPECT_EQ(kind_of([&] { type_of(mk::app(mk::cnst("c"), {mk::cnst("d")}), sig); }), ErrorKind::Type);
  EXPECT_EQ(kind_of([&] { type_of(mk::app(mk::cnst("P"), {mk::cnst("q")}), sig); }), ErrorKind::Type);
}

TEST(InferType, ContextMustAgreeWithCarriedType) {
  TypingContext ctx{&fuzz_theory().signature, {{"x", O}}};
  EXPECT_EQ(kind_of([&] { infer_type(mk::var("x", I), ctx); }), ErrorKind::Type);
}

TEST(InferType, BuiltinInstantiations) {
  const Signature& sig = fuzz_theory().signature;
  EXPECT_EQ(type_of(C("'some<i>('P)"), sig), O);
  EXPECT_EQ(type_of(C("'the<w>(\\u:w. 'T)"), sig), W);
  EXPECT_EQ(type_of(mk::bot(Type::function({I}, O)), sig), Type::function({I}, O));
  EXPECT_EQ(type_of(C("'eq<(w)->i>('h, 'h2)"), sig), O);
}

TEST(OrderOfType, Examples) {
  EXPECT_EQ(order_of_type(O), 1);
  EXPECT_EQ(order_of_type(Type::construction(1)), 2);
  EXPECT_EQ(order_of_type(Type::function({I}, O)), 1);
  EXPECT_EQ(order_of_type(Type::function({Type::construction(1)}, O)), 2);
  EXPECT_EQ(order_of_type(Type::function({I}, Type::construction(2))), 3);
}

TEST(Subsumes, CumulativeConstructionTypes) {
  EXPECT_TRUE(subsumes(Type::construction(2), Type::construction(1)));
  EXPECT_FALSE(subsumes(Type::construction(1), Type::construction(2)));
  EXPECT_TRUE(subsumes(Type::function({Type::construction(2)}, O), Type::function({Type::construction(1)}, O)));
  EXPECT_FALSE(subsumes(Type::function({I, I}, O), Type::function({I}, O)));
  EXPECT_FALSE(subsumes(I, W));
}

TEST(Subsumes, LowerOrderConstructionFitsHigherSlot) {
  Signature sig;
  sig.declare("Believes", Type::function({Type::construction(2)}, O));
  Construction c = mk::app(mk::cnst("Believes"), {Construction::quote(mk::T())});
  EXPECT_EQ(type_of(c, sig), O);
}

TEST(OrderOfConstruction, QuotesRaiseTheOrder) {
  const Signature& sig = fuzz_theory().signature;
  EXPECT_EQ(order_of_construction(C("'P(x)"), sig), 1);
  EXPECT_EQ(order_of_construction(C("'eq<*1>(quote{x}, quote{x})"), sig), 2);
}

// ---------------------------------------------------------------------------
// Properties

constexpr int kCases = 1000;

void subconstructions(const Construction& x, std::vector<Construction>& out) {
  out.push_back(x);
  switch (x.kind()) {
    case Construction::Kind::Application:
      subconstructions(x.op(), out);
      for (const auto& a : x.operands()) subconstructions(a, out);
      break;
    case Construction::Kind::Abstraction:
      subconstructions(x.body(), out);
      break;
    default:
      break;
  }
}

TEST(TypingProperty, InferenceIsAFunction) {
  std::mt19937_64 rng(21);
  Generator g(fuzz_theory(), rng, 5);
  const Signature& sig = fuzz_theory().signature;
  for (int n = 0; n < kCases; ++n) {
    Type t = g.element_type();
    Construction x = g.construction(t);
    TypingJudgment a = infer_type(x, TypingContext{&sig, {}});
    TypingJudgment b = infer_type(x, TypingContext{&sig, {}});
    ASSERT_EQ(a.type, t) << print(x);
    ASSERT_EQ(a.type, b.type);
    ASSERT_EQ(a.order, b.order);
    ASSERT_EQ(a.subject, x);
  }
}

TEST(TypingProperty, OrderDominatesSubconstructions) {
  std::mt19937_64 rng(22);
  Generator g(fuzz_theory(), rng, 5);
  const Signature& sig = fuzz_theory().signature;
  for (int n = 0; n < kCases; ++n) {
    Construction x = g.construction(g.element_type());
    if (g.chance(0.3)) x = mk::eq(Type::construction(1), Construction::quote(x), Construction::quote(x));
    const int whole = order_of_construction(x, sig);
    std::vector<Construction> subs;
    subconstructions(x, subs);
    for (const auto& s : subs) ASSERT_GE(whole, order_of_type(type_of(s, sig))) << print(s) << " in " << print(x);
  }
}

}  // namespace
}  // namespace ttstar
