// Parsing and printing of the four file kinds.

#include <gtest/gtest.h>

#include <filesystem>

#include "properties.hpp"
#include "support.hpp"
#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/syntax.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {
namespace {

using testing::C;
using testing::kf;

const Type I = Type::individual();
const Type O = Type::truth();

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Model;
}

TEST(Parse, DescriptionInAnOffice) {
  Construction x = C("[\\v:w. 'the<i>(\\x:i. 'K@v(x, 'Fr))](w)", kf());
  ASSERT_TRUE(x.is_application());
  EXPECT_TRUE(x.op().is_abstraction());
  EXPECT_EQ(type_of(x, kf().signature), I);
  EXPECT_EQ(print(x), "[\\v:w. 'the<i>(\\x:i. 'K@v(x, 'Fr))](w)");
}

TEST(Parse, WorldApplicationSugar) {
  // F@w abbreviates F(w).
  EXPECT_TRUE(syntactic_equal(C("'FY@w", kf()), C("'FY(w)", kf())));
  EXPECT_TRUE(syntactic_equal(C("'K@w('L, 'Fr)", kf()), C("['K(w)]('L, 'Fr)", kf())));
}

TEST(Parse, Types) {
  EXPECT_EQ(parse_type("(w)->((i,i)->o)"), Type::function({Type::world()}, Type::function({I, I}, O)));
  EXPECT_EQ(parse_type("*2"), Type::construction(2));
  EXPECT_EQ(print(parse_type("(i,(w)->i)->o")), "(i,(w)->i)->o");
}

TEST(Parse, MatchesAndSequents) {
  Match m = testing::M("'B@w('FY@w) :o !", kf());
  EXPECT_TRUE(m.is_improper());
  EXPECT_EQ(print(m), "'B@w('FY@w) :o !");
  Sequent s = testing::S("['K@w('L, 'Fr) :o 'T, 'B@w('L) :o 'F] => 'L :i 'L", kf());
  EXPECT_EQ(s.antecedent.size(), 2u);
  // Antecedents print in canonical order regardless of input order.
  Sequent t = testing::S("['B@w('L) :o 'F, 'K@w('L, 'Fr) :o 'T] => 'L :i 'L", kf());
  EXPECT_EQ(print(s), print(t));
}

TEST(Parse, Theory) {
  Theory t = parse_theory("# comment\nconst div : (i,i)->i  const 0 : i\nvar x : i\n");
  EXPECT_EQ(*t.signature.lookup("div", std::nullopt), Type::function({I, I}, I));
  ASSERT_EQ(t.variables.size(), 1u);
  EXPECT_EQ(t.variables[0].name, "x");
  EXPECT_EQ(parse_theory(print(t)), t);
}

TEST(Parse, ModelWithPartialOffice) {
  Model m = parse_model(read_file(testing::corpus("kf.mdl")), kf());
  EXPECT_EQ(m.frame().individuals.size(), 2u);
  Model again = parse_model(print(m), kf());
  EXPECT_EQ(print(again), print(m));
}

TEST(Parse, ProofStepParameters) {
  ProofScript p = parse_proof(
      "proof demo\nvar ff : (i,i)->o\nhyp h |- ['FY@w :i !] => 'FY@w :i !\n"
      "1: wr h (['B@w('L) :o 'T]) |- ['B@w('L) :o 'T, 'FY@w :i !] => 'FY@w :i !\n",
      kf());
  EXPECT_EQ(p.name, "demo");
  ASSERT_EQ(p.variables.size(), 1u);
  ASSERT_EQ(p.hypotheses.size(), 1u);
  ASSERT_EQ(p.steps.size(), 1u);
  EXPECT_EQ(p.steps[0].rule, "wr");
  EXPECT_EQ(p.steps[0].premises, std::vector<std::string>{"h"});
  ASSERT_EQ(p.steps[0].params.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<MatchSet>(p.steps[0].params[0]));
  EXPECT_EQ(p.steps[0].line, 4);
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of([] { parse_construction("'K@w('L", kf().signature, kf().scope()); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_construction("'Nope", kf().signature); }), ErrorKind::Reference);
  EXPECT_EQ(kind_of([] { parse_construction("zz", kf().signature); }), ErrorKind::Reference);
  EXPECT_EQ(kind_of([] { type_of(parse_construction("'K('Fr)", kf().signature), kf().signature); }), ErrorKind::Type);
  EXPECT_EQ(kind_of([] { parse_type("(i,)->o"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_theory("const x i"); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_sequent("[] =>", kf().signature); }), ErrorKind::Syntax);
  EXPECT_EQ(kind_of([] { parse_proof("proof p\n1 beta-con |- [] => 'L :i 'L\n", kf()); }), ErrorKind::Syntax);
}

TEST(Parse, SpansCoverTopLevelItems) {
  std::string text = "const a : i\nconst b : (i)->o\n";
  SourceDocument d = parse_file(DocumentKind::Theory, text);
  ASSERT_EQ(d.spans.size(), 2u);
  EXPECT_EQ(d.spans[1].line, 2);
  EXPECT_EQ(text.substr(d.spans[0].begin, d.spans[0].end - d.spans[0].begin).substr(0, 11), "const a : i");
}

// ---------------------------------------------------------------------------
// Round trips

TEST(RoundTrip, EveryCorpusFile) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(TTSTAR_CORPUS_DIR)) {
    const auto path = entry.path();
    const std::string ext = path.extension().string();
    const std::string text = read_file(path.string());
    SCOPED_TRACE(path.filename().string());
    ++seen;
    if (ext == ".thy") {
      Theory t = parse_theory(text);
      EXPECT_EQ(parse_theory(print(t)), t);
      continue;
    }
    std::string stem = path.stem().string();
    std::string thy = stem == "arith" || stem == "pair" ? stem + ".thy" : "kf.thy";
    Theory theory = parse_theory(read_file(testing::corpus(thy)));
    if (ext == ".mdl") {
      Model m = parse_model(text, theory);
      std::string once = print(m);
      EXPECT_EQ(print(parse_model(once, theory)), once);
    } else if (ext == ".seq") {
      Sequent s = parse_sequent_file(text, theory);
      EXPECT_EQ(parse_sequent_file(print(s), theory), s);
    } else if (ext == ".prf") {
      ProofScript p = parse_proof(text, theory);
      std::string once = print(p);
      ProofScript back = parse_proof(once, theory);
      EXPECT_EQ(print(back), once);
      ASSERT_EQ(back.steps.size(), p.steps.size());
      for (std::size_t i = 0; i < p.steps.size(); ++i) EXPECT_EQ(back.steps[i].claimed, p.steps[i].claimed);
    } else {
      --seen;
    }
  }
  EXPECT_GE(seen, 25u);
}

TEST(RoundTrip, RandomConstructions) {
  testing::PropertyResult r = testing::round_trip_random(31, 1000);
  EXPECT_EQ(r.cases, 1000u);
  EXPECT_EQ(r.violations, 0u) << r.first_failure;
}

TEST(RoundTrip, PrintingIsDeterministic) {
  std::mt19937_64 a(5), b(5);
  Generator ga(fuzz_theory(), a, 5), gb(fuzz_theory(), b, 5);
  for (int n = 0; n < 200; ++n) EXPECT_EQ(print(ga.match()), print(gb.match()));
}

TEST(RoundTrip, QuotationAndImproperMatches) {
  const Signature& sig = fuzz_theory().signature;
  for (const char* text : {"quote{'P(x)}", "'eq<*1>(quote{'q}, quote{'not('q)})", "bot<i>", "\\x:i, y:i. 'R(x, y)",
                           "['g('c)]", "'the<i>(\\x:i. 'eq<i>(x, 'c))"}) {
    Construction x = parse_construction(text, sig, fuzz_theory().scope());
    EXPECT_TRUE(syntactic_equal(parse_construction(print(x), sig, fuzz_theory().scope()), x)) << text;
  }
}

}  // namespace
}  // namespace ttstar
