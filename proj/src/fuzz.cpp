#include "ttstar/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "ttstar/countermodel.hpp"
#include "ttstar/error.hpp"
#include "ttstar/print.hpp"

namespace ttstar {

namespace {

Type t_o() { return Type::truth(); }
Type t_i() { return Type::individual(); }
Type t_w() { return Type::world(); }

Match t_match(Construction lhs) { return Match(std::move(lhs), Type::truth(), mk::T()); }

void add_function_types(const Type& t, std::vector<Type>& out) {
  if (!t.is_function()) return;
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  add_function_types(t.result(), out);
}

std::vector<Tuple> tuples(const std::vector<Type>& params, const Evaluator& ev) {
  std::vector<Tuple> out{Tuple{}};
  for (const auto& p : params) {
    std::vector<Tuple> next;
    for (const auto& prefix : out)
      for (const auto& v : ev.domain(p)) {
        Tuple t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

Value random_value(const Type& t, const Frame& frame, const Evaluator& ev, std::mt19937_64& rng) {
  if (t.is_construction()) return Value::quoted(mk::T());
  if (t.is_base()) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(frame.size(t.base_type())) - 1);
    return Value::element(t.base_type(), pick(rng));
  }
  FunctionTable table;
  std::bernoulli_distribution undefined(0.25);
  for (auto& key : tuples(t.params(), ev)) {
    if (undefined(rng)) continue;
    table.emplace(std::move(key), random_value(t.result(), frame, ev, rng));
  }
  return Value::function(std::move(table));
}

}  // namespace

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(const Theory& theory, std::mt19937_64& rng, int max_depth)
    : theory_(theory), rng_(rng), max_depth_(std::max(1, max_depth)) {
  for (const auto& [name, type] : theory.signature.constants()) add_function_types(type, function_types_);
  for (const auto& v : theory.variables) add_function_types(v.type, function_types_);
}

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

std::size_t Generator::below(std::size_t n) {
  if (n <= 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

Type Generator::element_type() {
  std::size_t r = below(20);
  if (r < 12) return t_i();
  if (r < 17) return t_o();
  return t_w();
}

void Generator::reset() {
  fresh_counter_ = 0;
  bound_.clear();
}

Variable Generator::fresh(const Type& t) {
  if (chance(0.08)) {
    std::vector<Variable> declared;
    for (const auto& v : theory_.variables)
      if (v.type == t) declared.push_back(v);
    if (!declared.empty()) return declared[below(declared.size())];
  }
  return Variable{"n" + std::to_string(++fresh_counter_), t};
}

std::optional<Construction> Generator::atom(const Type& t, bool allow_bot) {
  if (allow_bot && t.is_base() && chance(0.05)) return mk::bot(t);
  std::vector<Construction> c;
  if (t.is(BaseType::Truth)) {
    c.push_back(mk::T());
    c.push_back(mk::F());
  }
  for (const auto& [name, type] : theory_.signature.constants())
    if (type == t) {
      c.push_back(mk::cnst(name));
      c.push_back(mk::cnst(name));
    }
  if (t == Type::function({t_o()}, t_o())) c.push_back(mk::cnst(std::string(builtin::kNot)));
  if (t == Type::function({t_o(), t_o()}, t_o())) c.push_back(mk::cnst(std::string(builtin::kImp)));
  if (t.is_function() && t.params().size() == 2 && t.params()[0] == t.params()[1] && t.params()[0].is_base() &&
      t.result().is(BaseType::Truth))
    c.push_back(Construction::constant(std::string(builtin::kEq), t.params()[0]));
  for (const auto& v : theory_.variables)
    if (v.type == t) c.push_back(Construction::variable(v));
  // Innermost binders shadow; only the visible one of each name is offered.
  std::set<std::string> seen;
  for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
    if (!seen.insert(it->name).second) continue;
    if (it->type != t) continue;
    c.push_back(Construction::variable(*it));
    c.push_back(Construction::variable(*it));
  }
  if (c.empty()) return std::nullopt;
  return c[below(c.size())];
}

std::string Generator::binder_name(const Type& t, const std::vector<Variable>& taken) {
  static const std::vector<std::string> individuals{"x", "y", "v"};
  static const std::vector<std::string> truths{"p", "s"};
  static const std::vector<std::string> worlds{"u", "t"};
  const std::vector<std::string>* names = nullptr;
  if (t.is(BaseType::Individual)) names = &individuals;
  if (t.is(BaseType::Truth)) names = &truths;
  if (t.is(BaseType::World)) names = &worlds;
  auto free_name = [&](const std::string& n) {
    return std::none_of(taken.begin(), taken.end(), [&](const Variable& v) { return v.name == n; });
  };
  if (names) {
    std::string n = (*names)[below(names->size())];
    if (free_name(n)) return n;
    for (const auto& m : *names)
      if (free_name(m)) return m;
  }
  // Other types get one name each so that a name never changes type.
  auto it = std::find(function_types_.begin(), function_types_.end(), t);
  std::string base = "m" + std::to_string(it - function_types_.begin());
  for (int k = 0;; ++k) {
    std::string n = k == 0 ? base : base + "_" + std::to_string(k);
    if (free_name(n)) return n;
  }
}

Construction Generator::construction(const Type& t) { return construction(t, 1 + static_cast<int>(below(max_depth_))); }

Construction Generator::construction(const Type& t, int depth) {
  if (depth <= 1 || chance(0.25))
    if (auto a = atom(t, true)) return *a;
  if (depth <= 1) return mk::bot(t);
  return compound(t, depth);
}

Construction Generator::abstraction(const Type& ft, int depth) {
  if (depth < 2) {
    if (auto a = atom(ft, false)) return *a;
    return mk::bot(ft);
  }
  std::vector<Variable> binders;
  for (const auto& p : ft.params()) binders.push_back(Variable{binder_name(p, binders), p});
  std::size_t mark = bound_.size();
  bound_.insert(bound_.end(), binders.begin(), binders.end());
  Construction body = construction(ft.result(), depth - 1);
  bound_.erase(bound_.begin() + static_cast<std::ptrdiff_t>(mark), bound_.end());
  return mk::lam(std::move(binders), std::move(body));
}

Construction Generator::klass(const Type& element) {
  Type ft = Type::function({element}, t_o());
  int depth = 2 + static_cast<int>(below(static_cast<std::size_t>(std::max(1, max_depth_ - 1))));
  if (chance(0.7)) return abstraction(ft, depth);
  return construction(ft, depth);
}

Construction Generator::compound(const Type& t, int depth) {
  const int d = depth - 1;
  std::vector<std::function<Construction()>> opts;
  auto class_at = [&](const Type& el) {
    Type ft = Type::function({el}, t_o());
    return chance(0.7) ? abstraction(ft, d) : construction(ft, d);
  };
  if (t.is_function()) {
    opts.push_back([&] { return abstraction(t, depth); });
    opts.push_back([&] { return abstraction(t, depth); });
  }
  if (t.is(BaseType::Truth)) {
    opts.push_back([&] { return mk::not_(construction(t_o(), d)); });
    opts.push_back([&] {
      Construction a = construction(t_o(), d);
      return mk::imp(a, construction(t_o(), d));
    });
    opts.push_back([&] {
      Type el = element_type();
      Construction a = construction(el, d);
      return mk::eq(el, a, construction(el, d));
    });
    opts.push_back([&] {
      Type el = element_type();
      return mk::some(el, class_at(el));
    });
    opts.push_back([&] {
      Type el = element_type();
      return mk::all(el, class_at(el));
    });
  }
  if (t.is_base()) opts.push_back([&] { return mk::the(t, class_at(t)); });
  for (const auto& ft : function_types_) {
    if (ft.result() != t) continue;
    opts.push_back([&, ft] {
      Construction op = construction(ft, d);
      std::vector<Construction> args;
      for (const auto& p : ft.params()) args.push_back(construction(p, d));
      return mk::app(std::move(op), std::move(args));
    });
  }
  opts.push_back([&] {
    Type el = element_type();
    Construction lam = abstraction(Type::function({el}, t), d);
    return mk::app(std::move(lam), {construction(el, d)});
  });
  return opts[below(opts.size())]();
}

Construction Generator::simple(const Type& t) {
  if (auto a = atom(t, false)) return *a;
  return Construction::variable(fresh(t));
}

Match Generator::match(Construction lhs, const Type& t) {
  if (chance(0.2)) return Match::improper(std::move(lhs), t);
  return Match(std::move(lhs), t, simple(t));
}

Match Generator::match() {
  std::size_t r = below(20);
  Type t = r < 12 ? t_o() : r < 18 ? t_i() : t_w();
  return match(construction(t), t);
}

MatchSet Generator::context(std::size_t max_size) {
  MatchSet out;
  std::size_t n = below(max_size + 1);
  for (std::size_t k = 0; k < n; ++k) out.insert(match());
  return out;
}

// ---------------------------------------------------------------------------
// Models

Frame random_frame(int max_i, int max_w, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ni(1, std::max(1, max_i));
  std::uniform_int_distribution<int> nw(1, std::max(1, max_w));
  int a = ni(rng);
  return make_frame(a, nw(rng));
}

Model random_model(const Signature& signature, const Frame& frame, std::mt19937_64& rng, std::size_t cap) {
  Model m(signature, frame);
  Evaluator ev(frame, m, cap);
  for (const auto& [name, type] : signature.constants()) m.interpret(name, random_value(type, frame, ev, rng));
  return m;
}

const Theory& fuzz_theory() {
  static const Theory theory = parse_theory(R"(
const P : (i)->o
const Q : (i)->o
const R : (i,i)->o
const g : (i)->i
const c : i
const d : i
const q : o
const h : (w)->i
const h2 : (w)->i
const B : (w)->((i)->o)
const S : (w)->((i,(w)->i)->o)
var x : i
var y : i
var z : i
var p : o
var r : o
var u : w
var f : (i)->o
var k : (i)->i
var e : (w)->i
)");
  return theory;
}

// ---------------------------------------------------------------------------
// Trials

std::uint64_t trial_seed(std::uint64_t seed, std::string_view rule, std::size_t trial) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the rule name
  for (char ch : rule) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h ^ (0x9e3779b97f4a7c15ull * (trial + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;  // splitmix64 finaliser
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

std::optional<Validity> check(const Sequent& s, const Model& m, std::size_t cap) {
  try {
    return sequent_valid(s, m, cap);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SizeCap || e.kind() == ErrorKind::UnsupportedOrder) return std::nullopt;
    throw Error(e.kind(), std::string(e.what()) + " while checking " + print(s));
  }
}

}  // namespace

FuzzStats fuzz_with(const std::string& name, const FuzzProducer& produce, const FuzzConfig& cfg) {
  const Theory& theory = fuzz_theory();
  Kernel kernel(theory.signature, cfg.kernel);
  FuzzStats stats;
  stats.rule = name;
  for (std::size_t t = cfg.first_trial; t < cfg.first_trial + cfg.trials; ++t) {
    ++stats.trials;
    const std::uint64_t seed = trial_seed(cfg.seed, name, t);
    std::mt19937_64 rng(seed);
    Generator g(theory, rng, cfg.max_depth);
    std::optional<FuzzInstance> inst;
    for (std::size_t attempt = 0; attempt < cfg.max_attempts && !inst; ++attempt) {
      g.reset();
      try {
        inst = produce(g, kernel);
      } catch (const Error&) {
        ++stats.rejected;
      }
    }
    if (!inst) continue;
    ++stats.instances;

    bool premise_valid = false;
    bool nonvacuous = false;
    for (std::size_t mi = 0; mi < cfg.models_per_trial; ++mi) {
      Model m = random_model(theory.signature, random_frame(cfg.max_i, cfg.max_w, rng), rng, cfg.cap);
      bool all_valid = true;
      bool capped = false;
      for (const auto& p : inst->premises) {
        auto r = check(p, m, cfg.cap);
        if (!r) {
          capped = true;
          break;
        }
        if (!r->valid) {
          all_valid = false;
          break;
        }
      }
      std::optional<Validity> c;
      std::string ill_typed;  // a conclusion without semantic value counts against the rule
      if (!capped && all_valid) {
        try {
          c = check(inst->conclusion, m, cfg.cap);
          capped = !c;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Type) throw;
          ill_typed = e.what();
        }
      }
      if (capped) {
        ++stats.capped;
        continue;
      }
      ++stats.models;
      if (!all_valid) continue;
      premise_valid = true;
      if (c && c->satisfying > 0) nonvacuous = true;
      if (!c || !c->valid) {
        Violation v;
        v.trial = t;
        v.seed = seed;
        for (const auto& p : inst->premises) v.premises.push_back(print(p));
        v.conclusion = print(inst->conclusion);
        v.model = print(m);
        if (c) {
          std::map<std::string, Type> types;
          for (const auto& var : free_variables(inst->conclusion)) types.emplace(var.name, var.type);
          v.assignment = print_assignment(*c->witness, types, m.frame());
        } else {
          v.assignment = "(conclusion is ill-typed: " + ill_typed + ")";
        }
        stats.violations.push_back(std::move(v));
        break;
      }
    }
    stats.premise_valid += premise_valid;
    stats.nonvacuous += nonvacuous;
  }
  return stats;
}

namespace {

// ---- instance shapes --------------------------------------------------------

struct Candidate {
  std::vector<Sequent> premises;
  Params params;
};

MatchSet plus(MatchSet gamma, const Match& m) {
  gamma.insert(m);
  return gamma;
}

// Premises are often made to hold by assuming what they assert.
void maybe_assume(Generator& g, MatchSet& gamma, const Match& m, double p = 0.5) {
  if (g.chance(p)) gamma.insert(m);
}

Match some_succedent(Generator& g, const MatchSet& gamma) {
  if (!gamma.empty() && g.chance(0.4)) {
    auto it = gamma.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(g.below(gamma.size())));
    return *it;
  }
  return g.match();
}

std::pair<Match, Match> incompatible_pair(Generator& g) {
  Type t = g.element_type();
  Construction x = g.construction(t);
  Match a = Match::improper(x, t);
  Match b = Match::improper(x, t);
  if (t.is(BaseType::Truth) && g.chance(0.5)) {
    a = Match(x, t, mk::T());
    b = Match(x, t, mk::F());
  } else {
    a = Match(x, t, g.simple(t));
  }
  if (g.chance(0.5)) std::swap(a, b);
  return {a, b};
}

Type function_type(Generator& g, const Type& result, std::size_t max_arity = 2) {
  std::vector<Type> params;
  std::size_t n = 1 + g.below(max_arity);
  for (std::size_t k = 0; k < n; ++k) params.push_back(g.element_type());
  return Type::function(std::move(params), result);
}

// Premise succedents may be assumed to help validity; side antecedents are
// drawn as subsets of the main one.
MatchSet subset(Generator& g, const MatchSet& gamma) {
  MatchSet out;
  for (const auto& m : gamma)
    if (g.chance(0.7)) out.insert(m);
  return out;
}

Candidate rule_candidate(RuleId rule, Generator& g) {
  Candidate c;
  MatchSet gamma = g.context();
  switch (rule) {
    case RuleId::Ax:
      c.params = {gamma, g.match()};
      break;
    case RuleId::Wr:
      c.premises = {Sequent(gamma, some_succedent(g, gamma))};
      c.params = {g.context()};
      break;
    case RuleId::Cut: {
      Match m1 = g.match();
      maybe_assume(g, gamma, m1, 0.3);
      MatchSet with_m1 = plus(gamma, m1);
      c.premises = {Sequent(gamma, m1), Sequent(with_m1, some_succedent(g, with_m1))};
      break;
    }
    case RuleId::Efq: {
      auto [m1, m2] = incompatible_pair(g);
      maybe_assume(g, gamma, m1);
      c.premises = {Sequent(gamma, m1), Sequent(gamma, m2)};
      c.params = {g.match()};
      break;
    }
    case RuleId::Exh: {
      Type t = g.element_type();
      Construction x = g.construction(t);
      Variable v = g.fresh(t);
      Match m = some_succedent(g, gamma);
      c.premises = {Sequent(plus(gamma, Match::improper(x, t)), m),
                    Sequent(plus(gamma, Match(x, t, Construction::variable(v))), m)};
      c.params = {v};
      break;
    }
    case RuleId::Tm:
      c.params = {gamma, g.simple(g.element_type())};
      break;
    case RuleId::LambdaInst: {
      Type ft = function_type(g, g.element_type());
      Construction lam = g.abstraction(ft, 2 + static_cast<int>(g.below(3)));
      Variable f = g.fresh(ft);
      c.premises = {Sequent(plus(gamma, Match(lam, ft, Construction::variable(f))), some_succedent(g, gamma))};
      c.params = {f};
      break;
    }
    case RuleId::BetaCon: {
      Type t = g.element_type();
      Type ft = function_type(g, t);
      std::vector<Construction> args;
      for (const auto& p : ft.params()) args.push_back(g.construction(p, 2));
      Match m(mk::app(g.abstraction(ft, 3), std::move(args)), t, g.simple(t));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      break;
    }
    case RuleId::BetaExp: {
      Type t = g.element_type();
      Type ft = function_type(g, t);
      Construction lam = g.abstraction(ft, 3);
      if (!lam.is_abstraction()) fail(ErrorKind::Shape, "no abstraction");
      std::vector<Binding> b;
      std::vector<Match> sides;
      for (std::size_t k = 0; k < lam.binders().size(); ++k) {
        const Variable& x = lam.binders()[k];
        Construction arg = g.construction(x.type, 2);
        b.emplace_back(x, arg);
        sides.push_back(Match(arg, x.type, g.simple(x.type)));
        maybe_assume(g, gamma, sides.back());
      }
      Match main(substitute(lam.body(), b, &g.signature()), t, g.simple(t));
      maybe_assume(g, gamma, main);
      c.premises = {Sequent(gamma, main)};
      for (const auto& s : sides) c.premises.push_back(Sequent(subset(g, gamma), s));
      c.params = {lam};
      break;
    }
    case RuleId::ASubI:
    case RuleId::ASubII: {
      Type t = g.element_type();
      Type ft = function_type(g, t);
      Construction op = g.construction(ft, 3);
      std::vector<Construction> operands;
      std::vector<Match> sides;
      for (const auto& p : ft.params()) {
        Construction x = g.construction(p, 2);
        Construction xs = g.simple(p);
        operands.push_back(rule == RuleId::ASubI ? x : xs);
        sides.push_back(Match(x, p, xs));
        maybe_assume(g, gamma, sides.back());
      }
      Match main(mk::app(op, std::move(operands)), t, g.simple(t));
      maybe_assume(g, gamma, main);
      c.premises = {Sequent(gamma, main)};
      for (const auto& s : sides) c.premises.push_back(Sequent(subset(g, gamma), s));
      break;
    }
    case RuleId::AInst: {
      Type t = g.element_type();
      Type ft = function_type(g, t);
      Construction op = g.construction(ft, 3);
      std::vector<Construction> operands;
      for (const auto& p : ft.params()) operands.push_back(g.construction(p, 2));
      Match m1(mk::app(op, operands), t, g.simple(t));
      maybe_assume(g, gamma, m1);
      Variable f = g.fresh(ft);
      MatchSet delta = plus(gamma, Match(op, ft, Construction::variable(f)));
      c.params = {f};
      for (std::size_t k = 0; k < operands.size(); ++k) {
        Variable x = g.fresh(ft.params()[k]);
        delta.insert(Match(operands[k], ft.params()[k], Construction::variable(x)));
        c.params.push_back(x);
      }
      c.premises = {Sequent(gamma, m1), Sequent(delta, some_succedent(g, gamma))};
      break;
    }
    case RuleId::Ext: {
      std::size_t r = g.below(3);
      Type ft = r == 0 ? Type::function({t_i()}, t_o())
              : r == 1 ? Type::function({t_i()}, t_i())
                       : Type::function({t_i(), t_i()}, t_o());
      Construction fhat = g.simple(ft);
      Construction ghat = g.chance(0.3) ? fhat : g.simple(ft);
      std::vector<Construction> xs;
      for (const auto& p : ft.params()) {
        Variable x = g.fresh(p);
        xs.push_back(Construction::variable(x));
        c.params.push_back(x);
      }
      Variable y = g.fresh(ft.result());
      c.params.push_back(y);
      Match fx(mk::app(fhat, xs), ft.result(), Construction::variable(y));
      Match gx(mk::app(ghat, xs), ft.result(), Construction::variable(y));
      c.premises = {Sequent(plus(gamma, fx), gx), Sequent(plus(gamma, gx), fx)};
      break;
    }
    case RuleId::AImpBot: {
      Type phi = g.element_type();
      Construction fc = g.construction(phi);
      Variable fv = g.fresh(phi);
      Match m1(fc, phi, Construction::variable(fv));
      maybe_assume(g, gamma, m1);
      MatchSet delta = gamma;
      std::size_t n = 1 + g.below(2);
      for (std::size_t k = 0; k < n; ++k) {
        Type t = g.element_type();
        Variable x = g.fresh(t);
        delta.insert(Match(g.construction(t), t, Construction::variable(x)));
        c.params.push_back(x);
      }
      c.params.push_back(g.element_type());
      c.premises = {Sequent(gamma, m1), Sequent(delta, some_succedent(g, gamma))};
      break;
    }
    case RuleId::NotI: {
      Construction o = g.simple(t_o());
      Construction o2 = g.simple(t_o());
      Match m(o, t_o(), o2);
      if (g.chance(0.5)) {
        if (o2.is_builtin(builtin::kTrue)) gamma.insert(Match(o, t_o(), mk::F()));
        if (o2.is_builtin(builtin::kFalse)) gamma.insert(Match(o, t_o(), mk::T()));
      }
      auto [m1, m2] = incompatible_pair(g);
      MatchSet delta = plus(gamma, m);
      c.premises = {Sequent(delta, m1), Sequent(delta, m2)};
      c.params = {m};
      break;
    }
    case RuleId::Ra: {
      Construction o = g.simple(t_o());
      Match m = some_succedent(g, gamma);
      c.premises = {Sequent(plus(gamma, Match(o, t_o(), mk::T())), m),
                    Sequent(plus(gamma, Match(o, t_o(), mk::F())), m)};
      c.params = {o};
      break;
    }
    case RuleId::NotInst:
    case RuleId::ImpInst:
    case RuleId::EqInst:
    case RuleId::SomeInst:
    case RuleId::AllInst: {
      Construction a = mk::T();
      if (rule == RuleId::NotInst) a = mk::not_(g.simple(t_o()));
      if (rule == RuleId::ImpInst) {
        Construction l = g.simple(t_o());
        a = mk::imp(l, g.simple(t_o()));
      }
      if (rule == RuleId::EqInst) {
        Type t = g.element_type();
        Construction l = g.simple(t);
        a = mk::eq(t, l, g.simple(t));
      }
      if (rule == RuleId::SomeInst || rule == RuleId::AllInst) {
        Type t = g.element_type();
        Construction cl = g.chance(0.5) ? g.klass(t) : g.simple(Type::function({t}, t_o()));
        a = rule == RuleId::SomeInst ? mk::some(t, cl) : mk::all(t, cl);
      }
      Variable o = g.fresh(t_o());
      c.premises = {Sequent(plus(gamma, Match(a, t_o(), Construction::variable(o))), some_succedent(g, gamma))};
      c.params = {o};
      break;
    }
    case RuleId::ImpI: {
      Construction o = g.simple(t_o());
      Construction o2 = g.chance(0.3) ? o : g.simple(t_o());
      maybe_assume(g, gamma, t_match(o2), 0.3);
      c.premises = {Sequent(plus(gamma, t_match(o)), t_match(o2))};
      c.params = {o};
      break;
    }
    case RuleId::ImpE: {
      Construction a = g.construction(t_o());
      Construction b = g.construction(t_o());
      Match m1 = t_match(mk::imp(a, b));
      Match m2 = t_match(a);
      maybe_assume(g, gamma, m1);
      maybe_assume(g, gamma, m2);
      c.premises = {Sequent(gamma, m1), Sequent(gamma, m2)};
      break;
    }
    case RuleId::SomeI: {
      Type t = g.element_type();
      Match m = t_match(mk::app(g.klass(t), {g.construction(t)}));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      break;
    }
    case RuleId::SomeE: {
      Type t = g.element_type();
      Construction cl = g.klass(t);
      Match m1 = t_match(mk::some(t, cl));
      maybe_assume(g, gamma, m1);
      Variable x = g.fresh(t);
      MatchSet delta = plus(gamma, t_match(mk::app(cl, {Construction::variable(x)})));
      c.premises = {Sequent(gamma, m1), Sequent(delta, some_succedent(g, gamma))};
      c.params = {x};
      break;
    }
    case RuleId::AllI: {
      Type t = g.element_type();
      Variable x = g.fresh(t);
      c.premises = {Sequent(gamma, t_match(mk::app(g.klass(t), {Construction::variable(x)})))};
      break;
    }
    case RuleId::AllE: {
      Type t = g.element_type();
      Match m = t_match(mk::all(t, g.klass(t)));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      c.params = {g.simple(t)};
      break;
    }
    case RuleId::EqI: {
      Type t = g.element_type();
      Match m(g.construction(t), t, g.simple(t));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      break;
    }
    case RuleId::EqE: {
      Type t = g.element_type();
      Construction x = g.construction(t);
      Match m = t_match(mk::eq(t, x, g.simple(t)));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      break;
    }
    case RuleId::IotaI: {
      Type t = g.element_type();
      Construction cl = g.klass(t);
      Construction xs = g.simple(t);
      Match m1 = t_match(mk::app(cl, {xs}));
      maybe_assume(g, gamma, m1);
      Variable y = g.fresh(t);
      Construction yv = Construction::variable(y);
      c.premises = {Sequent(gamma, m1), Sequent(plus(gamma, t_match(mk::app(cl, {yv}))), Match(yv, t, xs))};
      c.params = {y};
      break;
    }
    case RuleId::IotaE: {
      Type t = g.element_type();
      Match m(mk::the(t, g.klass(t)), t, g.simple(t));
      maybe_assume(g, gamma, m);
      c.premises = {Sequent(gamma, m)};
      break;
    }
    case RuleId::IotaInst: {
      Type t = g.element_type();
      Construction cl = g.klass(t);
      Variable x = g.fresh(t);
      Variable o = g.fresh(t_o());
      Construction xv = Construction::variable(x);
      c.premises = {Sequent(plus(gamma, Match(mk::the(t, cl), t, xv)), some_succedent(g, gamma)),
                    Sequent(gamma, Match(mk::app(cl, {xv}), t_o(), Construction::variable(o)))};
      c.params = {x, o};
      break;
    }
  }
  return c;
}

// ---- derived rules ------------------------------------------------------------

struct DerivedCandidate {
  std::vector<Sequent> premises;
  Params params;
  std::vector<Sequent> checked;  // semantic reading of the premises, if different
};

Construction existence(Generator& g, const Type& t, const Construction& d, bool x_first) {
  Variable x = g.fresh(t);
  if (x.name.front() != 'n') x = Variable{"n0", t};
  Construction xv = Construction::variable(x);
  return mk::some(t, mk::lam({x}, x_first ? mk::eq(t, xv, d) : mk::eq(t, d, xv)));
}

// Proper on every argument: F(y) :o o read with o existential.
Sequent totality(const MatchSet& gamma, const Construction& fy) {
  return Sequent(gamma, t_match(mk::eq(t_o(), fy, fy)));
}

DerivedCandidate derived_candidate(DerivedRuleId rule, Generator& g) {
  DerivedCandidate c;
  MatchSet gamma = g.context();
  auto single = [&](const Match& m) {
    maybe_assume(g, gamma, m);
    c.premises = {Sequent(gamma, m)};
  };
  switch (rule) {
    case DerivedRuleId::Eg: {
      Type t = g.element_type();
      single(t_match(mk::app(g.klass(t), {g.construction(t)})));
      break;
    }
    case DerivedRuleId::LNotIii:
      single(t_match(mk::not_(g.construction(t_o()))));
      break;
    case DerivedRuleId::LAppBot: {
      Type t = g.element_type();
      Construction x = g.construction(t);
      Type ft = function_type(g, g.element_type());
      std::vector<Type> params = ft.params();
      std::size_t slot = g.below(params.size());
      params[slot] = t;
      ft = Type::function(params, ft.result());
      std::vector<Construction> args;
      for (std::size_t k = 0; k < params.size(); ++k) args.push_back(k == slot ? x : g.construction(params[k], 2));
      single(Match::improper(x, t));
      c.params = {mk::app(g.construction(ft, 3), std::move(args))};
      break;
    }
    case DerivedRuleId::Si1:
    case DerivedRuleId::Si2: {
      const bool office = rule == DerivedRuleId::Si2;
      Type t = office ? Type::function({t_w()}, t_i()) : t_i();
      Construction a = g.construction(t, office ? 2 : 3);
      Construction b = g.chance(0.5) ? g.simple(t) : g.construction(t, 2);
      Construction s = mk::T();
      if (office && g.chance(0.5)) {
        s = mk::app(mk::app(mk::cnst("S"), {g.simple(t_w())}), {g.construction(t_i(), 2), a});
      } else {
        Variable hole = office ? Variable{"e", t} : Variable{"x", t};
        s = substitute(g.construction(t_o(), 4), hole, a, &g.signature());
      }
      Match m1 = t_match(s);
      Match m2 = t_match(mk::eq(t, a, b));
      maybe_assume(g, gamma, m1);
      maybe_assume(g, gamma, m2);
      c.premises = {Sequent(gamma, m1), Sequent(gamma, m2)};
      break;
    }
    case DerivedRuleId::LDescE: {
      Type t = g.element_type();
      single(t_match(mk::eq(t, mk::the(t, g.klass(t)), g.simple(t))));
      break;
    }
    case DerivedRuleId::Spr1: {
      Type t = g.element_type();
      single(Match(mk::app(g.klass(t), {g.construction(t)}), t_o(), g.simple(t_o())));
      break;
    }
    case DerivedRuleId::Spr2: {
      Type t = g.element_type();
      Construction d = g.construction(t);
      single(t_match(mk::not_(existence(g, t, d, false))));
      c.params = {mk::app(g.klass(t), {d})};
      break;
    }
    case DerivedRuleId::Spr3:
    case DerivedRuleId::LDescBotApp: {
      Type t = g.element_type();
      Construction f = g.klass(t);
      Construction d = g.construction(t);
      Match m1 = Match::improper(mk::app(f, {d}), t_o());
      maybe_assume(g, gamma, m1);
      Construction y = Construction::variable(g.fresh(t));
      Construction fy = mk::app(f, {y});
      c.premises = {Sequent(gamma, m1), Sequent(gamma, Match(fy, t_o(), Construction::variable(g.fresh(t_o()))))};
      c.checked = {c.premises[0], totality(gamma, fy)};
      break;
    }
    case DerivedRuleId::LSigmaDescBotApp: {
      Type t = g.element_type();
      single(Match::improper(g.construction(t), t));
      break;
    }
  }
  if (c.checked.empty()) c.checked = c.premises;
  return c;
}

}  // namespace

FuzzStats fuzz_rule(RuleId rule, const FuzzConfig& config) {
  if (rule == RuleId::AImpBot && !config.kernel.enable_a_imp_bot)
    fail(ErrorKind::Gated, "a-imp-bot is gated off; it is not fuzzed unless explicitly enabled");
  FuzzProducer produce = [rule](Generator& g, const Kernel& kernel) {
    Candidate c = rule_candidate(rule, g);
    std::vector<Theorem> premises;
    for (const auto& s : c.premises) premises.push_back(kernel.assume(s));
    Theorem t = kernel.apply(rule, premises, c.params);
    return FuzzInstance{c.premises, t.sequent()};
  };
  return fuzz_with(std::string(rule_name(rule)), produce, config);
}

FuzzStats fuzz_derived_rule(DerivedRuleId rule, const FuzzConfig& config) {
  FuzzProducer produce = [rule](Generator& g, const Kernel& kernel) {
    DerivedCandidate c = derived_candidate(rule, g);
    std::vector<Theorem> premises;
    for (const auto& s : c.premises) premises.push_back(kernel.assume(s));
    Expansion e = expand_derived(kernel, rule, premises, c.params);
    return FuzzInstance{c.checked, e.theorem.sequent()};
  };
  return fuzz_with(std::string(derived_rule_name(rule)), produce, config);
}

}  // namespace ttstar
