#include "ttstar/kernel.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

// ---------------------------------------------------------------------------
// Rule table

namespace {
struct RuleInfo {
  RuleId id;
  std::string_view name;
  RuleGroup group;
};

constexpr std::array<RuleInfo, 32> kRules{{
    {RuleId::Ax, "ax", RuleGroup::Structural},
    {RuleId::Wr, "wr", RuleGroup::Structural},
    {RuleId::Cut, "cut", RuleGroup::Structural},
    {RuleId::Efq, "efq", RuleGroup::Structural},
    {RuleId::Exh, "exh", RuleGroup::Structural},
    {RuleId::Tm, "tm", RuleGroup::Form},
    {RuleId::LambdaInst, "lambda-inst", RuleGroup::Form},
    {RuleId::BetaCon, "beta-con", RuleGroup::Form},
    {RuleId::BetaExp, "beta-exp", RuleGroup::Form},
    {RuleId::ASubI, "a-sub-i", RuleGroup::Form},
    {RuleId::ASubII, "a-sub-ii", RuleGroup::Form},
    {RuleId::AInst, "a-inst", RuleGroup::Form},
    {RuleId::Ext, "ext", RuleGroup::Form},
    {RuleId::AImpBot, "a-imp-bot", RuleGroup::Form},
    {RuleId::NotI, "not-i", RuleGroup::Operational},
    {RuleId::Ra, "ra", RuleGroup::Operational},
    {RuleId::NotInst, "not-inst", RuleGroup::Operational},
    {RuleId::ImpI, "imp-i", RuleGroup::Operational},
    {RuleId::ImpE, "imp-e", RuleGroup::Operational},
    {RuleId::ImpInst, "imp-inst", RuleGroup::Operational},
    {RuleId::SomeI, "some-i", RuleGroup::Operational},
    {RuleId::SomeE, "some-e", RuleGroup::Operational},
    {RuleId::SomeInst, "some-inst", RuleGroup::Operational},
    {RuleId::AllI, "all-i", RuleGroup::Operational},
    {RuleId::AllE, "all-e", RuleGroup::Operational},
    {RuleId::AllInst, "all-inst", RuleGroup::Operational},
    {RuleId::EqI, "eq-i", RuleGroup::Operational},
    {RuleId::EqE, "eq-e", RuleGroup::Operational},
    {RuleId::EqInst, "eq-inst", RuleGroup::Operational},
    {RuleId::IotaI, "iota-i", RuleGroup::Operational},
    {RuleId::IotaE, "iota-e", RuleGroup::Operational},
    {RuleId::IotaInst, "iota-inst", RuleGroup::Operational},
}};

const RuleInfo& info(RuleId id) { return kRules[static_cast<std::size_t>(id)]; }
}  // namespace

const std::vector<RuleId>& all_rules() {
  static const std::vector<RuleId> rules = [] {
    std::vector<RuleId> out;
    for (const auto& r : kRules) out.push_back(r.id);
    return out;
  }();
  return rules;
}

std::string_view rule_name(RuleId id) { return info(id).name; }
RuleGroup rule_group(RuleId id) { return info(id).group; }

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (const auto& r : kRules)
    if (r.name == name) return r.id;
  return std::nullopt;
}

std::string print(const Param& p) {
  struct Printer {
    std::string operator()(const MatchSet& s) const {
      std::string out = "[";
      bool first = true;
      for (const auto& m : s) {
        if (!first) out += ", ";
        first = false;
        out += ttstar::print(m);
      }
      return out + "]";
    }
    std::string operator()(const Match& m) const { return ttstar::print(m); }
    std::string operator()(const Construction& c) const { return ttstar::print(c); }
    std::string operator()(const Variable& v) const { return v.name + ":" + ttstar::print(v.type); }
    std::string operator()(const Path& p) const { return ttstar::print(p); }
    std::string operator()(const Type& t) const { return "type " + ttstar::print(t); }
  };
  return std::visit(Printer{}, p);
}

// ---------------------------------------------------------------------------
// Theorems

struct Theorem::Node {
  Sequent sequent;
  std::optional<RuleId> rule;
  std::string hypothesis;
  std::vector<Theorem> premises;
  Params params;
};

const Sequent& Theorem::sequent() const { return node_->sequent; }
std::string_view Theorem::rule() const { return node_->rule ? rule_name(*node_->rule) : "hyp"; }
std::optional<RuleId> Theorem::rule_id() const { return node_->rule; }
const std::vector<Theorem>& Theorem::premises() const { return node_->premises; }
const Params& Theorem::params() const { return node_->params; }
const std::string& Theorem::hypothesis() const { return node_->hypothesis; }

// ---------------------------------------------------------------------------
// Side conditions

bool patently_incompatible(const Match& m1, const Match& m2) {
  if (m1.lhs() != m2.lhs() || m1.type() != m2.type()) return false;
  if (m1.is_proper() != m2.is_proper()) return true;
  if (m1.is_improper()) return false;
  const Construction& a = *m1.rhs();
  const Construction& b = *m2.rhs();
  auto truth_constant = [](const Construction& c) {
    return c.is_builtin(builtin::kTrue) || c.is_builtin(builtin::kFalse);
  };
  if (truth_constant(a) && truth_constant(b)) return a != b;
  if (a.is_quote() && b.is_quote()) return a != b;
  return false;
}

std::optional<std::string> check_freshness(const FreshnessCheck& check) {
  for (std::size_t i = 0; i < check.introduced.size(); ++i)
    for (std::size_t j = i + 1; j < check.introduced.size(); ++j)
      if (check.introduced[i].name == check.introduced[j].name)
        return "variable '" + check.introduced[i].name + "' introduced twice";
  for (const auto& v : check.introduced) {
    for (const MatchSet* s : check.sets)
      for (const auto& m : *s)
        if (occurs_free(v.name, m)) return "variable '" + v.name + "' is free in " + print(m);
    for (const auto& m : check.matches)
      if (occurs_free(v.name, m)) return "variable '" + v.name + "' is free in " + print(m);
    for (const auto& c : check.constructions)
      if (occurs_free(v.name, c)) return "variable '" + v.name + "' is free in " + print(c);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rule application helpers

namespace {

class Step {
 public:
  Step(RuleId rule, const std::vector<Theorem>& premises, const Params& params)
      : rule_(rule), premises_(premises), params_(params) {}

  [[noreturn]] void shape(const std::string& what) const {
    fail(ErrorKind::Shape, std::string(rule_name(rule_)) + ": " + what);
  }

  void arity(std::size_t premises, std::size_t params) const {
    if (premises_.size() != premises)
      shape("expects " + std::to_string(premises) + " premise(s), got " + std::to_string(premises_.size()));
    if (params_.size() != params)
      shape("expects " + std::to_string(params) + " parameter(s), got " + std::to_string(params_.size()));
  }

  void at_least(std::size_t premises) const {
    if (premises_.size() < premises)
      shape("expects at least " + std::to_string(premises) + " premise(s), got " + std::to_string(premises_.size()));
  }

  const Sequent& premise(std::size_t i) const { return premises_[i].sequent(); }
  std::size_t premise_count() const { return premises_.size(); }
  std::size_t param_count() const { return params_.size(); }

  const MatchSet& set(std::size_t i) const { return get<MatchSet>(i, "a match set"); }
  const Match& match(std::size_t i) const { return get<Match>(i, "a match"); }
  const Type& type(std::size_t i) const { return get<Type>(i, "a type"); }

  Construction construction(std::size_t i) const {
    if (const auto* c = std::get_if<Construction>(&params_.at(i))) return *c;
    if (const auto* v = std::get_if<Variable>(&params_.at(i))) return Construction::variable(*v);
    shape("parameter " + std::to_string(i + 1) + " must be a construction");
  }

  Variable variable(std::size_t i) const {
    if (const auto* v = std::get_if<Variable>(&params_.at(i))) return *v;
    if (const auto* c = std::get_if<Construction>(&params_.at(i)); c && c->is_variable()) return c->as_variable();
    shape("parameter " + std::to_string(i + 1) + " must be a variable");
  }

  void fresh(const FreshnessCheck& check) const {
    if (auto violation = check_freshness(check))
      fail(ErrorKind::Freshness, std::string(rule_name(rule_)) + ": " + *violation);
  }

  void same_antecedent(const Sequent& a, const Sequent& b, const std::string& what) const {
    if (a.antecedent != b.antecedent) shape(what + " must have identical antecedents");
  }

  // The unique antecedent match with rhs the given variable satisfying pred.
  template <class Pred>
  Match discharged(const MatchSet& gamma, const Variable& x, Pred pred, const std::string& what) const {
    std::optional<Match> found;
    for (const auto& m : gamma) {
      if (!m.rhs() || !m.rhs()->is_variable() || m.rhs()->as_variable() != x) continue;
      if (!pred(m)) continue;
      if (found) fail(ErrorKind::Freshness, std::string(rule_name(rule_)) + ": more than one " + what + " with '" + x.name + "'");
      found = m;
    }
    if (!found) shape("no " + what + " with right-hand side '" + x.name + "' in the premise antecedent");
    return *found;
  }

  void proper(const Match& m, const std::string& what) const {
    if (m.is_improper()) shape(what + " must have a proper right-hand side");
  }

  void is_true(const Match& m, const std::string& what) const {
    if (!m.type().is(BaseType::Truth) || !m.rhs() || !m.rhs()->is_builtin(builtin::kTrue))
      shape(what + " must be of the form X :o 'T");
  }

  void simple(const Construction& c, const std::string& what) const {
    if (!is_simple(c)) shape(what + " must be a variable or acquisition, got " + print(c));
  }

  // Application of the named builtin; returns its operands.
  const std::vector<Construction>& builtin_app(const Construction& c, std::string_view name, std::size_t arity,
                                               const std::string& what) const {
    if (!c.is_application() || !c.op().is_builtin(name) || c.operands().size() != arity)
      shape(what + " must be an application of '" + std::string(name) + "', got " + print(c));
    return c.operands();
  }

 private:
  template <class T>
  const T& get(std::size_t i, const std::string& what) const {
    if (i >= params_.size()) shape("missing parameter " + std::to_string(i + 1));
    const T* p = std::get_if<T>(&params_[i]);
    if (!p) shape("parameter " + std::to_string(i + 1) + " must be " + what);
    return *p;
  }

  RuleId rule_;
  const std::vector<Theorem>& premises_;
  const Params& params_;
};

Match t_match(Construction lhs) { return Match(std::move(lhs), Type::truth(), mk::T()); }

Type class_element_type(const Construction& c, const Signature& sig, const Step& st) {
  Type t = type_of(c, sig);
  if (!t.is_function() || t.params().size() != 1 || !t.result().is(BaseType::Truth))
    st.shape("expected a class of type (t)->o, got " + print(c) + " : " + print(t));
  return t.params()[0];
}

bool inst_operand(const Construction& c, bool allow_abstraction) {
  return is_simple(c) || (allow_abstraction && c.is_abstraction());
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernel

Kernel::Kernel(Signature signature, KernelConfig config)
    : signature_(std::move(signature)), config_(config) {}

Theorem Kernel::assume(const Sequent& s, std::string name) const {
  check_sequent(s, signature_);
  auto n = std::make_shared<Theorem::Node>(Theorem::Node{s, std::nullopt, std::move(name), {}, {}});
  return Theorem{std::move(n)};
}

Theorem Kernel::make(RuleId rule, const std::vector<Theorem>& premises, const Params& params, Sequent s) const {
  if (rule != RuleId::AImpBot) check_sequent(s, signature_);
  auto n = std::make_shared<Theorem::Node>(Theorem::Node{std::move(s), rule, {}, premises, params});
  return Theorem{std::move(n)};
}

Theorem Kernel::apply_structural(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const {
  if (rule_group(rule) != RuleGroup::Structural)
    fail(ErrorKind::Shape, std::string(rule_name(rule)) + " is not a structural rule");
  return apply(rule, premises, params);
}

Theorem Kernel::apply_form(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const {
  if (rule_group(rule) != RuleGroup::Form) fail(ErrorKind::Shape, std::string(rule_name(rule)) + " is not a form rule");
  return apply(rule, premises, params);
}

Theorem Kernel::apply_operational(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const {
  if (rule_group(rule) != RuleGroup::Operational)
    fail(ErrorKind::Shape, std::string(rule_name(rule)) + " is not an operational rule");
  return apply(rule, premises, params);
}

Theorem Kernel::apply(RuleId rule, const std::vector<Theorem>& premises, const Params& params) const {
  const Step st(rule, premises, params);
  const Signature& sig = signature_;
  auto done = [&](MatchSet gamma, Match m) { return make(rule, premises, params, Sequent(std::move(gamma), std::move(m))); };

  switch (rule) {
    // ---- structural ------------------------------------------------------
    case RuleId::Ax: {
      st.arity(0, 2);
      const Match& m = st.match(1);
      return done(with(st.set(0), {m}), m);
    }
    case RuleId::Wr: {
      st.arity(1, 1);
      MatchSet gamma = st.premise(0).antecedent;
      for (const auto& m : st.set(0)) gamma.insert(m);
      return done(std::move(gamma), st.premise(0).succedent);
    }
    case RuleId::Cut: {
      st.arity(2, 0);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      if (p2.antecedent != with(p1.antecedent, {p1.succedent}))
        st.shape("second premise antecedent must be the first's plus its succedent");
      return done(p1.antecedent, p2.succedent);
    }
    case RuleId::Efq: {
      st.arity(2, 1);
      st.same_antecedent(st.premise(0), st.premise(1), "premises");
      if (!patently_incompatible(st.premise(0).succedent, st.premise(1).succedent))
        fail(ErrorKind::Incompatibility, "efq: " + print(st.premise(0).succedent) + " and " +
                                             print(st.premise(1).succedent) + " are not patently incompatible");
      return done(st.premise(0).antecedent, st.match(0));
    }
    case RuleId::Exh: {
      st.arity(2, 1);
      const Variable x = st.variable(0);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      if (p1.succedent != p2.succedent) st.shape("premises must have the same succedent");
      Match mx = st.discharged(p2.antecedent, x, [](const Match&) { return true; }, "match");
      MatchSet gamma = without(p2.antecedent, mx);
      if (p1.antecedent != with(gamma, {Match::improper(mx.lhs(), mx.type())}))
        st.shape("first premise must assume " + print(Match::improper(mx.lhs(), mx.type())) + " in place of " + print(mx));
      st.fresh({{x}, {&gamma}, {p1.succedent}, {mx.lhs()}});
      return done(std::move(gamma), p1.succedent);
    }

    // ---- form ------------------------------------------------------------
    case RuleId::Tm: {
      st.arity(0, 2);
      Construction x = st.construction(1);
      st.simple(x, "the trivial match operand");
      Type t = type_of(x, sig);
      return done(st.set(0), Match(x, t, x));
    }
    case RuleId::LambdaInst: {
      st.arity(1, 1);
      const Variable f = st.variable(0);
      const Sequent& p = st.premise(0);
      Match mf = st.discharged(p.antecedent, f, [](const Match& m) { return m.lhs().is_abstraction(); },
                               "abstraction match");
      MatchSet gamma = without(p.antecedent, mf);
      st.fresh({{f}, {&gamma}, {p.succedent}, {mf.lhs()}});
      return done(std::move(gamma), p.succedent);
    }
    case RuleId::BetaCon: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.proper(m, "the premise succedent");
      const Construction& a = m.lhs();
      if (!a.is_application() || !a.op().is_abstraction())
        st.shape("premise must be a redex [\\x.Y](X) , got " + print(a));
      const Construction& lam = a.op();
      if (lam.binders().size() != a.operands().size()) st.shape("redex arity mismatch");
      std::vector<Binding> b;
      for (std::size_t i = 0; i < lam.binders().size(); ++i) b.emplace_back(lam.binders()[i], a.operands()[i]);
      return done(st.premise(0).antecedent, Match(substitute(lam.body(), b, &sig), m.type(), m.rhs()));
    }
    case RuleId::BetaExp: {
      st.at_least(2);
      if (st.param_count() != 1) st.shape("expects one parameter (the abstraction)");
      Construction lam = st.construction(0);
      if (!lam.is_abstraction()) st.shape("parameter must be an abstraction");
      if (st.premise_count() != lam.binders().size() + 1)
        st.shape("expects one properness premise per binder");
      const Sequent& main = st.premise(0);
      st.proper(main.succedent, "the main premise");
      std::vector<Construction> operands;
      std::vector<Binding> b;
      for (std::size_t i = 0; i < lam.binders().size(); ++i) {
        const Sequent& side = st.premise(i + 1);
        st.proper(side.succedent, "side premise " + std::to_string(i + 1));
        if (!std::includes(main.antecedent.begin(), main.antecedent.end(), side.antecedent.begin(),
                           side.antecedent.end()))
          st.shape("side premise antecedents must be contained in the main antecedent");
        operands.push_back(side.succedent.lhs());
        b.emplace_back(lam.binders()[i], side.succedent.lhs());
      }
      if (substitute(lam.body(), b, &sig) != main.succedent.lhs())
        st.shape("main premise is not the body with the operands substituted");
      return done(main.antecedent,
                  Match(mk::app(lam, std::move(operands)), main.succedent.type(), main.succedent.rhs()));
    }
    case RuleId::ASubI:
    case RuleId::ASubII: {
      st.at_least(2);
      st.arity(st.premise_count(), 0);
      const Sequent& main = st.premise(0);
      st.proper(main.succedent, "the main premise");
      const Construction& a = main.succedent.lhs();
      if (!a.is_application()) st.shape("main premise must be an application");
      if (a.operands().size() + 1 != st.premise_count()) st.shape("expects one premise per operand");
      std::vector<Construction> operands;
      for (std::size_t i = 0; i < a.operands().size(); ++i) {
        const Sequent& side = st.premise(i + 1);
        st.proper(side.succedent, "side premise " + std::to_string(i + 1));
        if (!std::includes(main.antecedent.begin(), main.antecedent.end(), side.antecedent.begin(),
                           side.antecedent.end()))
          st.shape("side premise antecedents must be contained in the main antecedent");
        const Construction& from = rule == RuleId::ASubI ? side.succedent.lhs() : *side.succedent.rhs();
        if (from != a.operands()[i])
          st.shape("operand " + std::to_string(i + 1) + " is " + print(a.operands()[i]) + ", side premise has " + print(from));
        operands.push_back(rule == RuleId::ASubI ? *side.succedent.rhs() : side.succedent.lhs());
      }
      return done(main.antecedent, Match(mk::app(a.op(), std::move(operands)), main.succedent.type(), main.succedent.rhs()));
    }
    case RuleId::AInst: {
      st.arity(2, st.param_count());
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      st.proper(p1.succedent, "the first premise");
      const Construction& a = p1.succedent.lhs();
      if (!a.is_application()) st.shape("first premise must be an application");
      if (st.param_count() != a.operands().size() + 1) st.shape("expects parameters f; x1 .. xm");
      std::vector<Variable> intro;
      for (std::size_t i = 0; i < st.param_count(); ++i) intro.push_back(st.variable(i));
      MatchSet expected = p1.antecedent;
      expected.insert(Match(a.op(), type_of(a.op(), sig), Construction::variable(intro[0])));
      for (std::size_t i = 0; i < a.operands().size(); ++i)
        expected.insert(Match(a.operands()[i], type_of(a.operands()[i], sig), Construction::variable(intro[i + 1])));
      st.fresh({intro, {&p1.antecedent}, {p1.succedent, p2.succedent}, {}});
      if (p2.antecedent != expected)
        st.shape("second premise must assume F :t f and Xi :ti xi on top of the first's antecedent");
      return done(p1.antecedent, p2.succedent);
    }
    case RuleId::Ext: {
      st.arity(2, st.param_count());
      if (st.param_count() < 2) st.shape("expects parameters x1 .. xm; y");
      std::vector<Variable> xs;
      for (std::size_t i = 0; i + 1 < st.param_count(); ++i) xs.push_back(st.variable(i));
      const Variable y = st.variable(st.param_count() - 1);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      auto split = [&](const Match& m, const std::string& what) {
        if (!m.rhs() || !m.rhs()->is_variable() || m.rhs()->as_variable() != y)
          st.shape(what + " must have right-hand side '" + y.name + "'");
        const Construction& a = m.lhs();
        if (!a.is_application() || !is_simple(a.op()) || a.operands().size() != xs.size())
          st.shape(what + " must apply a variable or acquisition to x1 .. xm");
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (!a.operands()[i].is_variable() || a.operands()[i].as_variable() != xs[i])
            st.shape(what + " must apply to exactly x1 .. xm");
        return a.op();
      };
      Construction g = split(p1.succedent, "first premise succedent");
      Construction f = split(p2.succedent, "second premise succedent");
      Match fx = p2.succedent;
      Match gx = p1.succedent;
      if (!p1.antecedent.count(fx)) st.shape("first premise must assume " + print(fx));
      MatchSet gamma = without(p1.antecedent, fx);
      if (p2.antecedent != with(gamma, {gx})) st.shape("second premise must assume " + print(gx) + " on the same context");
      std::vector<Variable> intro = xs;
      intro.push_back(y);
      st.fresh({intro, {&gamma}, {}, {f, g}});
      return done(std::move(gamma), Match(g, type_of(g, sig), f));
    }
    case RuleId::AImpBot: {
      if (!config_.enable_a_imp_bot) fail(ErrorKind::Gated, "a-imp-bot is disabled (enable it explicitly)");
      st.arity(2, st.param_count());
      if (st.param_count() < 2) st.shape("expects parameters x1 .. xm; type t");
      std::vector<Variable> xs;
      for (std::size_t i = 0; i + 1 < st.param_count(); ++i) xs.push_back(st.variable(i));
      const Type& tau = st.type(st.param_count() - 1);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      st.proper(p1.succedent, "the first premise");
      if (!p1.succedent.rhs()->is_variable()) st.shape("first premise must be F :phi f with f a variable");
      MatchSet gamma = p2.antecedent;
      std::vector<Construction> operands;
      std::vector<Type> taus;
      for (const auto& x : xs) {
        Match m = st.discharged(p2.antecedent, x, [](const Match&) { return true; }, "match");
        gamma.erase(m);
        operands.push_back(m.lhs());
        taus.push_back(m.type());
      }
      if (gamma != p1.antecedent) st.shape("premises must share the context");
      if (p1.succedent.type() == Type::function(taus, tau))
        st.shape("condition violated: phi must differ from (t1..tm)->t");
      st.fresh({xs, {&gamma}, {p2.succedent}, {}});
      return done(std::move(gamma), Match::improper(mk::app(p1.succedent.lhs(), std::move(operands)), tau));
    }

    // ---- operational -----------------------------------------------------
    case RuleId::NotI: {
      st.arity(2, 1);
      const Match& m = st.match(0);
      st.simple(m.lhs(), "the negated operand");
      if (!m.type().is(BaseType::Truth) || m.is_improper()) st.shape("the assumption must be o :o o'");
      st.same_antecedent(st.premise(0), st.premise(1), "premises");
      if (!st.premise(0).antecedent.count(m)) st.shape("premises must assume " + print(m));
      if (!patently_incompatible(st.premise(0).succedent, st.premise(1).succedent))
        fail(ErrorKind::Incompatibility, "not-i: " + print(st.premise(0).succedent) + " and " +
                                             print(st.premise(1).succedent) + " are not patently incompatible");
      return done(without(st.premise(0).antecedent, m), Match(mk::not_(m.lhs()), Type::truth(), m.rhs()));
    }
    case RuleId::Ra: {
      st.arity(2, 1);
      Construction o = st.construction(0);
      st.simple(o, "the case operand");
      if (type_of(o, sig) != Type::truth()) st.shape("the case operand must be of type o");
      Match mt(o, Type::truth(), mk::T());
      Match mf(o, Type::truth(), mk::F());
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      if (p1.succedent != p2.succedent) st.shape("premises must have the same succedent");
      if (!p1.antecedent.count(mt) || !p2.antecedent.count(mf))
        st.shape("premises must assume " + print(mt) + " and " + print(mf));
      MatchSet gamma = without(p1.antecedent, mt);
      if (gamma != without(p2.antecedent, mf)) st.shape("premises must share the context");
      return done(std::move(gamma), p1.succedent);
    }
    case RuleId::NotInst:
    case RuleId::ImpInst:
    case RuleId::SomeInst:
    case RuleId::AllInst:
    case RuleId::EqInst: {
      st.arity(1, 1);
      const Variable o = st.variable(0);
      if (o.type != Type::truth()) st.shape("the instantiated variable must be of type o");
      std::string_view op;
      std::size_t n = 1;
      bool abstraction_ok = false;
      switch (rule) {
        case RuleId::NotInst: op = builtin::kNot; break;
        case RuleId::ImpInst: op = builtin::kImp; n = 2; break;
        case RuleId::SomeInst: op = builtin::kSome; abstraction_ok = true; break;
        case RuleId::AllInst: op = builtin::kAll; abstraction_ok = true; break;
        default: op = builtin::kEq; n = 2; break;
      }
      const Sequent& p = st.premise(0);
      auto shape_ok = [&](const Match& m) {
        const Construction& a = m.lhs();
        if (!a.is_application() || !a.op().is_builtin(op) || a.operands().size() != n) return false;
        return std::all_of(a.operands().begin(), a.operands().end(),
                           [&](const Construction& c) { return inst_operand(c, abstraction_ok); });
      };
      Match mo = st.discharged(p.antecedent, o, shape_ok, "'" + std::string(op) + "' match");
      MatchSet gamma = without(p.antecedent, mo);
      st.fresh({{o}, {&gamma}, {p.succedent}, {mo.lhs()}});
      return done(std::move(gamma), p.succedent);
    }
    case RuleId::ImpI: {
      st.arity(1, 1);
      Construction o = st.construction(0);
      st.simple(o, "the antecedent operand");
      const Sequent& p = st.premise(0);
      Match assumption = t_match(o);
      if (!p.antecedent.count(assumption)) st.shape("premise must assume " + print(assumption));
      st.is_true(p.succedent, "the premise succedent");
      st.simple(p.succedent.lhs(), "the consequent operand");
      return done(without(p.antecedent, assumption), t_match(mk::imp(o, p.succedent.lhs())));
    }
    case RuleId::ImpE: {
      st.arity(2, 0);
      st.same_antecedent(st.premise(0), st.premise(1), "premises");
      st.is_true(st.premise(0).succedent, "the first premise");
      st.is_true(st.premise(1).succedent, "the second premise");
      const auto& ops = st.builtin_app(st.premise(0).succedent.lhs(), builtin::kImp, 2, "the first premise");
      if (ops[0] != st.premise(1).succedent.lhs()) st.shape("second premise must assert the antecedent " + print(ops[0]));
      return done(st.premise(0).antecedent, t_match(ops[1]));
    }
    case RuleId::SomeI: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.is_true(m, "the premise");
      if (!m.lhs().is_application() || m.lhs().operands().size() != 1) st.shape("premise must be C(X) :o 'T");
      const Construction& c = m.lhs().op();
      Type tau = class_element_type(c, sig, st);
      return done(st.premise(0).antecedent, t_match(mk::some(tau, c)));
    }
    case RuleId::SomeE: {
      st.arity(2, 1);
      const Variable x = st.variable(0);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      st.is_true(p1.succedent, "the first premise");
      const Construction& c = st.builtin_app(p1.succedent.lhs(), builtin::kSome, 1, "the first premise")[0];
      Match witness = t_match(mk::app(c, {Construction::variable(x)}));
      st.fresh({{x}, {&p1.antecedent}, {p2.succedent}, {c}});
      if (p2.antecedent != with(p1.antecedent, {witness}))
        st.shape("second premise must assume " + print(witness) + " on the first's context");
      return done(p1.antecedent, p2.succedent);
    }
    case RuleId::AllI: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.is_true(m, "the premise");
      if (!m.lhs().is_application() || m.lhs().operands().size() != 1 || !m.lhs().operands()[0].is_variable())
        st.shape("premise must be C(x) :o 'T with x a variable");
      const Construction& c = m.lhs().op();
      const Variable x = m.lhs().operands()[0].as_variable();
      Type tau = class_element_type(c, sig, st);
      st.fresh({{x}, {&st.premise(0).antecedent}, {}, {c}});
      return done(st.premise(0).antecedent, t_match(mk::all(tau, c)));
    }
    case RuleId::AllE: {
      st.arity(1, 1);
      Construction x = st.construction(0);
      st.simple(x, "the instance");
      st.is_true(st.premise(0).succedent, "the premise");
      const Construction& c = st.builtin_app(st.premise(0).succedent.lhs(), builtin::kAll, 1, "the premise")[0];
      return done(st.premise(0).antecedent, t_match(mk::app(c, {x})));
    }
    case RuleId::EqI: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.proper(m, "the premise");
      return done(st.premise(0).antecedent, t_match(mk::eq(m.type(), m.lhs(), *m.rhs())));
    }
    case RuleId::EqE: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.is_true(m, "the premise");
      const auto& ops = st.builtin_app(m.lhs(), builtin::kEq, 2, "the premise");
      st.simple(ops[1], "the second identity operand");
      return done(st.premise(0).antecedent, Match(ops[0], *m.lhs().op().instance(), ops[1]));
    }
    case RuleId::IotaI: {
      st.arity(2, 1);
      const Variable y = st.variable(0);
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      st.is_true(p1.succedent, "the first premise");
      const Construction& a = p1.succedent.lhs();
      if (!a.is_application() || a.operands().size() != 1) st.shape("first premise must be C(x) :o 'T");
      const Construction& c = a.op();
      const Construction& x = a.operands()[0];
      st.simple(x, "the described object");
      Type tau = class_element_type(c, sig, st);
      Match member = t_match(mk::app(c, {Construction::variable(y)}));
      if (p2.antecedent != with(p1.antecedent, {member}))
        st.shape("second premise must assume " + print(member) + " on the first's context");
      if (p2.succedent != Match(Construction::variable(y), tau, x))
        st.shape("second premise must conclude " + print(Match(Construction::variable(y), tau, x)));
      st.fresh({{y}, {&p1.antecedent}, {}, {c, x}});
      return done(p1.antecedent, Match(mk::the(tau, c), tau, x));
    }
    case RuleId::IotaE: {
      st.arity(1, 0);
      const Match& m = st.premise(0).succedent;
      st.proper(m, "the premise");
      const Construction& c = st.builtin_app(m.lhs(), builtin::kThe, 1, "the premise")[0];
      return done(st.premise(0).antecedent, t_match(mk::app(c, {*m.rhs()})));
    }
    case RuleId::IotaInst: {
      st.arity(2, 2);
      const Variable x = st.variable(0);
      const Variable o = st.variable(1);
      if (o.type != Type::truth()) st.shape("the instantiated truth variable must be of type o");
      const Sequent& p1 = st.premise(0);
      const Sequent& p2 = st.premise(1);
      Match mx = st.discharged(
          p1.antecedent, x,
          [](const Match& m) {
            return m.lhs().is_application() && m.lhs().op().is_builtin(builtin::kThe) && m.lhs().operands().size() == 1;
          },
          "description match");
      MatchSet gamma = without(p1.antecedent, mx);
      const Construction& c = mx.lhs().operands()[0];
      Match membership(mk::app(c, {Construction::variable(x)}), Type::truth(), Construction::variable(o));
      if (p2.antecedent != gamma || p2.succedent != membership)
        st.shape("second premise must be the context proving " + print(membership));
      st.fresh({{x, o}, {&gamma}, {p1.succedent}, {c}});
      return done(std::move(gamma), p1.succedent);
    }
  }
  fail(ErrorKind::Shape, "unknown rule");
}

Theorem Kernel::replay(const Theorem& t) const {
  std::map<const Theorem::Node*, Theorem> memo;
  auto go = [&](auto&& self, const Theorem& th) -> Theorem {
    if (auto it = memo.find(th.node_.get()); it != memo.end()) return it->second;
    Theorem out = [&] {
      if (!th.rule_id()) return assume(th.sequent(), th.hypothesis());
      std::vector<Theorem> premises;
      for (const auto& p : th.premises()) premises.push_back(self(self, p));
      return apply(*th.rule_id(), premises, th.params());
    }();
    if (out.sequent() != th.sequent())
      fail(ErrorKind::Replay, std::string(th.rule()) + " replays to " + print(out.sequent()) + " instead of " +
                                  print(th.sequent()));
    memo.emplace(th.node_.get(), out);
    return out;
  };
  return go(go, t);
}

}  // namespace ttstar
