#include "ttstar/derived.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

namespace {

struct DerivedInfo {
  DerivedRuleId id;
  std::string_view name;
};

constexpr std::array<DerivedInfo, 11> kDerived{{
    {DerivedRuleId::Eg, "eg"},
    {DerivedRuleId::LNotIii, "l-not-iii"},
    {DerivedRuleId::LAppBot, "l-app-bot"},
    {DerivedRuleId::Si1, "si1"},
    {DerivedRuleId::Si2, "si2"},
    {DerivedRuleId::LDescE, "l-desc-e"},
    {DerivedRuleId::Spr1, "spr1"},
    {DerivedRuleId::Spr2, "spr2"},
    {DerivedRuleId::Spr3, "spr3"},
    {DerivedRuleId::LDescBotApp, "l-desc-bot-app"},
    {DerivedRuleId::LSigmaDescBotApp, "l-sigma-desc-bot-app"},
}};

}  // namespace

const std::vector<DerivedRuleId>& all_derived_rules() {
  static const std::vector<DerivedRuleId> rules = [] {
    std::vector<DerivedRuleId> out;
    for (const auto& r : kDerived) out.push_back(r.id);
    return out;
  }();
  return rules;
}

std::string_view derived_rule_name(DerivedRuleId id) { return kDerived[static_cast<std::size_t>(id)].name; }

std::optional<DerivedRuleId> derived_rule_from_name(std::string_view name) {
  for (const auto& r : kDerived)
    if (r.name == name) return r.id;
  return std::nullopt;
}

namespace {

Variable as_var(const Construction& c) { return c.as_variable(); }
Construction v(const Variable& x) { return Construction::variable(x); }
Match t_match(Construction lhs) { return Match(std::move(lhs), Type::truth(), mk::T()); }
Match f_match(Construction lhs) { return Match(std::move(lhs), Type::truth(), mk::F()); }

// Records every primitive application and tags kernel failures with the
// derived rule and template step that raised them.
class Builder {
 public:
  Builder(const Kernel& k, std::string_view rule) : k_(k), rule_(rule) {}

  const Signature& sig() const { return k_.signature(); }

  Theorem ap(RuleId r, std::vector<Theorem> premises, Params params) {
    try {
      Theorem t = k_.apply(r, premises, params);
      trace_.push_back(t);
      return t;
    } catch (const Error& e) {
      fail(e.kind(), std::string(rule_) + " (template step " + std::to_string(trace_.size() + 1) + ", " +
                         std::string(rule_name(r)) + "): " + e.what());
    }
  }

  Theorem ax(const MatchSet& gamma, const Match& m) { return ap(RuleId::Ax, {}, {gamma, m}); }
  Theorem wr(const Theorem& t, const MatchSet& delta) { return ap(RuleId::Wr, {t}, {delta}); }
  Theorem tm(const MatchSet& gamma, const Construction& x) { return ap(RuleId::Tm, {}, {gamma, x}); }

  [[noreturn]] void shape(const std::string& what) const {
    fail(ErrorKind::Shape, std::string(rule_) + ": " + what);
  }

  std::vector<Theorem>& trace() { return trace_; }

 private:
  const Kernel& k_;
  std::string_view rule_;
  std::vector<Theorem> trace_;
};

class Fresh {
 public:
  Fresh(const std::vector<Theorem>& premises, const Params& params) {
    for (const auto& p : premises) collect_names(p.sequent(), used_);
    for (const auto& prm : params) {
      if (const auto* c = std::get_if<Construction>(&prm)) collect_names(*c, used_);
      if (const auto* m = std::get_if<Match>(&prm)) collect_names(Sequent({}, *m), used_);
      if (const auto* x = std::get_if<Variable>(&prm)) used_.insert(x->name);
      if (const auto* s = std::get_if<MatchSet>(&prm))
        for (const auto& m : *s) collect_names(Sequent({}, m), used_);
    }
  }

  Variable operator()(std::string_view base, Type t) {
    std::string name = fresh_name(base, used_);
    used_.insert(name);
    return Variable{name, std::move(t)};
  }

  // A requested binder name, or a fresh one.
  Variable binder(const std::optional<Variable>& given, std::string_view base, const Type& t, Builder& b) {
    if (!given) return (*this)(base, t);
    if (given->type != t) b.shape("binder " + given->name + " must have type " + print(t));
    used_.insert(given->name);
    return *given;
  }

 private:
  std::set<std::string> used_;
};

std::optional<Variable> binder_param(const Params& params, Builder& b) {
  if (params.empty()) return std::nullopt;
  if (params.size() > 1) b.shape("expects at most one parameter (the conclusion's binder)");
  if (const auto* x = std::get_if<Variable>(&params[0])) return *x;
  b.shape("parameter must be a binder x:t");
}

void premise_count(const std::vector<Theorem>& premises, std::size_t n, Builder& b) {
  if (premises.size() != n)
    b.shape("expects " + std::to_string(n) + " premise(s), got " + std::to_string(premises.size()));
}

// Single-operand application F(X); returns {F, X}.
std::pair<Construction, Construction> unary_app(const Construction& c, Builder& b, const std::string& what) {
  if (!c.is_application() || c.operands().size() != 1) b.shape(what + " must be an application F(X), got " + print(c));
  return {c.op(), c.operands()[0]};
}

// ---------------------------------------------------------------------------
// Expansions. Each takes its premises already checked for count; context
// names follow the corpus scripts where they are fixed there.

// Γ ⟶ Xi :ti !  gives  Γ ⟶ A :t !  for an application A with operand Xi.
Theorem l_app_bot(Builder& b, Fresh& fresh, const Theorem& p, const Construction& a) {
  const Match& m = p.sequent().succedent;
  if (!m.is_improper()) b.shape("premise succedent must be X :t !");
  if (!a.is_application()) b.shape("parameter must be an application, got " + print(a));
  if (std::find(a.operands().begin(), a.operands().end(), m.lhs()) == a.operands().end())
    b.shape(print(m.lhs()) + " is not an operand of " + print(a));
  const MatchSet& gamma = p.sequent().antecedent;
  const Type tau = type_of(a, b.sig());
  const Variable y = fresh("y", tau);
  const Match ay(a, tau, v(y));
  const Match abot = Match::improper(a, tau);
  const Variable f = fresh("f", type_of(a.op(), b.sig()));
  std::vector<Variable> xs;
  MatchSet ctx = with(gamma, {ay, Match(a.op(), f.type, v(f))});
  std::optional<Match> xi;
  for (const auto& x : a.operands()) {
    xs.push_back(fresh("x", type_of(x, b.sig())));
    Match mx(x, xs.back().type, v(xs.back()));
    ctx.insert(mx);
    if (!xi && x == m.lhs()) xi = mx;
  }
  Theorem s1 = b.wr(p, ctx);
  Theorem s2 = b.ax(ctx, *xi);
  Theorem s3 = b.ap(RuleId::Efq, {s2, s1}, {abot});
  Theorem s4 = b.ax(gamma, ay);
  Params inst{f};
  for (const auto& x : xs) inst.push_back(x);
  Theorem s5 = b.ap(RuleId::AInst, {s4, s3}, inst);
  Theorem s6 = b.ax(gamma, abot);
  return b.ap(RuleId::Exh, {s6, s5}, {y});
}

// [\o.o](S) transfer: from Δ ⟶ o :o r and Δ ⟶ S :o o, conclude Δ ⟶ S :o r
// (identity-redex a-sub).
Theorem transfer(Builder& b, const Variable& o, const Theorem& o_is_r, const Theorem& s_is_o, const Theorem& o_is_o) {
  Construction id = mk::lam({o}, v(o));
  Theorem e = b.ap(RuleId::BetaExp, {o_is_r, o_is_o}, {id});
  Theorem s = b.ap(RuleId::ASubII, {e, s_is_o}, {});
  return b.ap(RuleId::BetaCon, {s}, {});
}

// Γ ⟶ 'not(O) :o 'T  gives  Γ ⟶ O :o 'F.
Theorem l_not_iii(Builder& b, Fresh& fresh, const Theorem& p) {
  const Match& m = p.sequent().succedent;
  if (!m.rhs() || !m.rhs()->is_builtin(builtin::kTrue) || !m.lhs().is_application() ||
      !m.lhs().op().is_builtin(builtin::kNot) || m.lhs().operands().size() != 1)
    b.shape("premise succedent must be 'not(O) :o 'T");
  const MatchSet& gamma = p.sequent().antecedent;
  const Construction o_big = m.lhs().operands()[0];
  const Variable f = fresh("f", type_of(m.lhs().op(), b.sig()));
  const Variable o = fresh("o", Type::truth());
  const Match mo(o_big, Type::truth(), v(o));
  const MatchSet delta = with(gamma, {Match(m.lhs().op(), f.type, v(f)), mo});
  const Match ot = t_match(v(o));
  const Match of = f_match(v(o));
  const Match goal = f_match(o_big);

  Theorem s1 = b.wr(p, delta);
  Theorem s2 = b.ax(delta, mo);
  Theorem s3 = b.ap(RuleId::ASubI, {s1, s2}, {});  // Δ ⟶ 'not(o) :o 'T
  // case o :o 'T: contradiction between 'not(o) :o 'T and 'not(o) :o 'F
  const MatchSet dt = with(delta, {ot});
  Theorem s4 = b.ax(with(delta, {of}), ot);
  Theorem s5 = b.ax(dt, of);
  Theorem s6 = b.ap(RuleId::NotI, {s4, s5}, {of});
  Theorem s7 = b.wr(s3, {ot});
  Theorem s8 = b.ap(RuleId::Efq, {s7, s6}, {goal});
  // case o :o 'F: O carries o's value
  const MatchSet df = with(delta, {of});
  Theorem s9 = b.ax(delta, of);
  Theorem s10 = b.tm(df, v(o));
  Theorem s12 = b.ax(df, mo);
  Theorem s14 = transfer(b, o, s9, s12, s10);
  Theorem s15 = b.ap(RuleId::Ra, {s8, s14}, {v(o)});
  return b.ap(RuleId::AInst, {p, s15}, {f, o});
}

// Γ ⟶ C(X) :o 'T  gives  Γ ⟶ 'some<t>(\x. C(x)) :o 'T.
Theorem eg(Builder& b, Fresh& fresh, const Theorem& p, const std::optional<Variable>& given) {
  const Match& m = p.sequent().succedent;
  if (!m.rhs() || !m.rhs()->is_builtin(builtin::kTrue)) b.shape("premise succedent must be C(X) :o 'T");
  auto [c, x_big] = unary_app(m.lhs(), b, "premise succedent");
  const MatchSet& gamma = p.sequent().antecedent;
  const Type tau = type_of(x_big, b.sig());
  const Variable x = fresh.binder(given, "x", tau, b);
  const Variable f = fresh("f", type_of(c, b.sig()));
  const Match mx(x_big, tau, v(x));
  Theorem s1 = b.wr(p, {mx});
  Theorem s2 = b.ax(gamma, mx);
  Theorem s3 = b.ap(RuleId::ASubI, {s1, s2}, {});
  Theorem s4 = b.tm(gamma, v(x));
  Theorem s5 = b.ap(RuleId::BetaExp, {s3, s4}, {mk::lam({x}, mk::app(c, {v(x)}))});
  Theorem s6 = b.ap(RuleId::SomeI, {s5}, {});
  Theorem s7 = b.wr(s6, {Match(c, f.type, v(f))});
  return b.ap(RuleId::AInst, {p, s7}, {f, x});
}

// Γ ⟶ 'eq<t>('the<t>(C), x) :o 'T  gives  Γ ⟶ C(x) :o 'T, contracted when C
// is an abstraction.
Theorem desc_e(Builder& b, const Theorem& p) {
  Theorem s1 = b.ap(RuleId::EqE, {p}, {});
  const Construction& lhs = s1.sequent().succedent.lhs();
  if (!lhs.is_application() || !lhs.op().is_builtin(builtin::kThe))
    b.shape("premise must identify a description 'the<t>(C)");
  Theorem s2 = b.ap(RuleId::IotaE, {s1}, {});
  if (!lhs.operands()[0].is_abstraction()) return s2;
  return b.ap(RuleId::BetaCon, {s2}, {});
}

// Γ ⟶ F(D) :o o  gives  Γ ⟶ 'some<t>(\x. 'eq<t>(D, x)) :o 'T.
Theorem spr1(Builder& b, Fresh& fresh, const Theorem& p, const std::optional<Variable>& given) {
  const Match& m = p.sequent().succedent;
  if (!m.is_proper() || !m.type().is(BaseType::Truth)) b.shape("premise succedent must be F(D) :o o with o proper");
  auto [f_big, d] = unary_app(m.lhs(), b, "premise succedent");
  const MatchSet& gamma = p.sequent().antecedent;
  const Type tau = type_of(d, b.sig());
  const Variable x = fresh.binder(given, "x", tau, b);
  const Variable f = fresh("f", type_of(f_big, b.sig()));
  const Match m2(d, tau, v(x));
  Theorem s1 = b.ax(gamma, m2);
  Theorem s2 = b.ap(RuleId::EqI, {s1}, {});
  Theorem s3 = b.tm(gamma, v(x));
  Theorem s4 = b.ap(RuleId::BetaExp, {s2, s3}, {mk::lam({x}, mk::eq(tau, d, v(x)))});
  Theorem s5 = b.ap(RuleId::SomeI, {s4}, {});
  Theorem s6 = b.wr(s5, {Match(f_big, f.type, v(f))});
  return b.ap(RuleId::AInst, {p, s6}, {f, x});
}

// 'some<t>(\x. 'eq<t>(A, B)) where one operand is the bound x; returns the
// other operand.
Construction existence_subject(const Construction& s, bool x_first, Builder& b) {
  auto bad = [&] {
    b.shape("expected an existence ascription 'some<t>(\\x. 'eq<t>(" + std::string(x_first ? "x, D" : "D, x") +
            ")), got " + print(s));
  };
  if (!s.is_application() || !s.op().is_builtin(builtin::kSome) || s.operands().size() != 1) bad();
  const Construction& lam = s.operands()[0];
  if (!lam.is_abstraction() || lam.binders().size() != 1) bad();
  const Construction& body = lam.body();
  if (!body.is_application() || !body.op().is_builtin(builtin::kEq) || body.operands().size() != 2) bad();
  const Construction& bound = body.operands()[x_first ? 0 : 1];
  const Construction& d = body.operands()[x_first ? 1 : 0];
  if (!bound.is_variable() || bound.as_variable() != lam.binders()[0]) bad();
  if (occurs_free(lam.binders()[0].name, d)) bad();
  return d;
}

// Γ ⟶ 'not('some<t>(\x. 'eq<t>(D, x))) :o 'T  gives  Γ ⟶ A :t ! for an
// application A with operand D.
Theorem spr2(Builder& b, Fresh& fresh, const Theorem& p, const Construction& a) {
  const Match& m = p.sequent().succedent;
  if (!m.rhs() || !m.rhs()->is_builtin(builtin::kTrue) || !m.lhs().is_application() ||
      !m.lhs().op().is_builtin(builtin::kNot) || m.lhs().operands().size() != 1)
    b.shape("premise succedent must be 'not('some<t>(\\x. 'eq<t>(D, x))) :o 'T");
  const Construction s = m.lhs().operands()[0];
  const Construction d = existence_subject(s, false, b);
  const Construction& lam = s.operands()[0];
  const MatchSet& gamma = p.sequent().antecedent;
  const Type tau = type_of(d, b.sig());
  const Variable o = fresh("o", Type::truth());
  const Variable x = fresh("x", tau);
  const Match m1(s, Type::truth(), v(o));
  const Match m2(d, tau, v(x));

  // left branch: the existence ascription is false
  Theorem d1 = b.ax(gamma, m1);
  Theorem s1 = b.wr(p, {m1});
  Theorem s3 = b.ap(RuleId::ASubI, {s1, d1}, {});  // 'not(o) :o 'T
  Theorem s4 = l_not_iii(b, fresh, s3);           // o :o 'F
  Theorem s5 = b.tm(gamma, v(o));
  Theorem s6 = b.wr(s5, {m1});
  Theorem s9 = transfer(b, o, s4, d1, s6);  // S :o 'F
  Theorem s10 = b.ap(RuleId::SomeInst, {s9}, {o});
  Theorem s11 = b.wr(s10, {m2});
  // middle branch: per absurdum D :t x
  Theorem s12 = b.ax(gamma, m2);
  Theorem s13 = b.ap(RuleId::EqI, {s12}, {});
  Theorem s14 = b.tm(gamma, v(x));
  Theorem s15 = b.wr(s14, {m2});
  Theorem s16 = b.ap(RuleId::BetaExp, {s13, s15}, {lam});
  Theorem s17 = b.ap(RuleId::SomeI, {s16}, {});
  Theorem s18 = b.ap(RuleId::Efq, {s11, s17}, {Match::improper(d, tau)});
  Theorem s19 = b.ax(gamma, Match::improper(d, tau));
  Theorem s20 = b.ap(RuleId::Exh, {s19, s18}, {x});
  return l_app_bot(b, fresh, s20, a);
}

// Γ ⟶ F(D) :o !  and  Γ ⟶ F(y) :o o  give  Γ ⟶ D :t !.
Theorem lemma1(Builder& b, const Theorem& p1, const Theorem& p2) {
  const Match& m1 = p1.sequent().succedent;
  const Match& m2 = p2.sequent().succedent;
  if (!m1.is_improper()) b.shape("first premise succedent must be F(D) :o !");
  auto [f_big, d] = unary_app(m1.lhs(), b, "first premise succedent");
  auto [f2, y_c] = unary_app(m2.lhs(), b, "second premise succedent");
  if (f2 != f_big || !y_c.is_variable() || !m2.is_proper() || m2.type() != m1.type())
    b.shape("second premise succedent must be " + print(f_big) + "(y) :" + print(m1.type()) + " o with y a variable");
  if (p1.sequent().antecedent != p2.sequent().antecedent) b.shape("premises must share the context");
  const MatchSet& gamma = p1.sequent().antecedent;
  const Variable y = as_var(y_c);
  const Type tau = type_of(d, b.sig());
  const Match dy(d, tau, v(y));
  const Match dbot = Match::improper(d, tau);
  Theorem s1 = b.wr(p1, {dy});
  Theorem s2 = b.wr(p2, {dy});
  Theorem s3 = b.ax(gamma, dy);
  Theorem s4 = b.ap(RuleId::ASubII, {s2, s3}, {});
  Theorem s5 = b.ap(RuleId::Efq, {s1, s4}, {dbot});
  Theorem s6 = b.ax(gamma, dbot);
  return b.ap(RuleId::Exh, {s6, s5}, {y});
}

// Γ ⟶ D :t !  gives  Γ ⟶ 'some<t>(\x. 'eq<t>(x, D)) :o 'F.
Theorem lemma2(Builder& b, Fresh& fresh, const Theorem& p, const std::optional<Variable>& given) {
  const Match& m = p.sequent().succedent;
  if (!m.is_improper()) b.shape("premise succedent must be D :t !");
  const MatchSet& gamma = p.sequent().antecedent;
  const Construction d = m.lhs();
  const Type tau = m.type();
  const Variable x = fresh.binder(given, "x", tau, b);
  const Variable o = fresh("o", Type::truth());
  const Construction lam = mk::lam({x}, mk::eq(tau, v(x), d));
  const Construction s = mk::some(tau, lam);
  const Match m1(s, Type::truth(), v(o));
  const Match m2 = t_match(v(o));
  const Match m3 = t_match(mk::app(lam, {v(x)}));
  const Match of = f_match(v(o));

  // D1: a witness x of the ascription contradicts D :t !
  Theorem s1 = b.wr(p, {m3});
  Theorem s2 = b.ax(gamma, m3);
  Theorem s3 = b.ap(RuleId::BetaCon, {s2}, {});  // 'eq<t>(x, D) :o 'T
  Theorem s4 = l_app_bot(b, fresh, s1, s3.sequent().succedent.lhs());
  Theorem s5 = b.ap(RuleId::Efq, {s3, s4}, {of});
  Theorem s6 = b.wr(s5, {m1, m2});
  // D2: the ascription cannot be true
  Theorem s7 = b.ax(gamma, m2);
  Theorem s8 = b.tm(gamma, v(o));
  Theorem s9 = b.wr(s8, {m2});
  Theorem s10 = b.ap(RuleId::BetaExp, {s7, s9}, {mk::lam({o}, v(o))});
  Theorem s11 = b.wr(s10, {m1});
  Theorem d_m1 = b.ax(gamma, m1);
  Theorem s12 = b.wr(d_m1, {m2});
  Theorem s13 = b.ap(RuleId::ASubII, {s11, s12}, {});
  Theorem s14 = b.ap(RuleId::BetaCon, {s13}, {});  // S :o 'T
  Theorem s15 = b.ap(RuleId::SomeE, {s14, s6}, {x});
  // so its truth value is 'F
  Theorem s16 = b.ax(gamma, of);
  Theorem s17 = b.wr(s16, {m1});
  Theorem s18 = b.ap(RuleId::Ra, {s15, s17}, {v(o)});
  Theorem s19 = b.tm(gamma, v(o));
  Theorem s20 = b.wr(s19, {m1});
  Theorem s21 = transfer(b, o, s18, d_m1, s20);  // S :o 'F
  return b.ap(RuleId::SomeInst, {s21}, {o});
}

// Substitution of identicals at the given occurrences (all when none given).
Theorem si(Builder& b, Fresh& fresh, const Theorem& p1, const Theorem& p2, const Params& params, bool office) {
  const Match& ms = p1.sequent().succedent;
  const Match& me = p2.sequent().succedent;
  if (!ms.rhs() || !ms.rhs()->is_builtin(builtin::kTrue)) b.shape("first premise succedent must be S :o 'T");
  if (!me.rhs() || !me.rhs()->is_builtin(builtin::kTrue) || !me.lhs().is_application() ||
      !me.lhs().op().is_builtin(builtin::kEq) || me.lhs().operands().size() != 2)
    b.shape("second premise succedent must be 'eq<t>(A, B) :o 'T");
  if (p1.sequent().antecedent != p2.sequent().antecedent) b.shape("premises must share the context");
  const Type tau = *me.lhs().op().instance();
  if (office) {
    if (!tau.is_function() || tau.params().size() != 1 || !tau.params()[0].is(BaseType::World))
      b.shape("identity must be between offices, type (w)->t; got " + print(tau));
  } else if (!tau.is(BaseType::Individual)) {
    b.shape("identity must be between individuals, type i; got " + print(tau));
  }
  const Construction a = me.lhs().operands()[0];
  const Construction bb = me.lhs().operands()[1];
  const Construction& s = ms.lhs();
  std::vector<Path> paths;
  for (const auto& prm : params) {
    const auto* path = std::get_if<Path>(&prm);
    if (!path) b.shape("parameters must be occurrence paths");
    auto at = subterm_at(s, *path);
    if (!at || *at != a) b.shape("no occurrence of " + print(a) + " at " + print(*path) + " in " + print(s));
    paths.push_back(*path);
  }
  if (paths.empty()) paths = occurrences(s, a);
  if (paths.empty()) b.shape(print(s) + " contains no occurrence of " + print(a));
  std::set<std::string> captured;
  for (const auto& path : paths) {
    std::set<std::string> along = binders_along(s, path);
    captured.insert(along.begin(), along.end());
  }
  for (const auto& name : captured)
    if (occurs_free(name, a) || occurs_free(name, bb))
      b.shape("occurrence lies under a binder of '" + name + "', which the identity's operands use freely");

  const Variable z = fresh("z", tau);
  Construction body = s;
  for (const auto& path : paths) body = replace_at(body, path, v(z));
  const Construction lam = mk::lam({z}, body);
  const MatchSet& gamma = p1.sequent().antecedent;
  const Variable f = fresh("f", type_of(me.lhs().op(), b.sig()));
  const Variable xa = fresh("a", tau);
  const Variable xb = fresh("b", tau);
  const Match ma(a, tau, v(xa));
  const Match mb(bb, tau, v(xb));
  const MatchSet delta = with(gamma, {Match(me.lhs().op(), f.type, v(f)), ma, mb});

  Theorem t1 = b.wr(p2, delta);
  Theorem t2 = b.ax(delta, ma);
  Theorem t3 = b.ax(delta, mb);
  Theorem t4 = b.ap(RuleId::ASubI, {t1, t2, t3}, {});  // 'eq(a, b) :o 'T
  Theorem t5 = b.ap(RuleId::EqE, {t4}, {});            // a :t b
  Theorem t6 = b.wr(p1, delta);
  Theorem t7 = b.ap(RuleId::BetaExp, {t6, t2}, {lam});
  Theorem t8 = b.ap(RuleId::ASubI, {t7, t2}, {});
  Theorem t9 = b.ap(RuleId::ASubI, {t8, t5}, {});
  Theorem t10 = b.ap(RuleId::ASubII, {t9, t3}, {});
  Theorem t11 = b.ap(RuleId::BetaCon, {t10}, {});
  return b.ap(RuleId::AInst, {p2, t11}, {f, xa, xb});
}

Construction application_param(const Params& params, Builder& b) {
  if (params.size() != 1) b.shape("expects one parameter: the application to conclude improper");
  const auto* c = std::get_if<Construction>(&params[0]);
  if (!c || !c->is_application()) b.shape("parameter must be an application");
  return *c;
}

}  // namespace

Expansion expand_derived(const Kernel& kernel, DerivedRuleId rule, const std::vector<Theorem>& premises,
                         const Params& params) {
  Builder b(kernel, derived_rule_name(rule));
  Fresh fresh(premises, params);
  Theorem out = [&]() -> Theorem {
    switch (rule) {
      case DerivedRuleId::Eg:
        premise_count(premises, 1, b);
        return eg(b, fresh, premises[0], binder_param(params, b));
      case DerivedRuleId::LNotIii:
        premise_count(premises, 1, b);
        if (!params.empty()) b.shape("takes no parameters");
        return l_not_iii(b, fresh, premises[0]);
      case DerivedRuleId::LAppBot:
        premise_count(premises, 1, b);
        return l_app_bot(b, fresh, premises[0], application_param(params, b));
      case DerivedRuleId::Si1:
      case DerivedRuleId::Si2:
        premise_count(premises, 2, b);
        return si(b, fresh, premises[0], premises[1], params, rule == DerivedRuleId::Si2);
      case DerivedRuleId::LDescE:
        premise_count(premises, 1, b);
        if (!params.empty()) b.shape("takes no parameters");
        return desc_e(b, premises[0]);
      case DerivedRuleId::Spr1:
        premise_count(premises, 1, b);
        return spr1(b, fresh, premises[0], binder_param(params, b));
      case DerivedRuleId::Spr2:
        premise_count(premises, 1, b);
        return spr2(b, fresh, premises[0], application_param(params, b));
      case DerivedRuleId::Spr3: {
        premise_count(premises, 2, b);
        auto binder = binder_param(params, b);
        Theorem d = lemma1(b, premises[0], premises[1]);
        return lemma2(b, fresh, d, binder);
      }
      case DerivedRuleId::LDescBotApp:
        premise_count(premises, 2, b);
        if (!params.empty()) b.shape("takes no parameters");
        return lemma1(b, premises[0], premises[1]);
      case DerivedRuleId::LSigmaDescBotApp:
        premise_count(premises, 1, b);
        return lemma2(b, fresh, premises[0], binder_param(params, b));
    }
    b.shape("unknown derived rule");
  }();
  return Expansion{out, std::move(b.trace())};
}

// ---------------------------------------------------------------------------
// Script replay

const StepReport* ProofReport::failure() const {
  for (const auto& s : steps)
    if (!s.ok) return &s;
  return nullptr;
}

ProofReport replay_proof(const ProofScript& script, const Theory& theory, KernelConfig config) {
  ProofReport report;
  report.name = script.name;
  Kernel kernel(theory.signature, config);
  std::map<std::string, Theorem> named;
  auto fail_with = [&](const std::string& what, std::optional<ErrorKind> kind) {
    report.ok = false;
    report.message = what;
    report.error = kind;
    return report;
  };

  for (const auto& h : script.hypotheses) {
    try {
      named.insert_or_assign(h.name, kernel.assume(h.sequent, h.name));
    } catch (const Error& e) {
      return fail_with("hypothesis " + h.name + ": " + e.what(), e.kind());
    }
  }

  std::optional<Theorem> last;
  for (const auto& step : script.steps) {
    StepReport sr;
    sr.id = step.id;
    sr.rule = step.rule;
    sr.line = step.line;
    try {
      std::vector<Theorem> premises;
      for (const auto& ref : step.premises) {
        auto it = named.find(ref);
        if (it == named.end()) fail(ErrorKind::Reference, "unknown premise '" + ref + "'");
        premises.push_back(it->second);
      }
      Theorem produced = [&] {
        if (auto r = rule_from_name(step.rule)) {
          sr.primitive_steps = 1;
          return kernel.apply(*r, premises, step.params);
        }
        if (auto d = derived_rule_from_name(step.rule)) {
          Expansion e = expand_derived(kernel, *d, premises, step.params);
          sr.primitive_steps = e.trace.size();
          return e.theorem;
        }
        fail(ErrorKind::Reference, "unknown rule '" + step.rule + "'");
      }();
      if (produced.sequent() != step.claimed)
        fail(ErrorKind::Replay, "claimed " + print(step.claimed) + " but the rule produces " + print(produced.sequent()));
      sr.ok = true;
      named.insert_or_assign(step.id, produced);
      last = produced;
      report.primitive_steps += sr.primitive_steps;
      report.steps.push_back(std::move(sr));
    } catch (const Error& e) {
      sr.ok = false;
      sr.error = e.kind();
      sr.message = e.what();
      std::string where = "step " + step.id + " (" + step.rule + ", line " + std::to_string(step.line) + "): ";
      report.steps.push_back(sr);
      return fail_with(where + e.what(), e.kind());
    }
  }
  if (!last) return fail_with("script has no steps", ErrorKind::Shape);
  try {
    report.theorem = kernel.replay(*last);
  } catch (const Error& e) {
    return fail_with(std::string("kernel-only replay: ") + e.what(), e.kind());
  }
  report.ok = true;
  return report;
}

}  // namespace ttstar
