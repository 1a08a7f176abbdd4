#include "ttstar/model.hpp"

#include <algorithm>

#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

// ---------------------------------------------------------------------------
// Values

struct Value::Node {
  Kind kind;
  BaseType base = BaseType::Truth;
  int index = 0;
  FunctionTable table;
  std::optional<Construction> quoted;
  std::string constant;
  ArgumentPath path;
  std::optional<Type> type;
};

Value Value::element(BaseType base, int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Element;
  n->base = base;
  n->index = index;
  return Value{std::move(n)};
}

Value Value::function(FunctionTable table) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->table = std::move(table);
  return Value{std::move(n)};
}

Value Value::quoted(Construction c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quoted;
  n->quoted = std::move(c);
  return Value{std::move(n)};
}

Value Value::lazy(std::string constant, ArgumentPath path, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lazy;
  n->constant = std::move(constant);
  n->path = std::move(path);
  n->type = std::move(type);
  return Value{std::move(n)};
}

Value::Kind Value::kind() const { return node_->kind; }
bool Value::is_true() const { return is_element() && base() == BaseType::Truth && index() == 0; }
bool Value::is_false() const { return is_element() && base() == BaseType::Truth && index() == 1; }
BaseType Value::base() const { return node_->base; }
int Value::index() const { return node_->index; }
const FunctionTable& Value::table() const { return node_->table; }
const Construction& Value::construction() const { return *node_->quoted; }
const std::string& Value::lazy_constant() const { return node_->constant; }
const ArgumentPath& Value::lazy_path() const { return node_->path; }
const Type& Value::lazy_type() const { return *node_->type; }

bool operator==(const Value& a, const Value& b) {
  return a.node_ == b.node_ || (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Value::Kind::Element:
      if (auto c = a.base() <=> b.base(); c != 0) return c;
      return a.index() <=> b.index();
    case Value::Kind::Function: {
      const auto& ta = a.table();
      const auto& tb = b.table();
      auto ia = ta.begin();
      auto ib = tb.begin();
      for (; ia != ta.end() && ib != tb.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        if (auto c = ia->second <=> ib->second; c != 0) return c;
      }
      return (ia != ta.end()) <=> (ib != tb.end());
    }
    case Value::Kind::Quoted: return a.construction() <=> b.construction();
    case Value::Kind::Lazy:
      if (auto c = a.lazy_constant() <=> b.lazy_constant(); c != 0) return c;
      return a.lazy_path() <=> b.lazy_path();
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Frames

std::size_t Frame::size(BaseType b) const {
  switch (b) {
    case BaseType::Truth: return 2;
    case BaseType::Individual: return individuals.size();
    case BaseType::World: return worlds.size();
  }
  return 0;
}

std::string Frame::name(BaseType b, int index) const {
  switch (b) {
    case BaseType::Truth: return index == 0 ? "T" : "F";
    case BaseType::Individual: return individuals.at(static_cast<std::size_t>(index));
    case BaseType::World: return worlds.at(static_cast<std::size_t>(index));
  }
  return {};
}

std::optional<int> Frame::index(BaseType b, std::string_view name) const {
  if (b == BaseType::Truth) {
    if (name == "T") return 0;
    if (name == "F") return 1;
    return std::nullopt;
  }
  const auto& d = b == BaseType::Individual ? individuals : worlds;
  auto it = std::find(d.begin(), d.end(), name);
  if (it == d.end()) return std::nullopt;
  return static_cast<int>(it - d.begin());
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t limit) {
  if (a == 0 || b == 0) return 0;
  if (a > limit / b) return limit + 1;
  return std::min(a * b, limit + 1);
}

std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r = saturating_mul(r, base, limit);
    if (r > limit) return r;
  }
  return r;
}

std::size_t type_size(const Type& t, const Frame& frame, std::size_t cap) {
  switch (t.kind()) {
    case Type::Kind::Base: return frame.size(t.base_type());
    case Type::Kind::Construction:
      fail(ErrorKind::UnsupportedOrder, "domain of " + print(t) + " is not enumerated");
    case Type::Kind::Function: {
      std::size_t tuples = 1;
      for (const auto& p : t.params()) tuples = saturating_mul(tuples, type_size(p, frame, cap), cap);
      if (tuples > cap) return cap + 1;
      return saturating_pow(type_size(t.result(), frame, cap) + 1, tuples, cap);
    }
  }
  return 0;
}

std::vector<Value> enumerate(const Type& t, const Frame& frame, std::size_t cap);

std::vector<Tuple> product(const std::vector<std::vector<Value>>& domains) {
  std::vector<Tuple> out{Tuple{}};
  for (const auto& d : domains) {
    std::vector<Tuple> next;
    next.reserve(out.size() * d.size());
    for (const auto& prefix : out)
      for (const auto& e : d) {
        Tuple t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Tuple> parameter_tuples(const std::vector<Type>& params, const Frame& frame, std::size_t cap) {
  std::vector<std::vector<Value>> domains;
  for (const auto& p : params) domains.push_back(enumerate(p, frame, cap));
  return product(domains);
}

std::vector<Value> enumerate(const Type& t, const Frame& frame, std::size_t cap) {
  if (t.is_function()) return enumerate_function_space(t.params(), t.result(), frame, cap);
  if (t.is_construction()) fail(ErrorKind::UnsupportedOrder, "domain of " + print(t) + " is not enumerated");
  std::vector<Value> out;
  for (std::size_t i = 0; i < frame.size(t.base_type()); ++i)
    out.push_back(Value::element(t.base_type(), static_cast<int>(i)));
  return out;
}

}  // namespace

std::vector<Value> enumerate_function_space(const std::vector<Type>& params, const Type& result,
                                            const Frame& frame, std::size_t cap) {
  const Type ft = Type::function(params, result);
  if (type_size(ft, frame, cap) > cap)
    fail(ErrorKind::SizeCap, "function space " + print(ft) + " exceeds the cap of " + std::to_string(cap));
  const auto tuples = parameter_tuples(params, frame, cap);
  const auto results = enumerate(result, frame, cap);

  // Counter over tuples, digit 0 = undefined, d > 0 = results[d - 1]; the
  // first tuple is the most significant digit.
  std::vector<std::size_t> digit(tuples.size(), 0);
  std::vector<Value> out;
  for (;;) {
    FunctionTable table;
    for (std::size_t k = 0; k < tuples.size(); ++k)
      if (digit[k] > 0) table.emplace(tuples[k], results[digit[k] - 1]);
    out.push_back(Value::function(std::move(table)));
    std::size_t k = tuples.size();
    while (k > 0) {
      --k;
      if (++digit[k] <= results.size()) break;
      digit[k] = 0;
      if (k == 0) return out;
    }
    if (tuples.empty()) return out;
  }
}

// ---------------------------------------------------------------------------
// Builtins

Value builtin_table(std::string_view name, const std::optional<Type>& instance, const Frame& frame,
                    std::size_t cap) {
  const Value T = Value::truth(true);
  const Value F = Value::truth(false);
  FunctionTable table;
  if (name == builtin::kNot) {
    table.emplace(Tuple{T}, F);
    table.emplace(Tuple{F}, T);
    return Value::function(std::move(table));
  }
  if (name == builtin::kImp) {
    for (const auto& a : {T, F})
      for (const auto& b : {T, F}) table.emplace(Tuple{a, b}, Value::truth(!(a.is_true() && b.is_false())));
    return Value::function(std::move(table));
  }
  if (!instance || !builtin::is_instantiated(name) || name == builtin::kBot)
    fail(ErrorKind::Model, "no table for builtin '" + std::string(name) + "'");
  const Type& t = *instance;
  const auto elements = enumerate(t, frame, cap);
  if (name == builtin::kEq) {
    for (const auto& a : elements)
      for (const auto& b : elements) table.emplace(Tuple{a, b}, Value::truth(a == b));
    return Value::function(std::move(table));
  }
  const auto classes = enumerate_function_space({t}, Type::truth(), frame, cap);
  for (const auto& c : classes) {
    std::size_t hits = 0;
    std::optional<Value> witness;
    for (const auto& e : elements) {
      auto it = c.table().find(Tuple{e});
      if (it != c.table().end() && it->second.is_true()) {
        ++hits;
        witness = e;
      }
    }
    if (name == builtin::kSome) table.emplace(Tuple{c}, Value::truth(hits > 0));
    else if (name == builtin::kAll) table.emplace(Tuple{c}, Value::truth(hits == elements.size()));
    else if (name == builtin::kThe && hits == 1) table.emplace(Tuple{c}, *witness);
  }
  return Value::function(std::move(table));
}

// ---------------------------------------------------------------------------
// Models

bool value_fits(const Value& v, const Type& t, const Frame& frame) {
  switch (t.kind()) {
    case Type::Kind::Base:
      return v.is_element() && v.base() == t.base_type() && v.index() >= 0 &&
             static_cast<std::size_t>(v.index()) < frame.size(t.base_type());
    case Type::Kind::Construction: return v.is_quoted();
    case Type::Kind::Function:
      if (v.is_lazy()) return v.lazy_type() == t;
      if (!v.is_function()) return false;
      for (const auto& [key, value] : v.table()) {
        if (key.size() != t.params().size()) return false;
        for (std::size_t i = 0; i < key.size(); ++i)
          if (!value_fits(key[i], t.params()[i], frame)) return false;
        if (!value_fits(value, t.result(), frame)) return false;
      }
      return true;
  }
  return false;
}

void Model::interpret(const std::string& name, Value value) {
  auto t = signature_.lookup(name, std::nullopt);
  if (!t || builtin::is_builtin(name)) fail(ErrorKind::Reference, "model interprets undeclared constant '" + name + "'");
  if (!value_fits(value, *t, frame_))
    fail(ErrorKind::Model, "value of '" + name + "' does not fit its type " + print(*t));
  interpretation_.insert_or_assign(name, std::move(value));
}

void Model::validate() const {
  if (frame_.individuals.empty() || frame_.worlds.empty())
    fail(ErrorKind::Model, "domains of i and w must be nonempty");
  for (const auto& [name, type] : signature_.constants())
    if (!interpretation_.count(name)) fail(ErrorKind::Model, "constant '" + name + "' is not interpreted");
}

std::optional<Value> Model::constant_value(const std::string& name) const {
  auto it = interpretation_.find(name);
  if (it == interpretation_.end()) fail(ErrorKind::Model, "constant '" + name + "' is not interpreted");
  return it->second;
}

std::optional<Value> Model::apply_constant(const std::string& name, const ArgumentPath& path) const {
  std::optional<Value> cur = constant_value(name);
  for (const auto& args : path) {
    if (!cur || !cur->is_function()) return std::nullopt;
    auto it = cur->table().find(args);
    if (it == cur->table().end()) return std::nullopt;
    cur = it->second;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Evaluation

std::size_t Evaluator::domain_size(const Type& t) const { return type_size(t, frame_, cap_); }

std::vector<Value> Evaluator::domain(const Type& t) const {
  if (auto it = domain_cache_.find(t); it != domain_cache_.end()) return it->second;
  auto d = enumerate(t, frame_, cap_);
  domain_cache_.emplace(t, d);
  return d;
}

Value Evaluator::materialize(const Value& v) const {
  switch (v.kind()) {
    case Value::Kind::Element:
    case Value::Kind::Quoted: return v;
    case Value::Kind::Function: {
      bool nested = std::any_of(v.table().begin(), v.table().end(), [](const auto& e) {
        return e.second.is_lazy() || e.second.is_function();
      });
      if (!nested) return v;
      FunctionTable table;
      for (const auto& [key, value] : v.table()) table.emplace(key, materialize(value));
      return Value::function(std::move(table));
    }
    case Value::Kind::Lazy: {
      const Type& t = v.lazy_type();
      FunctionTable table;
      for (const auto& args : parameter_tuples(t.params(), frame_, cap_)) {
        ArgumentPath path = v.lazy_path();
        path.push_back(args);
        if (auto r = interp_.apply_constant(v.lazy_constant(), path)) table.emplace(args, materialize(*r));
      }
      return Value::function(std::move(table));
    }
  }
  return v;
}

EvalResult Evaluator::apply(const Value& f, const Tuple& args) const {
  if (f.is_lazy()) {
    ArgumentPath path = f.lazy_path();
    Tuple key;
    key.reserve(args.size());
    for (const auto& a : args) key.push_back(materialize(a));
    path.push_back(std::move(key));
    auto r = interp_.apply_constant(f.lazy_constant(), path);
    return EvalResult{r};
  }
  if (!f.is_function()) fail(ErrorKind::Type, "application of a non-function value");
  Tuple key;
  key.reserve(args.size());
  for (const auto& a : args) key.push_back(materialize(a));
  auto it = f.table().find(key);
  if (it == f.table().end()) return EvalResult::improper();
  return EvalResult{it->second};
}

EvalResult Evaluator::apply_builtin(const std::string& name, const Type& instance, const Tuple& args) const {
  if (name == builtin::kNot) return EvalResult{Value::truth(args[0].is_false())};
  if (name == builtin::kImp) return EvalResult{Value::truth(!(args[0].is_true() && args[1].is_false()))};
  if (name == builtin::kEq) return EvalResult{Value::truth(materialize(args[0]) == materialize(args[1]))};
  // some, all, the: scan the class over the instantiation domain.
  const auto elements = domain(instance);
  std::size_t hits = 0;
  std::optional<Value> witness;
  for (const auto& e : elements) {
    EvalResult r = apply(args[0], Tuple{e});
    if (r.proper() && r.value->is_true()) {
      ++hits;
      witness = e;
      if (name == builtin::kSome) return EvalResult{Value::truth(true)};
    } else if (name == builtin::kAll) {
      return EvalResult{Value::truth(false)};
    }
  }
  if (name == builtin::kSome) return EvalResult{Value::truth(false)};
  if (name == builtin::kAll) return EvalResult{Value::truth(true)};
  if (hits == 1) return EvalResult{witness};
  return EvalResult::improper();
}

EvalResult Evaluator::evaluate(const Construction& x, const Assignment& v) const {
  switch (x.kind()) {
    case Construction::Kind::Variable: {
      auto it = v.find(x.as_variable().name);
      if (it == v.end()) fail(ErrorKind::Model, "variable '" + x.as_variable().name + "' is unassigned");
      return EvalResult{it->second};
    }
    case Construction::Kind::Constant: {
      const auto& name = x.constant_name();
      if (name == builtin::kTrue) return EvalResult{Value::truth(true)};
      if (name == builtin::kFalse) return EvalResult{Value::truth(false)};
      if (name == builtin::kBot) return EvalResult::improper();
      if (builtin::is_builtin(name)) return EvalResult{builtin_table(name, x.instance(), frame_, cap_)};
      if (auto val = interp_.constant_value(name)) return EvalResult{*val};
      // Entrywise interpretation: base constants are asked directly.
      auto r = interp_.apply_constant(name, {});
      if (!r) fail(ErrorKind::Model, "constant '" + name + "' has no value");
      return EvalResult{r};
    }
    case Construction::Kind::Quote: return EvalResult{Value::quoted(x.quoted())};
    case Construction::Kind::Application: {
      const Construction& op = x.op();
      const bool direct_builtin = op.is_constant() && builtin::is_builtin(op.constant_name()) &&
                                  op.constant_name() != builtin::kBot;
      std::optional<Value> f;
      if (!direct_builtin) {
        EvalResult r = evaluate(op, v);
        if (!r.proper()) return EvalResult::improper();
        f = std::move(r.value);
      }
      Tuple args;
      args.reserve(x.operands().size());
      for (const auto& a : x.operands()) {
        EvalResult r = evaluate(a, v);
        if (!r.proper()) return EvalResult::improper();
        args.push_back(std::move(*r.value));
      }
      if (direct_builtin) {
        const auto& name = op.constant_name();
        if (name == builtin::kTrue || name == builtin::kFalse)
          fail(ErrorKind::Type, "truth value applied as a function");
        return apply_builtin(name, op.instance().value_or(Type::truth()), args);
      }
      return apply(*f, args);
    }
    case Construction::Kind::Abstraction: {
      std::vector<std::vector<Value>> domains;
      for (const auto& b : x.binders()) domains.push_back(domain(b.type));
      FunctionTable table;
      Assignment inner = v;
      for (auto& args : product(domains)) {
        for (std::size_t i = 0; i < args.size(); ++i) inner.insert_or_assign(x.binders()[i].name, args[i]);
        EvalResult r = evaluate(x.body(), inner);
        if (r.proper()) table.emplace(std::move(args), std::move(*r.value));
      }
      return EvalResult{Value::function(std::move(table))};
    }
  }
  return EvalResult::improper();
}

bool Evaluator::satisfies(const Match& m, const Assignment& v) const {
  EvalResult l = evaluate(m.lhs(), v);
  if (m.is_improper()) return !l.proper();
  if (!l.proper()) return false;
  EvalResult r = evaluate(*m.rhs(), v);
  if (!r.proper()) return false;
  return materialize(*l.value) == materialize(*r.value);
}

EvalResult evaluate(const Construction& x, const Model& m, const Assignment& v) {
  return Evaluator(m.frame(), m).evaluate(x, v);
}

bool satisfies(const Match& mt, const Model& m, const Assignment& v) {
  return Evaluator(m.frame(), m).satisfies(mt, v);
}

Validity sequent_valid(const Sequent& s, const Evaluator& ev) {
  std::map<std::string, Type> vars;
  for (const auto& var : free_variables(s)) {
    auto [it, inserted] = vars.emplace(var.name, var.type);
    if (!inserted && it->second != var.type)
      fail(ErrorKind::Type, "variable '" + var.name + "' occurs at two types in " + print(s));
  }
  std::size_t total = 1;
  std::vector<std::string> names;
  std::vector<std::vector<Value>> domains;
  for (const auto& [name, type] : vars) {
    names.push_back(name);
    domains.push_back(ev.domain(type));
    total = saturating_mul(total, domains.back().size(), ev.cap());
  }
  if (total > ev.cap())
    fail(ErrorKind::SizeCap, "more than " + std::to_string(ev.cap()) + " assignments for " + print(s));

  // Antecedent first, cheapest decisions first; stop at the first witness.
  std::vector<const Match*> antecedent;
  for (const auto& m : s.antecedent) antecedent.push_back(&m);

  Validity out;
  std::vector<std::size_t> digit(names.size(), 0);
  Assignment v;
  for (;;) {
    for (std::size_t i = 0; i < names.size(); ++i) v.insert_or_assign(names[i], domains[i][digit[i]]);
    ++out.assignments;
    bool sat = std::all_of(antecedent.begin(), antecedent.end(), [&](const Match* m) { return ev.satisfies(*m, v); });
    if (sat) {
      ++out.satisfying;
      if (!ev.satisfies(s.succedent, v)) {
        out.valid = false;
        out.witness = v;
        return out;
      }
    }
    std::size_t k = names.size();
    bool carry = true;
    while (carry && k > 0) {
      --k;
      if (++digit[k] < domains[k].size()) carry = false;
      else digit[k] = 0;
    }
    if (carry) return out;
  }
}

Validity sequent_valid(const Sequent& s, const Model& m, std::size_t cap) {
  return sequent_valid(s, Evaluator(m.frame(), m, cap));
}

}  // namespace ttstar
