#include "ttstar/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ttstar/error.hpp"
#include "ttstar/print.hpp"
#include "ttstar/typecheck.hpp"

namespace ttstar {

// ---------------------------------------------------------------------------
// Types

struct Type::Node {
  Kind kind;
  BaseType base = BaseType::Truth;
  int order = 0;
  std::vector<Type> params;
  std::optional<Type> result;
};

Type Type::base(BaseType b) {
  static const Type truth_t{std::make_shared<Node>(Node{Kind::Base, BaseType::Truth, 0, {}, {}})};
  static const Type indiv_t{std::make_shared<Node>(Node{Kind::Base, BaseType::Individual, 0, {}, {}})};
  static const Type world_t{std::make_shared<Node>(Node{Kind::Base, BaseType::World, 0, {}, {}})};
  switch (b) {
    case BaseType::Truth: return truth_t;
    case BaseType::Individual: return indiv_t;
    case BaseType::World: return world_t;
  }
  return truth_t;
}

Type Type::truth() { return base(BaseType::Truth); }
Type Type::individual() { return base(BaseType::Individual); }
Type Type::world() { return base(BaseType::World); }

Type Type::construction(int order) {
  if (order < 1) fail(ErrorKind::Type, "construction type *n needs n >= 1");
  return Type{std::make_shared<Node>(Node{Kind::Construction, BaseType::Truth, order, {}, {}})};
}

Type Type::function(std::vector<Type> params, Type result) {
  if (params.empty()) fail(ErrorKind::Type, "function types need at least one parameter");
  return Type{std::make_shared<Node>(
      Node{Kind::Function, BaseType::Truth, 0, std::move(params), std::move(result)})};
}

Type::Kind Type::kind() const { return node_->kind; }
BaseType Type::base_type() const { return node_->base; }
int Type::construction_order() const { return node_->order; }
const std::vector<Type>& Type::params() const { return node_->params; }
const Type& Type::result() const { return *node_->result; }

bool operator==(const Type& a, const Type& b) {
  return a.node_ == b.node_ || (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Type::Kind::Base: return a.base_type() <=> b.base_type();
    case Type::Kind::Construction: return a.construction_order() <=> b.construction_order();
    case Type::Kind::Function: {
      if (auto c = a.params().size() <=> b.params().size(); c != 0) return c;
      for (std::size_t i = 0; i < a.params().size(); ++i)
        if (auto c = a.params()[i] <=> b.params()[i]; c != 0) return c;
      return a.result() <=> b.result();
    }
  }
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Variable& a, const Variable& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  return a.type <=> b.type;
}

// ---------------------------------------------------------------------------
// Builtins

namespace builtin {
bool is_builtin(std::string_view name) {
  return name == kTrue || name == kFalse || name == kNot || name == kImp || name == kAll ||
         name == kSome || name == kEq || name == kThe || name == kBot;
}
bool is_instantiated(std::string_view name) {
  return name == kAll || name == kSome || name == kEq || name == kThe || name == kBot;
}
}  // namespace builtin

// ---------------------------------------------------------------------------
// Constructions

struct Construction::Node {
  Kind kind;
  std::optional<Variable> var;
  std::string name;
  std::optional<Type> instance;
  std::vector<Construction> children;  // quote: [quoted]; application: [op]; abstraction: [body]
  std::vector<Construction> operands;
  std::vector<Variable> binders;
  std::size_t size = 1;
  std::size_t depth = 1;
};

Construction Construction::variable(std::string name, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = Variable{std::move(name), std::move(type)};
  return Construction{std::move(n)};
}

Construction Construction::constant(std::string name, std::optional<Type> instance) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->name = std::move(name);
  n->instance = std::move(instance);
  return Construction{std::move(n)};
}

Construction Construction::quote(Construction quoted) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quote;
  n->size = 1 + quoted.size();
  n->depth = 1 + quoted.depth();
  n->children.push_back(std::move(quoted));
  return Construction{std::move(n)};
}

Construction Construction::application(Construction op, std::vector<Construction> operands) {
  if (operands.empty()) fail(ErrorKind::Type, "application needs at least one operand");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Application;
  n->size = 1 + op.size();
  n->depth = op.depth();
  for (const auto& x : operands) {
    n->size += x.size();
    n->depth = std::max(n->depth, x.depth());
  }
  n->depth += 1;
  n->children.push_back(std::move(op));
  n->operands = std::move(operands);
  return Construction{std::move(n)};
}

Construction Construction::abstraction(std::vector<Variable> binders, Construction body) {
  if (binders.empty()) fail(ErrorKind::Type, "abstraction needs at least one binder");
  for (std::size_t i = 0; i < binders.size(); ++i)
    for (std::size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i].name == binders[j].name)
        fail(ErrorKind::Type, "duplicate binder '" + binders[i].name + "' in abstraction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abstraction;
  n->size = 1 + body.size();
  n->depth = 1 + body.depth();
  n->children.push_back(std::move(body));
  n->binders = std::move(binders);
  return Construction{std::move(n)};
}

Construction::Kind Construction::kind() const { return node_->kind; }
bool Construction::is_builtin(std::string_view name) const {
  return is_constant() && node_->name == name;
}
const Variable& Construction::as_variable() const { return *node_->var; }
const std::string& Construction::constant_name() const { return node_->name; }
const std::optional<Type>& Construction::instance() const { return node_->instance; }
const Construction& Construction::quoted() const { return node_->children.front(); }
const Construction& Construction::op() const { return node_->children.front(); }
const std::vector<Construction>& Construction::operands() const { return node_->operands; }
const std::vector<Variable>& Construction::binders() const { return node_->binders; }
const Construction& Construction::body() const { return node_->children.front(); }
std::size_t Construction::size() const { return node_->size; }
std::size_t Construction::depth() const { return node_->depth; }

bool operator==(const Construction& a, const Construction& b) {
  if (a.node_ == b.node_) return true;
  if (a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

namespace {
template <class T>
std::strong_ordering compare_vectors(const std::vector<T>& a, const std::vector<T>& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_optional(const std::optional<Type>& a, const std::optional<Type>& b) {
  if (a.has_value() != b.has_value()) return a.has_value() <=> b.has_value();
  if (!a) return std::strong_ordering::equal;
  return *a <=> *b;
}
}  // namespace

std::strong_ordering operator<=>(const Construction& a, const Construction& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Construction::Kind::Variable: return a.as_variable() <=> b.as_variable();
    case Construction::Kind::Constant:
      if (auto c = a.constant_name() <=> b.constant_name(); c != 0) return c;
      return compare_optional(a.instance(), b.instance());
    case Construction::Kind::Quote: return a.quoted() <=> b.quoted();
    case Construction::Kind::Application:
      if (auto c = a.op() <=> b.op(); c != 0) return c;
      return compare_vectors(a.operands(), b.operands());
    case Construction::Kind::Abstraction:
      if (auto c = compare_vectors(a.binders(), b.binders()); c != 0) return c;
      return a.body() <=> b.body();
  }
  return std::strong_ordering::equal;
}

bool syntactic_equal(const Construction& a, const Construction& b) { return a == b; }

namespace mk {
Construction var(std::string name, Type type) { return Construction::variable(std::move(name), std::move(type)); }
Construction cnst(std::string name) { return Construction::constant(std::move(name)); }
Construction T() { return Construction::constant(std::string(builtin::kTrue)); }
Construction F() { return Construction::constant(std::string(builtin::kFalse)); }
Construction truth(bool value) { return value ? T() : F(); }
Construction bot(Type t) { return Construction::constant(std::string(builtin::kBot), std::move(t)); }
Construction not_(Construction o) {
  return Construction::application(Construction::constant(std::string(builtin::kNot)), {std::move(o)});
}
Construction imp(Construction a, Construction b) {
  return Construction::application(Construction::constant(std::string(builtin::kImp)),
                                   {std::move(a), std::move(b)});
}
Construction eq(Type t, Construction a, Construction b) {
  return Construction::application(Construction::constant(std::string(builtin::kEq), std::move(t)),
                                   {std::move(a), std::move(b)});
}
Construction the(Type t, Construction c) {
  return Construction::application(Construction::constant(std::string(builtin::kThe), std::move(t)),
                                   {std::move(c)});
}
Construction some(Type t, Construction c) {
  return Construction::application(Construction::constant(std::string(builtin::kSome), std::move(t)),
                                   {std::move(c)});
}
Construction all(Type t, Construction c) {
  return Construction::application(Construction::constant(std::string(builtin::kAll), std::move(t)),
                                   {std::move(c)});
}
Construction app(Construction op, std::vector<Construction> operands) {
  return Construction::application(std::move(op), std::move(operands));
}
Construction lam(std::vector<Variable> binders, Construction body) {
  return Construction::abstraction(std::move(binders), std::move(body));
}
}  // namespace mk

// ---------------------------------------------------------------------------
// Signatures

void Signature::declare(const std::string& name, Type type) {
  if (builtin::is_builtin(name)) fail(ErrorKind::Reference, "'" + name + "' is a builtin and cannot be declared");
  if (declares(name)) fail(ErrorKind::Reference, "constant '" + name + "' declared twice");
  constants_.emplace_back(name, std::move(type));
}

bool Signature::declares(std::string_view name) const {
  return std::any_of(constants_.begin(), constants_.end(), [&](const auto& c) { return c.first == name; });
}

std::optional<Type> Signature::builtin_type(std::string_view name, const std::optional<Type>& inst) {
  const Type o = Type::truth();
  if (name == builtin::kTrue || name == builtin::kFalse) {
    if (inst) return std::nullopt;
    return o;
  }
  if (name == builtin::kNot) {
    if (inst) return std::nullopt;
    return Type::function({o}, o);
  }
  if (name == builtin::kImp) {
    if (inst) return std::nullopt;
    return Type::function({o, o}, o);
  }
  if (!builtin::is_instantiated(name) || !inst) return std::nullopt;
  const Type& t = *inst;
  if (name == builtin::kAll || name == builtin::kSome) return Type::function({Type::function({t}, o)}, o);
  if (name == builtin::kEq) return Type::function({t, t}, o);
  if (name == builtin::kThe) return Type::function({Type::function({t}, o)}, t);
  if (name == builtin::kBot) return t;
  return std::nullopt;
}

std::optional<Type> Signature::lookup(std::string_view name, const std::optional<Type>& instance) const {
  if (builtin::is_builtin(name)) return builtin_type(name, instance);
  if (instance) return std::nullopt;
  for (const auto& [n, t] : constants_)
    if (n == name) return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {
void free_vars_into(const Construction& x, std::vector<std::string>& bound, std::set<Variable>& out) {
  switch (x.kind()) {
    case Construction::Kind::Variable:
      if (std::find(bound.begin(), bound.end(), x.as_variable().name) == bound.end())
        out.insert(x.as_variable());
      return;
    case Construction::Kind::Constant:
    case Construction::Kind::Quote: return;
    case Construction::Kind::Application:
      free_vars_into(x.op(), bound, out);
      for (const auto& a : x.operands()) free_vars_into(a, bound, out);
      return;
    case Construction::Kind::Abstraction: {
      const auto mark = bound.size();
      for (const auto& b : x.binders()) bound.push_back(b.name);
      free_vars_into(x.body(), bound, out);
      bound.resize(mark);
      return;
    }
  }
}
}  // namespace

std::set<Variable> free_variables(const Construction& x) {
  std::set<Variable> out;
  std::vector<std::string> bound;
  free_vars_into(x, bound, out);
  return out;
}

bool occurs_free(std::string_view name, const Construction& x) {
  switch (x.kind()) {
    case Construction::Kind::Variable: return x.as_variable().name == name;
    case Construction::Kind::Constant:
    case Construction::Kind::Quote: return false;
    case Construction::Kind::Application:
      if (occurs_free(name, x.op())) return true;
      return std::any_of(x.operands().begin(), x.operands().end(),
                         [&](const Construction& a) { return occurs_free(name, a); });
    case Construction::Kind::Abstraction:
      for (const auto& b : x.binders())
        if (b.name == name) return false;
      return occurs_free(name, x.body());
  }
  return false;
}

void collect_names(const Construction& x, std::set<std::string>& out) {
  switch (x.kind()) {
    case Construction::Kind::Variable: out.insert(x.as_variable().name); return;
    case Construction::Kind::Constant: return;
    case Construction::Kind::Quote: collect_names(x.quoted(), out); return;
    case Construction::Kind::Application:
      collect_names(x.op(), out);
      for (const auto& a : x.operands()) collect_names(a, out);
      return;
    case Construction::Kind::Abstraction:
      for (const auto& b : x.binders()) out.insert(b.name);
      collect_names(x.body(), out);
      return;
  }
}

std::string fresh_name(std::string_view base, const std::set<std::string>& avoid) {
  std::string root(base);
  while (root.size() > 1 && std::isdigit(static_cast<unsigned char>(root.back()))) root.pop_back();
  if (root.empty() || std::isdigit(static_cast<unsigned char>(root.front()))) root = "v";
  for (int n = 1;; ++n) {
    std::string candidate = root + std::to_string(n);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {
Construction subst(const Construction& y, const std::vector<Binding>& bindings) {
  switch (y.kind()) {
    case Construction::Kind::Variable:
      for (const auto& [v, value] : bindings)
        if (v.name == y.as_variable().name) return value;
      return y;
    case Construction::Kind::Constant:
    case Construction::Kind::Quote: return y;
    case Construction::Kind::Application: {
      std::vector<Construction> operands;
      operands.reserve(y.operands().size());
      for (const auto& a : y.operands()) operands.push_back(subst(a, bindings));
      return Construction::application(subst(y.op(), bindings), std::move(operands));
    }
    case Construction::Kind::Abstraction: break;
  }

  // Drop bindings shadowed by a binder or not occurring in the body.
  std::vector<Binding> active;
  for (const auto& b : bindings) {
    bool shadowed = std::any_of(y.binders().begin(), y.binders().end(),
                                [&](const Variable& v) { return v.name == b.first.name; });
    if (!shadowed && occurs_free(b.first.name, y.body())) active.push_back(b);
  }
  if (active.empty()) return y;

  std::set<std::string> inserted_free;
  for (const auto& [v, value] : active)
    for (const auto& fv : free_variables(value)) inserted_free.insert(fv.name);

  std::set<std::string> avoid = inserted_free;
  collect_names(y.body(), avoid);
  for (const auto& b : y.binders()) avoid.insert(b.name);
  for (const auto& [v, value] : active) avoid.insert(v.name);

  std::vector<Variable> binders = y.binders();
  for (auto& b : binders) {
    if (!inserted_free.count(b.name)) continue;
    std::string renamed = fresh_name(b.name, avoid);
    avoid.insert(renamed);
    active.emplace_back(b, Construction::variable(renamed, b.type));
    b.name = renamed;
  }
  return Construction::abstraction(std::move(binders), subst(y.body(), active));
}
}  // namespace

Construction substitute(const Construction& y, const std::vector<Binding>& bindings,
                        const Signature* signature) {
  for (std::size_t i = 0; i < bindings.size(); ++i)
    for (std::size_t j = i + 1; j < bindings.size(); ++j)
      if (bindings[i].first.name == bindings[j].first.name)
        fail(ErrorKind::Substitution, "variable '" + bindings[i].first.name + "' bound twice in substitution");
  if (signature) {
    for (const auto& [v, value] : bindings) {
      Type actual = type_of(value, *signature);
      if (!subsumes(v.type, actual))
        fail(ErrorKind::Substitution, "cannot substitute " + print(value) + " : " + print(actual) +
                                          " for " + v.name + " : " + print(v.type));
    }
  }
  return subst(y, bindings);
}

Construction substitute(const Construction& y, const Variable& x, const Construction& value,
                        const Signature* signature) {
  return substitute(y, std::vector<Binding>{{x, value}}, signature);
}

// ---------------------------------------------------------------------------
// Positions

std::optional<Construction> subterm_at(const Construction& x, const Path& path) {
  const Construction* cur = &x;
  for (int step : path) {
    if (cur->is_application()) {
      if (step == 0) cur = &cur->op();
      else if (step >= 1 && static_cast<std::size_t>(step) <= cur->operands().size())
        cur = &cur->operands()[step - 1];
      else return std::nullopt;
    } else if (cur->is_abstraction() && step == 0) {
      cur = &cur->body();
    } else {
      return std::nullopt;
    }
  }
  return *cur;
}

Construction replace_at(const Construction& x, const Path& path, const Construction& replacement) {
  if (path.empty()) return replacement;
  const int step = path.front();
  Path rest(path.begin() + 1, path.end());
  if (x.is_application()) {
    if (step == 0) return Construction::application(replace_at(x.op(), rest, replacement), x.operands());
    if (step >= 1 && static_cast<std::size_t>(step) <= x.operands().size()) {
      auto operands = x.operands();
      operands[step - 1] = replace_at(operands[step - 1], rest, replacement);
      return Construction::application(x.op(), std::move(operands));
    }
  } else if (x.is_abstraction() && step == 0) {
    return Construction::abstraction(x.binders(), replace_at(x.body(), rest, replacement));
  }
  fail(ErrorKind::Shape, "invalid occurrence position");
}

std::set<std::string> binders_along(const Construction& x, const Path& path) {
  std::set<std::string> out;
  const Construction* cur = &x;
  for (int step : path) {
    if (cur->is_abstraction()) {
      for (const auto& b : cur->binders()) out.insert(b.name);
      cur = &cur->body();
    } else if (cur->is_application()) {
      if (step == 0) cur = &cur->op();
      else if (step >= 1 && static_cast<std::size_t>(step) <= cur->operands().size())
        cur = &cur->operands()[step - 1];
      else break;
    } else {
      break;
    }
  }
  return out;
}

namespace {
void occurrences_into(const Construction& x, const Construction& target, Path& here, std::vector<Path>& out) {
  if (x == target) {
    out.push_back(here);
    return;
  }
  if (x.is_application()) {
    here.push_back(0);
    occurrences_into(x.op(), target, here, out);
    here.pop_back();
    for (std::size_t i = 0; i < x.operands().size(); ++i) {
      here.push_back(static_cast<int>(i + 1));
      occurrences_into(x.operands()[i], target, here, out);
      here.pop_back();
    }
  } else if (x.is_abstraction()) {
    here.push_back(0);
    occurrences_into(x.body(), target, here, out);
    here.pop_back();
  }
}
}  // namespace

std::vector<Path> occurrences(const Construction& x, const Construction& target) {
  std::vector<Path> out;
  Path here;
  occurrences_into(x, target, here, out);
  return out;
}

}  // namespace ttstar
