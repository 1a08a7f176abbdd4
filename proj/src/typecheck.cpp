#include "ttstar/typecheck.hpp"

#include <algorithm>

#include "ttstar/error.hpp"
#include "ttstar/print.hpp"

namespace ttstar {

int order_of_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base: return 1;
    case Type::Kind::Construction: return t.construction_order() + 1;
    case Type::Kind::Function: {
      int order = order_of_type(t.result());
      for (const auto& p : t.params()) order = std::max(order, order_of_type(p));
      return order;
    }
  }
  return 1;
}

bool subsumes(const Type& slot, const Type& actual) {
  if (slot == actual) return true;
  if (slot.is_construction() && actual.is_construction())
    return actual.construction_order() <= slot.construction_order();
  if (slot.is_function() && actual.is_function()) {
    if (slot.params().size() != actual.params().size()) return false;
    for (std::size_t i = 0; i < slot.params().size(); ++i)
      if (!subsumes(slot.params()[i], actual.params()[i])) return false;
    return subsumes(slot.result(), actual.result());
  }
  return false;
}

namespace {

struct Checker {
  const TypingContext& ctx;

  [[noreturn]] void type_error(const Construction& at, const std::string& what) const {
    fail(ErrorKind::Type, what + " in " + print(at));
  }

  // Returns the type and accumulates the construction order.
  Type infer(const Construction& x, int& order) const {
    Type t = infer_inner(x, order);
    order = std::max(order, order_of_type(t));
    return t;
  }

  Type infer_inner(const Construction& x, int& order) const {
    switch (x.kind()) {
      case Construction::Kind::Variable: {
        const auto& v = x.as_variable();
        if (auto it = ctx.variable_types.find(v.name); it != ctx.variable_types.end() && it->second != v.type)
          type_error(x, "variable '" + v.name + "' used at " + print(v.type) + " but declared " +
                            print(it->second));
        return v.type;
      }
      case Construction::Kind::Constant: {
        const auto& name = x.constant_name();
        if (builtin::is_instantiated(name) && !x.instance())
          type_error(x, "builtin '" + name + "' needs a type instantiation");
        if (builtin::is_builtin(name) && !builtin::is_instantiated(name) && x.instance())
          type_error(x, "builtin '" + name + "' takes no type instantiation");
        std::optional<Type> t = ctx.signature ? ctx.signature->lookup(name, x.instance())
                                              : Signature::builtin_type(name, x.instance());
        if (!t) fail(ErrorKind::Reference, "unknown constant '" + name + "'");
        return *t;
      }
      case Construction::Kind::Quote: {
        int inner = 1;
        infer(x.quoted(), inner);
        return Type::construction(inner);
      }
      case Construction::Kind::Application: {
        Type op = infer(x.op(), order);
        if (!op.is_function()) type_error(x, "operator of type " + print(op) + " is not a function");
        if (op.params().size() != x.operands().size())
          type_error(x, "arity mismatch: operator expects " + std::to_string(op.params().size()) +
                            " operand(s), got " + std::to_string(x.operands().size()));
        for (std::size_t i = 0; i < x.operands().size(); ++i) {
          Type a = infer(x.operands()[i], order);
          if (!subsumes(op.params()[i], a))
            type_error(x, "operand type mismatch at " + std::to_string(i + 1) + ": expected " +
                              print(op.params()[i]) + ", got " + print(a));
        }
        return op.result();
      }
      case Construction::Kind::Abstraction: {
        std::vector<Type> params;
        for (const auto& b : x.binders()) params.push_back(b.type);
        // Binders shadow declared free variables of the same name.
        TypingContext inner = ctx;
        for (const auto& b : x.binders()) inner.variable_types.erase(b.name);
        Checker sub{inner};
        Type body = sub.infer(x.body(), order);
        return Type::function(std::move(params), std::move(body));
      }
    }
    type_error(x, "unknown construction form");
  }
};

}  // namespace

TypingJudgment infer_type(const Construction& x, const TypingContext& ctx) {
  int order = 1;
  Type t = Checker{ctx}.infer(x, order);
  return TypingJudgment{x, t, order_of_type(t)};
}

Type type_of(const Construction& x, const Signature& signature) {
  TypingContext ctx{&signature, {}};
  return infer_type(x, ctx).type;
}

int order_of_construction(const Construction& x, const Signature& signature) {
  TypingContext ctx{&signature, {}};
  int order = 1;
  Checker{ctx}.infer(x, order);
  return order;
}

}  // namespace ttstar
