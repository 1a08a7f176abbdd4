#ifndef TTSTAR_TYPECHECK_HPP
#define TTSTAR_TYPECHECK_HPP

#include <map>
#include <string>

#include "ttstar/term.hpp"

namespace ttstar {

struct TypingContext {
  const Signature* signature = nullptr;
  // Variables carry their own type, so this map only needs entries for free
  // variables declared elsewhere; a variable whose carried type disagrees
  // with its entry is a type error.
  std::map<std::string, Type> variable_types;
};

struct TypingJudgment {
  Construction subject;
  Type type;
  int order;  // order_of_type(type)
};

// Base -> 1, *n -> n+1, function -> max over components.
int order_of_type(const Type& t);

// Max over the orders of the types of all subconstructions, the construction
// itself included. Quoted constructions count once, as their *n type.
int order_of_construction(const Construction& x, const Signature& signature);

// True when a value of type `actual` is acceptable in a slot of type `slot`:
// equal types, *m in a *n slot with m <= n, and componentwise for functions
// with equal arity.
bool subsumes(const Type& slot, const Type& actual);

// Raises ErrorKind::Type (or Reference for unknown constants) naming the
// offending subterm.
TypingJudgment infer_type(const Construction& x, const TypingContext& ctx);

// infer_type with an empty variable map.
Type type_of(const Construction& x, const Signature& signature);

}  // namespace ttstar

#endif  // TTSTAR_TYPECHECK_HPP
