#ifndef TTSTAR_MODEL_HPP
#define TTSTAR_MODEL_HPP

// Finite models: frames with small named domains, partial functions as
// explicit finite maps, strict evaluation and brute-force sequent validity.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttstar/sequent.hpp"
#include "ttstar/term.hpp"

namespace ttstar {

inline constexpr std::size_t kDefaultCap = 100000;

class Value;
using Tuple = std::vector<Value>;
using FunctionTable = std::map<Tuple, Value>;  // absent key = undefined
using ArgumentPath = std::vector<Tuple>;       // successive applications

class Value {
 public:
  // Lazy values stand for a constant (or one of its curried results) whose
  // table is decided on demand by the interpretation; they are produced only
  // by interpretations that return nullopt from constant_value.
  enum class Kind : std::uint8_t { Element, Function, Quoted, Lazy };

  static Value element(BaseType base, int index);
  static Value truth(bool b) { return element(BaseType::Truth, b ? 0 : 1); }
  static Value function(FunctionTable table);
  static Value quoted(Construction c);
  static Value lazy(std::string constant, ArgumentPath path, Type type);

  Kind kind() const;
  bool is_element() const { return kind() == Kind::Element; }
  bool is_function() const { return kind() == Kind::Function; }
  bool is_quoted() const { return kind() == Kind::Quoted; }
  bool is_lazy() const { return kind() == Kind::Lazy; }
  bool is_true() const;
  bool is_false() const;

  BaseType base() const;
  int index() const;  // truth values: T = 0, F = 1
  const FunctionTable& table() const;
  const Construction& construction() const;
  const std::string& lazy_constant() const;
  const ArgumentPath& lazy_path() const;
  const Type& lazy_type() const;

  // Structural; lazy values must be materialized before semantic comparison.
  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Frame {
  std::vector<std::string> individuals;
  std::vector<std::string> worlds;

  std::size_t size(BaseType b) const;
  std::string name(BaseType b, int index) const;
  std::optional<int> index(BaseType b, std::string_view name) const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

// Thrown by an on-demand interpretation when evaluation consults an entry it
// has not decided yet. Deliberately not an Error.
struct NeedEntry {
  std::string constant;
  ArgumentPath path;  // empty: the constant's own value (base-typed constants)
};

class Interpretation {
 public:
  virtual ~Interpretation() = default;
  // Full value, or nullopt when the constant is to be consulted entrywise.
  virtual std::optional<Value> constant_value(const std::string& name) const = 0;
  // Entry of a function constant along path; nullopt = undefined there.
  virtual std::optional<Value> apply_constant(const std::string& name, const ArgumentPath& path) const = 0;
};

class Model : public Interpretation {
 public:
  Model(Signature signature, Frame frame) : signature_(std::move(signature)), frame_(std::move(frame)) {}

  const Signature& signature() const { return signature_; }
  const Frame& frame() const { return frame_; }
  const std::map<std::string, Value>& interpretation() const { return interpretation_; }

  // The value must fit the declared type over this frame.
  void interpret(const std::string& name, Value value);
  // Every declared constant is interpreted; Model error otherwise.
  void validate() const;

  std::optional<Value> constant_value(const std::string& name) const override;
  std::optional<Value> apply_constant(const std::string& name, const ArgumentPath& path) const override;

 private:
  Signature signature_;
  Frame frame_;
  std::map<std::string, Value> interpretation_;
};

// Does the value inhabit the type over the frame (tables: keys and entries
// fit, all tuples drawn from the parameter domains).
bool value_fits(const Value& v, const Type& t, const Frame& frame);

using Assignment = std::map<std::string, Value>;  // keyed by variable name

struct EvalResult {
  std::optional<Value> value;  // nullopt = improper
  bool proper() const { return value.has_value(); }
  static EvalResult improper() { return {}; }
};

class Evaluator {
 public:
  Evaluator(const Frame& frame, const Interpretation& interp, std::size_t cap = kDefaultCap)
      : frame_(frame), interp_(interp), cap_(cap) {}

  EvalResult evaluate(const Construction& x, const Assignment& v) const;
  bool satisfies(const Match& m, const Assignment& v) const;
  // Replaces every lazy value (at any depth) by its explicit table.
  Value materialize(const Value& v) const;
  // Domain of a first-order type; UnsupportedOrder for *n, SizeCap beyond cap.
  std::vector<Value> domain(const Type& t) const;
  std::size_t domain_size(const Type& t) const;  // saturates at cap + 1

  const Frame& frame() const { return frame_; }
  std::size_t cap() const { return cap_; }

 private:
  EvalResult apply(const Value& f, const Tuple& args) const;
  EvalResult apply_builtin(const std::string& name, const Type& instance, const Tuple& args) const;

  const Frame& frame_;
  const Interpretation& interp_;
  std::size_t cap_;
  mutable std::map<Type, std::vector<Value>> domain_cache_;
};

EvalResult evaluate(const Construction& x, const Model& m, const Assignment& v);
bool satisfies(const Match& mt, const Model& m, const Assignment& v);

struct Validity {
  bool valid = true;
  std::optional<Assignment> witness;  // a counter-assignment when invalid
  std::size_t assignments = 0;        // assignments examined
  std::size_t satisfying = 0;         // of which satisfied the whole antecedent
};

// Exhaustive over assignments to the sequent's free variables.
Validity sequent_valid(const Sequent& s, const Model& m, std::size_t cap = kDefaultCap);
Validity sequent_valid(const Sequent& s, const Evaluator& ev);

// All partial maps from the parameter tuples to the result domain, in a
// fixed order; (|result| + 1)^|tuples| values.
std::vector<Value> enumerate_function_space(const std::vector<Type>& params, const Type& result,
                                            const Frame& frame, std::size_t cap = kDefaultCap);

// Explicit table of a builtin at an instantiation (ignored for not/imp).
Value builtin_table(std::string_view name, const std::optional<Type>& instance, const Frame& frame,
                    std::size_t cap = kDefaultCap);

}  // namespace ttstar

#endif  // TTSTAR_MODEL_HPP
