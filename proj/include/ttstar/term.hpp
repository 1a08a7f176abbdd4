#ifndef TTSTAR_TERM_HPP
#define TTSTAR_TERM_HPP

// Term core: types, the four forms of constructions, signatures, free
// variables and capture-avoiding substitution.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ttstar {

enum class BaseType : std::uint8_t { Truth, Individual, World };  // o, i, w

class Type {
 public:
  enum class Kind : std::uint8_t { Base, Construction, Function };

  static Type truth();
  static Type individual();
  static Type world();
  static Type base(BaseType b);
  // *n, n >= 1
  static Type construction(int order);
  // <params> -> result, at least one parameter; no currying
  static Type function(std::vector<Type> params, Type result);

  Kind kind() const;
  bool is_base() const { return kind() == Kind::Base; }
  bool is_construction() const { return kind() == Kind::Construction; }
  bool is_function() const { return kind() == Kind::Function; }
  bool is(BaseType b) const { return is_base() && base_type() == b; }

  BaseType base_type() const;
  int construction_order() const;
  const std::vector<Type>& params() const;
  const Type& result() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Variable {
  std::string name;
  Type type;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend std::strong_ordering operator<=>(const Variable& a, const Variable& b);
};

// Builtin acquisitions. `bot` is the always-improper construction of its
// instantiation type; T and F acquire the two truth values.
namespace builtin {
inline constexpr std::string_view kTrue = "T";
inline constexpr std::string_view kFalse = "F";
inline constexpr std::string_view kNot = "not";
inline constexpr std::string_view kImp = "imp";
inline constexpr std::string_view kAll = "all";
inline constexpr std::string_view kSome = "some";
inline constexpr std::string_view kEq = "eq";
inline constexpr std::string_view kThe = "the";
inline constexpr std::string_view kBot = "bot";

bool is_builtin(std::string_view name);
// all, some, eq, the and bot carry a type instantiation.
bool is_instantiated(std::string_view name);
}  // namespace builtin

class Construction {
 public:
  enum class Kind : std::uint8_t { Variable, Constant, Quote, Application, Abstraction };

  static Construction variable(std::string name, Type type);
  static Construction variable(const Variable& v) { return variable(v.name, v.type); }
  static Construction constant(std::string name, std::optional<Type> instance = std::nullopt);
  static Construction quote(Construction quoted);
  static Construction application(Construction op, std::vector<Construction> operands);
  static Construction abstraction(std::vector<Variable> binders, Construction body);

  Kind kind() const;
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_quote() const { return kind() == Kind::Quote; }
  bool is_acquisition() const { return is_constant() || is_quote(); }
  bool is_application() const { return kind() == Kind::Application; }
  bool is_abstraction() const { return kind() == Kind::Abstraction; }
  bool is_builtin(std::string_view name) const;  // constant acquisition of that builtin
  bool is_bot() const { return is_builtin(builtin::kBot); }

  const Variable& as_variable() const;
  const std::string& constant_name() const;
  const std::optional<Type>& instance() const;
  const Construction& quoted() const;
  const Construction& op() const;
  const std::vector<Construction>& operands() const;
  const std::vector<Variable>& binders() const;
  const Construction& body() const;

  std::size_t size() const;   // node count
  std::size_t depth() const;  // 1 for atoms

  friend bool operator==(const Construction& a, const Construction& b);
  friend std::strong_ordering operator<=>(const Construction& a, const Construction& b);

 private:
  struct Node;
  explicit Construction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Shorthands for builtin acquisitions and their applications.
namespace mk {
Construction var(std::string name, Type type);
Construction cnst(std::string name);
Construction T();
Construction F();
Construction truth(bool value);
Construction bot(Type t);
Construction not_(Construction o);
Construction imp(Construction a, Construction b);
Construction eq(Type t, Construction a, Construction b);
Construction the(Type t, Construction c);
Construction some(Type t, Construction c);
Construction all(Type t, Construction c);
Construction app(Construction op, std::vector<Construction> operands);
Construction lam(std::vector<Variable> binders, Construction body);
}  // namespace mk

class Signature {
 public:
  // Declares a theory constant; builtin names and redeclarations are
  // reference errors.
  void declare(const std::string& name, Type type);
  bool declares(std::string_view name) const;
  // Type of a constant acquisition: builtins per their fixed table,
  // otherwise the declared type. nullopt when unknown.
  std::optional<Type> lookup(std::string_view name, const std::optional<Type>& instance) const;
  const std::vector<std::pair<std::string, Type>>& constants() const { return constants_; }

  static std::optional<Type> builtin_type(std::string_view name, const std::optional<Type>& instance);

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::pair<std::string, Type>> constants_;  // declaration order
};

// Free variables; quotations are opaque and contribute none.
std::set<Variable> free_variables(const Construction& x);
bool occurs_free(std::string_view name, const Construction& x);
// Every variable name occurring in x, bound or free, quotations included.
void collect_names(const Construction& x, std::set<std::string>& out);

bool syntactic_equal(const Construction& a, const Construction& b);

// Strips a trailing numeric suffix from base and appends the smallest index
// n >= 1 giving a name not in avoid.
std::string fresh_name(std::string_view base, const std::set<std::string>& avoid);

using Binding = std::pair<Variable, Construction>;

// Simultaneous capture-avoiding substitution at free occurrences. Binders are
// renamed with fresh_name only when a free variable of an inserted
// construction would be captured. Nothing is substituted under quotation.
// With a signature, each inserted construction must type-check at (a type
// subsumed by) its variable's type, else a Substitution error.
Construction substitute(const Construction& y, const std::vector<Binding>& bindings,
                        const Signature* signature = nullptr);
Construction substitute(const Construction& y, const Variable& x, const Construction& value,
                        const Signature* signature = nullptr);

// Occurrence positions. A path selects a child at each step: for an
// application 0 is the operator and k >= 1 the k-th operand; for an
// abstraction 0 is the body. Quotations cannot be entered.
using Path = std::vector<int>;
std::optional<Construction> subterm_at(const Construction& x, const Path& path);
Construction replace_at(const Construction& x, const Path& path, const Construction& replacement);
// Names bound by abstractions along the path (excluding the target itself).
std::set<std::string> binders_along(const Construction& x, const Path& path);
// Every path at which target occurs (outside quotations), in preorder.
std::vector<Path> occurrences(const Construction& x, const Construction& target);

}  // namespace ttstar

#endif  // TTSTAR_TERM_HPP
