#ifndef TTSTAR_ERROR_HPP
#define TTSTAR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttstar {

enum class ErrorKind {
  Syntax,
  Reference,         // undeclared constant, variable, step or hypothesis
  Type,              // ill-typed construction
  Substitution,      // type-mismatched substitution binding
  Shape,             // premises do not fit a rule schema
  Freshness,         // rule-introduced variable clashes
  Incompatibility,   // patent-incompatibility side condition fails
  Gated,             // rule disabled by configuration
  UnsupportedOrder,  // evaluation would need an un-enumerable domain
  SizeCap,           // enumeration larger than the configured cap
  Replay,            // claimed sequent differs from the produced one
  Model,             // malformed model (missing interpretation, bad table)
};

std::string_view to_string(ErrorKind kind);

// Every engine failure is reported through this one exception type; the kind
// lets callers map failures to exit codes and lets tests assert on the cause.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ttstar

#endif  // TTSTAR_ERROR_HPP
