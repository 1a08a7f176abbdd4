#ifndef TTSTAR_SYNTAX_HPP
#define TTSTAR_SYNTAX_HPP

// Parsers and printers for the four file kinds. Formats are free-form (any
// whitespace separates items); `#` starts a comment running to end of line.
//
//   theory:   const K : (w)->((i,i)->o)      var x : i
//   model:    domain i = {a, b}              const Fr : i = a
//             const FY : (w)->i = { (w1) -> a }      (unlisted = undefined)
//   sequent:  [M1, M2] => M
//   proof:    proof name
//             var y : i
//             hyp h1 |- [] => M
//             3: beta-con 2 |- [] => M
//             4: exh (x:i) 2 3 |- [] => M
//
// Variables are resolved against the theory's and the script's `var`
// declarations, and against enclosing binders.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ttstar/model.hpp"
#include "ttstar/print.hpp"
#include "ttstar/script.hpp"

namespace ttstar {

struct Theory {
  Signature signature;
  std::vector<Variable> variables;  // declaration order

  std::map<std::string, Type> scope() const;
  friend bool operator==(const Theory&, const Theory&) = default;
};

// Free variables not in scope are Reference errors.
using Scope = std::map<std::string, Type>;

Type parse_type(std::string_view text);
Construction parse_construction(std::string_view text, const Signature& signature, const Scope& scope = {});
Match parse_match(std::string_view text, const Signature& signature, const Scope& scope = {});
Sequent parse_sequent(std::string_view text, const Signature& signature, const Scope& scope = {});

Theory parse_theory(std::string_view text);
Model parse_model(std::string_view text, const Theory& theory);
Sequent parse_sequent_file(std::string_view text, const Theory& theory);
ProofScript parse_proof(std::string_view text, const Theory& theory);

struct Span {
  std::size_t begin = 0;  // byte offsets
  std::size_t end = 0;
  int line = 1;
};

enum class DocumentKind { Theory, Model, Sequent, Proof };

struct SourceDocument {
  DocumentKind kind;
  std::variant<Theory, Model, Sequent, ProofScript> content;
  std::vector<Span> spans;  // one per top-level item, covering the input
};

// Theory files need no context; the others parse against `theory`.
SourceDocument parse_file(DocumentKind kind, std::string_view text, const Theory* theory = nullptr);

std::string print(const Theory& t);
std::string print(const Model& m);
std::string print(const ProofScript& p);
std::string print_value(const Value& v, const Type& t, const Frame& frame);
std::string print_assignment(const Assignment& a, const std::map<std::string, Type>& types, const Frame& frame);

std::string read_file(const std::string& path);

}  // namespace ttstar

#endif  // TTSTAR_SYNTAX_HPP
