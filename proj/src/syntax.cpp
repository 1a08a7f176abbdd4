#include "ttstar/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ttstar/error.hpp"

namespace ttstar {

std::map<std::string, Type> Theory::scope() const {
  std::map<std::string, Type> out;
  for (const auto& v : variables) out.insert_or_assign(v.name, v.type);
  return out;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool reserved(std::string_view w) { return w == "quote" || w == "bot"; }

class Parser {
 public:
  Parser(std::string_view src, const Signature* sig, Scope scope)
      : src_(src), sig_(sig), scope_(std::move(scope)) {}

  // ---- lexical ----------------------------------------------------------

  void ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    ws();
    return pos_ >= src_.size();
  }

  char peek() {
    ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool peek_is(std::string_view s) {
    ws();
    return src_.substr(pos_, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (!peek_is(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) error("expected '" + std::string(s) + "'");
  }

  // Identifier keyword with a word boundary after it.
  bool peek_keyword(std::string_view w) {
    ws();
    if (src_.substr(pos_, w.size()) != w) return false;
    std::size_t end = pos_ + w.size();
    return end >= src_.size() || !ident_char(src_[end]);
  }

  bool accept_keyword(std::string_view w) {
    if (!peek_keyword(w)) return false;
    pos_ += w.size();
    return true;
  }

  std::string ident() {
    ws();
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) error("expected an identifier");
    std::size_t b = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(b, pos_ - b));
  }

  // Constant names may start with a digit ('3).
  std::string constant_name() {
    std::size_t b = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    if (b == pos_) error("expected a constant name");
    return std::string(src_.substr(b, pos_ - b));
  }

  int nat() {
    ws();
    std::size_t b = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (b == pos_) error("expected a number");
    return std::stoi(std::string(src_.substr(b, pos_ - b)));
  }

  std::string word() {  // rule names: letters, digits and dashes
    ws();
    std::size_t b = pos_;
    while (pos_ < src_.size() && (ident_char(src_[pos_]) || src_[pos_] == '-')) ++pos_;
    if (b == pos_) error("expected a rule name");
    return std::string(src_.substr(b, pos_ - b));
  }

  int line_at(std::size_t p) const {
    int line = 1;
    for (std::size_t i = 0; i < p && i < src_.size(); ++i)
      if (src_[i] == '\n') ++line;
    return line;
  }

  [[noreturn]] void error(const std::string& what) const { error_at(pos_, what); }

  [[noreturn]] void error_at(std::size_t p, const std::string& what) const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < p && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::Syntax, std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }

  [[noreturn]] void reference(const std::string& what) const {
    fail(ErrorKind::Reference, std::to_string(line_at(pos_)) + ": " + what);
  }

  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }
  Scope& scope() { return scope_; }
  void set_signature(const Signature* s) { sig_ = s; }

  // ---- types ------------------------------------------------------------

  Type type() {
    Type t = type_atom();
    if (accept("->")) return Type::function({t}, type());
    return t;
  }

  Type type_atom() {
    if (accept("*")) {
      int n = nat();
      if (n < 1) error("construction types start at *1");
      return Type::construction(n);
    }
    if (accept("(")) {
      std::vector<Type> list{type()};
      while (accept(",")) list.push_back(type());
      expect(")");
      if (accept("->")) return Type::function(std::move(list), type());
      if (list.size() != 1) error("parameter list without '->'");
      return list.front();
    }
    if (accept_keyword("o")) return Type::truth();
    if (accept_keyword("i")) return Type::individual();
    if (accept_keyword("w")) return Type::world();
    error("expected a type");
  }

  // ---- constructions ----------------------------------------------------

  Construction construction() {
    if (accept("\\")) {
      std::vector<Variable> binders;
      do {
        std::size_t at = pos_;
        std::string name = ident();
        if (reserved(name)) error_at(at, "'" + name + "' is reserved");
        expect(":");
        binders.push_back(Variable{name, type()});
      } while (accept(","));
      expect(".");
      Scope saved = scope_;
      for (const auto& b : binders) scope_.insert_or_assign(b.name, b.type);
      Construction body = construction();
      scope_ = std::move(saved);
      try {
        return Construction::abstraction(std::move(binders), std::move(body));
      } catch (const Error& e) {
        error(e.what());
      }
    }
    return postfix();
  }

  Construction postfix() {
    Construction c = atom();
    while (peek() == '(') {
      accept("(");
      std::vector<Construction> operands{construction()};
      while (accept(",")) operands.push_back(construction());
      expect(")");
      c = Construction::application(std::move(c), std::move(operands));
    }
    return c;
  }

  Construction constant_ref() {
    std::size_t at = pos_;
    std::string name = constant_name();
    std::optional<Type> instance;
    if (accept("<")) {
      instance = type();
      expect(">");
    }
    if (name == builtin::kBot) error_at(at, "write bot<t> without a quote mark");
    if (!builtin::is_builtin(name) && !(sig_ && sig_->declares(name))) reference("undeclared constant '" + name + "'");
    if (builtin::is_instantiated(name) && !instance) error_at(at, "'" + name + " needs a type instantiation <t>");
    if (!builtin::is_instantiated(name) && instance) error_at(at, "'" + name + " takes no type instantiation");
    return Construction::constant(std::move(name), std::move(instance));
  }

  Construction variable_ref() {
    std::size_t at = pos_;
    std::string name = ident();
    if (reserved(name)) error_at(at, "'" + name + "' is reserved");
    auto it = scope_.find(name);
    if (it == scope_.end()) {
      pos_ = at;
      reference("undeclared variable '" + name + "'");
    }
    return Construction::variable(name, it->second);
  }

  Construction atom() {
    char c = peek();
    if (c == '[') {
      accept("[");
      Construction inner = construction();
      expect("]");
      return inner;
    }
    if (c == '\'') {
      ++pos_;
      Construction k = constant_ref();
      if (accept("@")) {
        Construction operand = peek() == '\'' ? (++pos_, constant_ref()) : variable_ref();
        return Construction::application(std::move(k), {std::move(operand)});
      }
      return k;
    }
    if (accept_keyword("quote")) {
      expect("{");
      Construction q = construction();
      expect("}");
      return Construction::quote(std::move(q));
    }
    if (accept_keyword("bot")) {
      expect("<");
      Type t = type();
      expect(">");
      return mk::bot(std::move(t));
    }
    if (ident_start(c)) return variable_ref();
    error("expected a construction");
  }

  Match match_rest(Construction lhs) {
    expect(":");
    Type t = type();
    if (accept("!")) return Match::improper(std::move(lhs), std::move(t));
    std::size_t at = pos_;
    Construction rhs = postfix();
    if (!is_simple(rhs)) error_at(at, "match right-hand side must be a variable or acquisition");
    return Match(std::move(lhs), std::move(t), std::move(rhs));
  }

  Match match() { return match_rest(construction()); }

  MatchSet match_set() {
    expect("[");
    MatchSet out;
    if (accept("]")) return out;
    do out.insert(match());
    while (accept(","));
    expect("]");
    return out;
  }

  Sequent sequent() {
    MatchSet gamma = match_set();
    expect("=>");
    Match m = match();
    return Sequent(std::move(gamma), std::move(m));
  }

  // ---- rule parameters --------------------------------------------------

  Param param() {
    if (accept_keyword("type")) return type();
    if (accept("@")) {
      Path p;
      if (is_digit(peek())) {
        p.push_back(nat());
        while (accept(".")) p.push_back(nat());
      }
      return p;
    }
    std::size_t start = pos_;
    if (peek() == '[') {
      accept("[");
      if (accept("]")) return MatchSet{};
      construction();
      bool is_set = peek() == ':';
      reset(start);
      if (is_set) return match_set();
    }
    if (ident_start(peek())) {
      ws();
      start = pos_;
      std::string name = ident();
      if (!reserved(name) && accept(":")) {
        Type t = type();
        if (peek() == ';' || peek() == ')') return Variable{name, t};
      }
      reset(start);
    }
    Construction c = construction();
    if (peek() == ':') return match_rest(std::move(c));
    return c;
  }

  Params params() {
    Params out;
    expect("(");
    if (accept(")")) return out;
    do out.push_back(param());
    while (accept(";"));
    expect(")");
    return out;
  }

  // ---- values -----------------------------------------------------------

  Value value(const Type& t, const Frame& frame) {
    switch (t.kind()) {
      case Type::Kind::Base: {
        std::size_t at = pos_;
        std::string name = ident();
        auto idx = frame.index(t.base_type(), name);
        if (!idx) error_at(at, "'" + name + "' is not an element of " + print(t));
        return Value::element(t.base_type(), *idx);
      }
      case Type::Kind::Construction: {
        if (!accept_keyword("quote")) error("expected quote{...}");
        expect("{");
        Construction q = construction();
        expect("}");
        return Value::quoted(std::move(q));
      }
      case Type::Kind::Function: {
        expect("{");
        FunctionTable table;
        if (accept("}")) return Value::function(std::move(table));
        do {
          std::size_t at = pos_;
          expect("(");
          Tuple key;
          for (std::size_t i = 0; i < t.params().size(); ++i) {
            if (i) expect(",");
            key.push_back(value(t.params()[i], frame));
          }
          expect(")");
          expect("->");
          Value v = value(t.result(), frame);
          if (!table.emplace(std::move(key), std::move(v)).second) error_at(at, "duplicate table entry");
        } while (accept(","));
        expect("}");
        return Value::function(std::move(table));
      }
    }
    error("unsupported value");
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  const Signature* sig_;
  Scope scope_;
};

template <class F>
auto whole(std::string_view text, const Signature* sig, const Scope& scope, F f) {
  Parser p(text, sig, scope);
  auto out = f(p);
  if (!p.at_end()) p.error("unexpected trailing input");
  return out;
}

Theory theory_items(Parser& p, std::vector<Span>* spans) {
  Theory th;
  while (!p.at_end()) {
    std::size_t b = p.pos();
    if (p.accept_keyword("const")) {
      p.ws();
      std::size_t at = p.pos();
      std::string name = p.constant_name();
      p.expect(":");
      Type t = p.type();
      try {
        th.signature.declare(name, t);
      } catch (const Error& e) {
        p.error_at(at, e.what());
      }
    } else if (p.accept_keyword("var")) {
      std::size_t at = p.pos();
      std::string name = p.ident();
      if (reserved(name)) p.error_at(at, "'" + name + "' is reserved");
      p.expect(":");
      Type t = p.type();
      for (const auto& v : th.variables)
        if (v.name == name) p.error_at(at, "variable '" + name + "' declared twice");
      th.variables.push_back(Variable{name, t});
    } else {
      p.error("expected 'const' or 'var'");
    }
    if (spans) spans->push_back(Span{b, p.pos(), p.line_at(b)});
  }
  return th;
}

Model model_items(Parser& p, const Theory& theory, std::vector<Span>* spans) {
  Frame frame;
  bool have_i = false;
  bool have_w = false;
  std::vector<std::pair<std::string, Value>> values;
  while (!p.at_end()) {
    std::size_t b = p.pos();
    if (p.accept_keyword("domain")) {
      std::size_t at = p.pos();
      Type t = p.type_atom();
      if (!t.is_base() || t.is(BaseType::Truth)) p.error_at(at, "only the domains of i and w are declared");
      bool& have = t.is(BaseType::Individual) ? have_i : have_w;
      if (have) p.error_at(at, "domain declared twice");
      if (!values.empty()) p.error_at(at, "domains must precede constants");
      have = true;
      auto& d = t.is(BaseType::Individual) ? frame.individuals : frame.worlds;
      p.expect("=");
      p.expect("{");
      if (!p.accept("}")) {
        do {
          std::size_t e = p.pos();
          std::string name = p.ident();
          if (std::find(d.begin(), d.end(), name) != d.end()) p.error_at(e, "duplicate element '" + name + "'");
          d.push_back(name);
        } while (p.accept(","));
        p.expect("}");
      }
      if (d.empty()) p.error_at(at, "domains must be nonempty");
    } else if (p.accept_keyword("const")) {
      p.ws();
      std::size_t at = p.pos();
      std::string name = p.constant_name();
      p.expect(":");
      Type t = p.type();
      auto declared = theory.signature.lookup(name, std::nullopt);
      if (!declared || builtin::is_builtin(name)) p.reference("model interprets undeclared constant '" + name + "'");
      if (*declared != t) p.error_at(at, "type of '" + name + "' differs from the theory's " + print(*declared));
      for (const auto& [n, v] : values)
        if (n == name) p.error_at(at, "constant '" + name + "' interpreted twice");
      p.expect("=");
      values.emplace_back(name, p.value(t, frame));
    } else {
      p.error("expected 'domain' or 'const'");
    }
    if (spans) spans->push_back(Span{b, p.pos(), p.line_at(b)});
  }
  Model m(theory.signature, frame);
  for (auto& [name, v] : values) m.interpret(name, std::move(v));
  m.validate();
  return m;
}

ProofScript proof_items(Parser& p, std::vector<Span>* spans) {
  ProofScript script;
  std::size_t b = p.pos();
  if (!p.accept_keyword("proof")) p.error("expected 'proof <name>'");
  script.name = p.ident();
  if (spans) spans->push_back(Span{b, p.pos(), p.line_at(b)});
  while (!p.at_end()) {
    b = p.pos();
    int line = p.line_at(b);
    if (p.accept_keyword("var")) {
      std::size_t at = p.pos();
      std::string name = p.ident();
      if (reserved(name)) p.error_at(at, "'" + name + "' is reserved");
      p.expect(":");
      Type t = p.type();
      script.variables.push_back(Variable{name, t});
      p.scope().insert_or_assign(name, t);
    } else if (p.accept_keyword("hyp")) {
      std::size_t at = p.pos();
      std::string name = p.ident();
      for (const auto& h : script.hypotheses)
        if (h.name == name) p.error_at(at, "hypothesis '" + name + "' declared twice");
      p.expect("|-");
      script.hypotheses.push_back(ProofHypothesis{name, p.sequent(), line});
    } else if (is_digit(p.peek())) {
      std::size_t at = p.pos();
      std::string id = std::to_string(p.nat());
      for (const auto& s : script.steps)
        if (s.id == id) p.error_at(at, "step " + id + " declared twice");
      p.expect(":");
      std::string rule = p.word();
      std::vector<std::string> premises;
      Params params;
      while (!p.peek_is("|-")) {
        if (p.at_end()) p.error("expected '|-'");
        if (p.peek() == '(') {
          for (auto& prm : p.params()) params.push_back(std::move(prm));
        } else if (is_digit(p.peek())) {
          premises.push_back(std::to_string(p.nat()));
        } else {
          premises.push_back(p.ident());
        }
      }
      p.expect("|-");
      ProofStep step{id, rule, std::move(premises), std::move(params), p.sequent(), line};
      script.steps.push_back(std::move(step));
    } else {
      p.error("expected 'var', 'hyp' or a numbered step");
    }
    if (spans) spans->push_back(Span{b, p.pos(), p.line_at(b)});
  }
  return script;
}

}  // namespace

// ---------------------------------------------------------------------------

Type parse_type(std::string_view text) {
  return whole(text, nullptr, {}, [](Parser& p) { return p.type(); });
}

Construction parse_construction(std::string_view text, const Signature& signature, const Scope& scope) {
  return whole(text, &signature, scope, [](Parser& p) { return p.construction(); });
}

Match parse_match(std::string_view text, const Signature& signature, const Scope& scope) {
  return whole(text, &signature, scope, [](Parser& p) { return p.match(); });
}

Sequent parse_sequent(std::string_view text, const Signature& signature, const Scope& scope) {
  return whole(text, &signature, scope, [](Parser& p) { return p.sequent(); });
}

Theory parse_theory(std::string_view text) {
  Parser p(text, nullptr, {});
  return theory_items(p, nullptr);
}

Model parse_model(std::string_view text, const Theory& theory) {
  Parser p(text, &theory.signature, theory.scope());
  return model_items(p, theory, nullptr);
}

Sequent parse_sequent_file(std::string_view text, const Theory& theory) {
  return parse_sequent(text, theory.signature, theory.scope());
}

ProofScript parse_proof(std::string_view text, const Theory& theory) {
  Parser p(text, &theory.signature, theory.scope());
  return proof_items(p, nullptr);
}

SourceDocument parse_file(DocumentKind kind, std::string_view text, const Theory* theory) {
  static const Theory empty;
  const Theory& th = theory ? *theory : empty;
  std::vector<Span> spans;
  Parser p(text, &th.signature, th.scope());
  switch (kind) {
    case DocumentKind::Theory: {
      Theory t = theory_items(p, &spans);
      return SourceDocument{kind, std::move(t), std::move(spans)};
    }
    case DocumentKind::Model: {
      Model m = model_items(p, th, &spans);
      return SourceDocument{kind, std::move(m), std::move(spans)};
    }
    case DocumentKind::Sequent: {
      Sequent s = p.sequent();
      if (!p.at_end()) p.error("unexpected trailing input");
      spans.push_back(Span{0, text.size(), 1});
      return SourceDocument{kind, std::move(s), std::move(spans)};
    }
    case DocumentKind::Proof: {
      ProofScript s = proof_items(p, &spans);
      return SourceDocument{kind, std::move(s), std::move(spans)};
    }
  }
  fail(ErrorKind::Syntax, "unknown document kind");
}

// ---------------------------------------------------------------------------
// Printers

std::string print(const Theory& t) {
  std::string out;
  for (const auto& [name, type] : t.signature.constants()) out += "const " + name + " : " + print(type) + "\n";
  for (const auto& v : t.variables) out += "var " + v.name + " : " + print(v.type) + "\n";
  return out;
}

std::string print_value(const Value& v, const Type& t, const Frame& frame) {
  switch (t.kind()) {
    case Type::Kind::Base: return frame.name(t.base_type(), v.index());
    case Type::Kind::Construction: return "quote{" + print(v.construction()) + "}";
    case Type::Kind::Function: {
      if (v.table().empty()) return "{}";
      std::string out = "{ ";
      bool first = true;
      for (const auto& [key, val] : v.table()) {
        if (!first) out += ", ";
        first = false;
        out += "(";
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (i) out += ", ";
          out += print_value(key[i], t.params()[i], frame);
        }
        out += ") -> " + print_value(val, t.result(), frame);
      }
      return out + " }";
    }
  }
  return "?";
}

std::string print(const Model& m) {
  auto domain = [](const std::vector<std::string>& d) {
    std::string out = "{";
    for (std::size_t i = 0; i < d.size(); ++i) out += (i ? ", " : "") + d[i];
    return out + "}";
  };
  std::string out = "domain i = " + domain(m.frame().individuals) + "\n";
  out += "domain w = " + domain(m.frame().worlds) + "\n";
  for (const auto& [name, type] : m.signature().constants()) {
    auto it = m.interpretation().find(name);
    if (it == m.interpretation().end()) continue;
    out += "const " + name + " : " + print(type) + " = " + print_value(it->second, type, m.frame()) + "\n";
  }
  return out;
}

std::string print_assignment(const Assignment& a, const std::map<std::string, Type>& types, const Frame& frame) {
  std::string out;
  for (const auto& [name, value] : a) {
    if (!out.empty()) out += ", ";
    auto it = types.find(name);
    out += name + " = " + (it != types.end() ? print_value(value, it->second, frame) : std::string("?"));
  }
  return out;
}

std::string print(const ProofScript& p) {
  std::string out = "proof " + p.name + "\n";
  for (const auto& v : p.variables) out += "var " + v.name + " : " + print(v.type) + "\n";
  for (const auto& h : p.hypotheses) out += "hyp " + h.name + " |- " + print(h.sequent) + "\n";
  for (const auto& s : p.steps) {
    out += s.id + ": " + s.rule;
    for (const auto& r : s.premises) out += " " + r;
    if (!s.params.empty()) {
      out += " (";
      for (std::size_t i = 0; i < s.params.size(); ++i) out += (i ? " ; " : "") + print(s.params[i]);
      out += ")";
    }
    out += " |- " + print(s.claimed) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Reference, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ttstar
