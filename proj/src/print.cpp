#include "ttstar/print.hpp"

namespace ttstar {

std::string print(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
      switch (t.base_type()) {
        case BaseType::Truth: return "o";
        case BaseType::Individual: return "i";
        case BaseType::World: return "w";
      }
      break;
    case Type::Kind::Construction: return "*" + std::to_string(t.construction_order());
    case Type::Kind::Function: {
      std::string out = "(";
      for (std::size_t i = 0; i < t.params().size(); ++i) {
        if (i) out += ",";
        out += print(t.params()[i]);
      }
      out += ")->";
      if (t.result().is_function()) return out + "(" + print(t.result()) + ")";
      return out + print(t.result());
    }
  }
  return "?";
}

namespace {

void print_into(const Construction& x, std::string& out);

void print_operands(const std::vector<Construction>& operands, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i) out += ", ";
    print_into(operands[i], out);
  }
  out += ')';
}

// 'K@w: a plain theory constant applied to a single variable.
bool at_sugar(const Construction& x) {
  return x.is_application() && x.op().is_constant() && !builtin::is_builtin(x.op().constant_name()) &&
         !x.op().instance() && x.operands().size() == 1 && x.operands()[0].is_variable();
}

void print_into(const Construction& x, std::string& out) {
  switch (x.kind()) {
    case Construction::Kind::Variable: out += x.as_variable().name; return;
    case Construction::Kind::Constant:
      if (x.is_bot()) {
        out += "bot<" + print(*x.instance()) + ">";
        return;
      }
      out += "'" + x.constant_name();
      if (x.instance()) out += "<" + print(*x.instance()) + ">";
      return;
    case Construction::Kind::Quote:
      out += "quote{";
      print_into(x.quoted(), out);
      out += "}";
      return;
    case Construction::Kind::Application:
      if (at_sugar(x)) {
        out += "'" + x.op().constant_name() + "@" + x.operands()[0].as_variable().name;
        return;
      }
      if (x.op().is_abstraction()) {
        out += '[';
        print_into(x.op(), out);
        out += ']';
      } else {
        print_into(x.op(), out);
      }
      print_operands(x.operands(), out);
      return;
    case Construction::Kind::Abstraction:
      out += '\\';
      for (std::size_t i = 0; i < x.binders().size(); ++i) {
        if (i) out += ", ";
        out += x.binders()[i].name + ":" + print(x.binders()[i].type);
      }
      out += ". ";
      print_into(x.body(), out);
      return;
  }
}

}  // namespace

std::string print(const Construction& x) {
  std::string out;
  print_into(x, out);
  return out;
}

std::string print(const Match& m) {
  return print(m.lhs()) + " :" + print(m.type()) + " " + (m.rhs() ? print(*m.rhs()) : std::string("!"));
}

std::string print(const Sequent& s) {
  std::string out = "[";
  bool first = true;
  for (const auto& m : s.antecedent) {
    if (!first) out += ", ";
    first = false;
    out += print(m);
  }
  return out + "] => " + print(s.succedent);
}

std::string print(const Path& p) {
  std::string out = "@";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace ttstar
