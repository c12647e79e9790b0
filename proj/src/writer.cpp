#include "logichart/writer.hpp"

#include <cctype>

#include "operators.hpp"

namespace logichart {
namespace {

using detail::infix_op;
using detail::is_symbol_char;
using detail::prefix_op;

bool is_solo_atom(const std::string& name) {
  return name == "[]" || name == "!" || name == ";";
}

bool needs_quotes(const std::string& name) {
  if (name.empty()) return true;
  if (is_solo_atom(name)) return false;
  unsigned char first = static_cast<unsigned char>(name[0]);
  if (std::islower(first)) {
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return true;
    }
    return false;
  }
  if (name == ".") return true;
  for (char c : name) {
    if (!is_symbol_char(c)) return true;
  }
  return false;
}

std::string quote(const std::string& name) {
  std::string out = "'";
  for (char c : name) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '\'';
  return out;
}

bool is_operator_atom(const std::string& name) {
  return name != "," && (infix_op(name) || prefix_op(name));
}

class Writer {
 public:
  explicit Writer(const FormatOptions& options) : options_(options) {}

  std::string write(const Term& t, int max_priority, bool operand = false) const {
    switch (t.kind()) {
      case TermKind::Var:
        if (!options_.source_names) return "_G" + std::to_string(t.var_id());
        return (t.name().empty() || t.name() == "_") ? std::string("_") : t.name();
      case TermKind::Integer:
        return std::to_string(t.value());
      case TermKind::Atom: {
        std::string text = atom_text(t.name());
        if (operand && is_operator_atom(t.name())) return "(" + text + ")";
        return text;
      }
      case TermKind::Compound:
        return compound(t, max_priority);
    }
    return {};
  }

 private:
  std::string atom_text(const std::string& name) const {
    if (options_.quoted && needs_quotes(name)) return quote(name);
    return name;
  }

  std::string compound(const Term& t, int max_priority) const {
    if (t.is_list_cell()) return list(t);
    if (t.arity() == 2) {
      if (auto op = infix_op(t.name())) {
        std::string left = write(t.arg(0), detail::left_max(*op), true);
        std::string right = write(t.arg(1), detail::right_max(*op), true);
        std::string text;
        if (t.name() == ",") {
          text = left + "," + right;
        } else if (std::isalpha(static_cast<unsigned char>(t.name()[0]))) {
          text = left + " " + t.name() + " " + right;
        } else {
          text = left;
          if (!left.empty() && is_symbol_char(left.back())) text += ' ';
          text += t.name();
          if (!right.empty() && is_symbol_char(right.front())) text += ' ';
          text += right;
        }
        return op->priority > max_priority ? "(" + text + ")" : text;
      }
    }
    if (t.arity() == 1) {
      if (auto op = prefix_op(t.name())) {
        std::string operand = write(t.arg(0), detail::right_max(*op), true);
        unsigned char first = static_cast<unsigned char>(operand.front());
        bool spaced = is_symbol_char(operand.front()) || std::isdigit(first) ||
                      operand.front() == '(';
        std::string text = t.name() + (spaced ? " " : "") + operand;
        return op->priority > max_priority ? "(" + text + ")" : text;
      }
    }
    std::string out = atom_text(t.name());
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) out += ',';
      out += write(t.arg(i), 999);
    }
    out += ')';
    return out;
  }

  std::string list(const Term& t) const {
    std::string out = "[";
    Term cur = t;
    bool first = true;
    while (cur.is_list_cell()) {
      if (!first) out += ',';
      out += write(cur.arg(0), 999);
      first = false;
      cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
      out += '|';
      out += write(cur, 999);
    }
    out += ']';
    return out;
  }

  const FormatOptions& options_;
};

}  // namespace

std::string format_term(const Term& t, bool quoted) {
  return format_term(t, FormatOptions{quoted, true});
}

std::string format_term(const Term& t, const FormatOptions& options) {
  return Writer(options).write(t, 1200);
}

std::string format_clause(const Term& head, const std::vector<Term>& body,
                          const FormatOptions& options) {
  if (body.empty()) return format_term(head, options);
  return format_term(Term::compound(":-", {head, make_conjunction(body)}), options);
}

}  // namespace logichart
