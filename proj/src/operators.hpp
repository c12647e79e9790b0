#pragma once

#include <optional>
#include <string_view>

namespace logichart::detail {

enum class OpType { XFX, XFY, YFX, FY };

struct OpDef {
  int priority;
  OpType type;
};

// Fixed operator table; no op/3.
inline std::optional<OpDef> infix_op(std::string_view name) {
  if (name == ":-") return OpDef{1200, OpType::XFX};
  if (name == ",") return OpDef{1000, OpType::XFY};
  if (name == "=" || name == "\\=" || name == "==" || name == "\\==" ||
      name == "is" || name == "<" || name == ">" || name == "=<" ||
      name == ">=" || name == "=:=" || name == "=\\=") {
    return OpDef{700, OpType::XFX};
  }
  if (name == "+" || name == "-") return OpDef{500, OpType::YFX};
  if (name == "*" || name == "/" || name == "mod") return OpDef{400, OpType::YFX};
  return std::nullopt;
}

inline std::optional<OpDef> prefix_op(std::string_view name) {
  if (name == "-") return OpDef{200, OpType::FY};
  return std::nullopt;
}

inline int left_max(const OpDef& op) {
  return op.type == OpType::YFX ? op.priority : op.priority - 1;
}

inline int right_max(const OpDef& op) {
  return (op.type == OpType::XFY || op.type == OpType::FY) ? op.priority
                                                           : op.priority - 1;
}

inline bool is_symbol_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '\\': case '^': case '<':
    case '>': case '=': case '~': case ':': case '.': case '?': case '@':
    case '#': case '&': case '$':
      return true;
    default:
      return false;
  }
}

}  // namespace logichart::detail
