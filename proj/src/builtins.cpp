#include "logichart/builtins.hpp"

#include <algorithm>
#include <array>

namespace logichart {

std::span<const PredicateKey> builtin_predicates() {
  static const std::array<PredicateKey, 22> kTable{{
      {"true", 0},  {"fail", 0},    {"!", 0},       {"write", 1},  {"nl", 0},
      {"=", 2},     {"\\=", 2},     {"==", 2},      {"\\==", 2},   {"is", 2},
      {"=:=", 2},   {"=\\=", 2},    {"<", 2},       {">", 2},      {"=<", 2},
      {">=", 2},    {"asserta", 1}, {"assertz", 1}, {"retract", 1}, {"var", 1},
      {"nonvar", 1}, {"atom", 1},
  }};
  return kTable;
}

bool is_builtin(const PredicateKey& key) {
  auto table = builtin_predicates();
  return std::find(table.begin(), table.end(), key) != table.end();
}

bool is_builtin(const Term& goal) {
  auto key = predicate_key(goal);
  return key && is_builtin(*key);
}

}  // namespace logichart
