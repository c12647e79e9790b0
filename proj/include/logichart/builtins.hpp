#pragma once

#include <span>

#include "logichart/term.hpp"

namespace logichart {

// The closed set of built-in predicates.
std::span<const PredicateKey> builtin_predicates();
bool is_builtin(const PredicateKey& key);
bool is_builtin(const Term& goal);

}  // namespace logichart
