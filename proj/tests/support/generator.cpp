#include "generator.hpp"

#include <array>
#include <vector>

namespace testing {

namespace {

class Gen {
 public:
  Gen(std::uint64_t seed, const GeneratorLimits& limits) : rng_(seed), lim_(limits) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return pick(1, 100) <= percent; }

  std::string term(int depth) {
    static constexpr std::array<const char*, 4> atoms{"a", "b", "c", "[]"};
    static constexpr std::array<const char*, 4> vars{"X", "Y", "Z", "_"};
    int roll = pick(0, depth > 0 ? 9 : 6);
    if (roll <= 2) return atoms[pick(0, 3)];
    if (roll <= 3) return std::to_string(pick(0, 3));
    if (roll <= 6) return vars[pick(0, 3)];
    if (roll == 7) return "f(" + term(depth - 1) + ")";
    if (roll == 8) return "g(" + term(depth - 1) + "," + term(depth - 1) + ")";
    return "[" + term(depth - 1) + "|" + term(depth - 1) + "]";
  }

  std::string call(int p) {
    std::string s = "p" + std::to_string(p);
    int n = arity_[p];
    if (n == 0) return s;
    s += "(";
    for (int i = 0; i < n; ++i) s += (i ? "," : "") + term(lim_.max_term_depth);
    return s + ")";
  }

  std::string builtin() {
    switch (pick(0, 7)) {
      case 0: return "write(" + term(1) + ")";
      case 1: return "nl";
      case 2: return "true";
      case 3: return term(1) + " = " + term(1);
      case 4: return "X \\= " + term(1);
      case 5: return "var(" + term(0) + ")";
      case 6: return "atom(" + term(0) + ")";
      default: return "!";
    }
  }

  std::string db_update(int preds) {
    int p = pick(0, preds - 1);
    switch (pick(0, 2)) {
      case 0: return "assertz(" + call(p) + ")";
      case 1: return "asserta(" + call(p) + ")";
      default: return "retract(" + call(p) + ")";
    }
  }

  GeneratedCase run() {
    int preds = pick(1, lim_.max_predicates);
    arity_.clear();
    for (int p = 0; p < preds; ++p) arity_.push_back(pick(0, 2));
    GeneratedCase out;
    for (int p = 0; p < preds; ++p) {
      int clauses = pick(chance(10) ? 0 : 1, lim_.max_clauses);
      for (int c = 0; c < clauses; ++c) {
        out.program += call(p);
        int body = pick(0, lim_.max_body);
        for (int g = 0; g < body; ++g) {
          out.program += g == 0 ? " :- " : ", ";
          if (lim_.db_update_percent > 0 && chance(lim_.db_update_percent)) {
            out.program += db_update(preds);
          } else if (chance(55)) {
            out.program += call(pick(0, preds - 1));
          } else {
            out.program += builtin();
          }
        }
        out.program += ".\n";
      }
    }
    int goals = pick(1, 2);
    for (int g = 0; g < goals; ++g) {
      out.query += (g ? ", " : "") + call(pick(0, preds - 1));
    }
    out.query += ".";
    return out;
  }

 private:
  std::mt19937_64 rng_;
  GeneratorLimits lim_;
  std::vector<int> arity_;
};

}  // namespace

GeneratedCase random_case(std::uint64_t seed, const GeneratorLimits& limits) {
  return Gen(seed, limits).run();
}

}  // namespace testing
