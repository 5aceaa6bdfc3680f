#pragma once

#include <string>
#include <vector>

#include "fpsc/presentation.hpp"
#include "fpsc/word.hpp"

namespace testutil {

// Two rank-2 free-abelian factors A = <a,b> and C = <c,d>.
inline fpsc::Presentation ac_factors() {
  fpsc::Presentation p;
  p.factors.push_back({"A", fpsc::FactorKind::FreeAbelian, 2, {"a", "b"}});
  p.factors.push_back({"C", fpsc::FactorKind::FreeAbelian, 2, {"c", "d"}});
  return p;
}

// Two rank-1 free factors X = <x> and Y = <y>.
inline fpsc::Presentation xy_factors() {
  fpsc::Presentation p;
  p.factors.push_back({"X", fpsc::FactorKind::Free, 1, {"x"}});
  p.factors.push_back({"Y", fpsc::FactorKind::Free, 1, {"y"}});
  return p;
}

inline fpsc::FPWord word_of(const fpsc::Presentation& p,
                            const std::vector<std::string>& tokens) {
  return fpsc::cyclic_reduce(fpsc::parse_word_tokens(tokens, p));
}

inline fpsc::Presentation with_relators(fpsc::Presentation p,
                                        const std::vector<std::vector<std::string>>& rels) {
  for (const auto& toks : rels) p.relators.push_back(word_of(p, toks));
  p.validate();
  return p;
}

// The staircase relator a^1 c^1 a^2 c^2 ... a^m c^m over ac_factors().
inline fpsc::Presentation grid_pres(int m) {
  std::vector<std::string> toks;
  for (int i = 1; i <= m; ++i) {
    toks.push_back("a^" + std::to_string(i));
    toks.push_back("c^" + std::to_string(i));
  }
  return with_relators(ac_factors(), {toks});
}

}  // namespace testutil
