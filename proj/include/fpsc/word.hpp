#pragma once

#include <string>
#include <vector>

#include "fpsc/factor.hpp"

namespace fpsc {

// One syllable of a free-product word: a nontrivial element of factor #factor.
struct Syllable {
  int factor = -1;
  FactorElement elem;

  bool operator==(const Syllable& o) const { return factor == o.factor && elem == o.elem; }
  bool operator!=(const Syllable& o) const { return !(*this == o); }
};

// A word of the free product in normal form: nonempty syllables, adjacent
// syllables in distinct factors. The empty word is the identity.
struct FPWord {
  std::vector<Syllable> syllables;

  int syllable_length() const { return (int)syllables.size(); }
  int letter_length() const;
  bool empty() const { return syllables.empty(); }
};

// Merge adjacent same-factor syllables and drop identity syllables until the
// result is in normal form. Factor indices are validated against `factors`.
FPWord normalize(const std::vector<Syllable>& raw,
                 const std::vector<FactorDescriptor>& factors);

FPWord fp_inverse(const FPWord& w);

// Concatenation followed by normalization (no factor revalidation).
FPWord fp_mul(const FPWord& a, const FPWord& b);

bool is_cyclically_reduced(const FPWord& w);

// h_n^{-1} != h_1, or |w|_* <= 1.
bool is_weakly_cyclically_reduced(const FPWord& w);

// Conjugate w to a cyclically reduced word (merging end syllables into the
// front until the first and last syllables lie in distinct factors).
FPWord cyclic_reduce(const FPWord& w);

// True when w == v^p for some p >= 2 (as a cyclic word this is detected on the
// cyclically reduced core; the caller decides what to do with conjugates).
bool is_proper_power(const FPWord& w);

std::string to_string(const FPWord& w, const std::vector<FactorDescriptor>& factors);

}  // namespace fpsc
