#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpsc/errors.hpp"

namespace fpsc {

enum class FactorKind { Free, FreeAbelian };

// One free factor of the free product: a free or free-abelian group of given rank
// with named generators.
struct FactorDescriptor {
  std::string name;
  FactorKind kind = FactorKind::Free;
  int rank = 0;
  std::vector<std::string> generators;  // size == rank, globally distinct names

  void validate() const;
};

// An element of a single factor.
//
// Free factors store a freely reduced word; a letter is +-(gen+1) so that
// negation is inversion. Free-abelian factors store an exponent vector.
struct FactorElement {
  FactorKind kind = FactorKind::Free;
  std::vector<int> letters;        // Free
  std::vector<long long> exps;     // FreeAbelian

  static FactorElement identity(FactorKind k, int rank);
  static FactorElement from_letters(std::vector<int> ls);          // reduces
  static FactorElement from_exps(std::vector<long long> es);

  bool is_identity() const;
  int letter_length() const;       // word length resp. L1 norm
  FactorElement inverse() const;

  bool operator==(const FactorElement& o) const;
  bool operator!=(const FactorElement& o) const { return !(*this == o); }

  // Shape check against a factor of the given kind and rank.
  bool conforms_to(FactorKind k, int rank) const;

  // Compact byte encoding, used for interning and deterministic ordering.
  std::string key() const;
};

// Product a*b inside one factor (free reduction resp. vector addition).
FactorElement factor_mul(const FactorElement& a, const FactorElement& b);

// Largest common left divisor of a and b, or nullopt when only the identity
// divides both. "Divisor" is the geometric notion: a prefix of the reduced word
// for free factors, a componentwise-between lattice point for free-abelian ones.
std::optional<FactorElement> common_left_divisor(const FactorElement& a,
                                                 const FactorElement& b);

// All right divisors s of h (h = x*s with x possibly trivial), excluding the
// identity but including h itself; paired with the complementary prefix x.
struct RightDivisorSplit {
  FactorElement suffix;   // nontrivial
  FactorElement prefix;   // h = prefix * suffix; trivial iff suffix == h
};
std::vector<RightDivisorSplit> right_divisor_splits(const FactorElement& h);

// Number of proper right divisors of h (cheap, no materialization).
long long proper_right_divisor_count(const FactorElement& h);

// Does g lie in the cyclic subgroup generated by z (inside one factor)?
// Returns the witness exponent t with z^t == g when it exists.
std::optional<long long> factor_cyclic_membership(const FactorElement& g,
                                                  const FactorElement& z);

// Does y^m lie in the cyclic subgroup generated by z? Never materializes y^m:
// free elements go through primitive-root extraction, free-abelian ones solve
// the scalar equation m*y == t*z. Mixing shapes is an input error.
bool factor_cyclic_membership(const FactorElement& y, long long m,
                              const FactorElement& z);

}  // namespace fpsc
