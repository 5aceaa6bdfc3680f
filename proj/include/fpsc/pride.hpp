#pragma once

#include <string>
#include <vector>

#include "fpsc/presentation.hpp"

namespace fpsc {

// Exponent lists for the six-relator family R_1(x,y) .. R_6(x,y).
struct PrideParams {
  int k = 0;
  std::vector<long long> alpha, beta, gamma, delta, rho, sigma, tau, theta;

  void validate() const;  // k >= 1, every list has k positive entries
};

// The six relators over generators x and y:
//   R_1 = x y^{a_1} x y^{a_2} ... x y^{a_k}
//   R_2 = y x^{b_1} ... y x^{b_k}
//   R_3 = x^{g_1} y^{-d_1} ... x^{g_k} y^{-d_k}
//   R_4 = x y^{r_1} x y^{-r_1} ... x y^{r_k} x y^{-r_k}
//   R_5 = y x^{s_1} y x^{-s_1} ... y x^{s_k} y x^{-s_k}
//   R_6 = (xy)^{t_1} (x^{-1}y^{-1})^{u_1} ... (xy)^{t_k} (x^{-1}y^{-1})^{u_k}
// x and y may sit in the same factor or distinct ones; each word is returned
// normalized and cyclically reduced. A relator that collapses to the identity
// is an input error.
std::vector<FPWord> gen_pride_relators(const std::vector<FactorDescriptor>& factors,
                                       const std::string& x, const std::string& y,
                                       const PrideParams& params);

// k = 3n and the 8k exponents are the consecutive integers 50n .. 50n+24n-1,
// assigned in the fixed order alpha, beta, gamma, delta, rho, sigma, tau, theta.
PrideParams gen_remark_params(int n);

// For every generator pair (x, y) drawn from two distinct factors p < q, emit
// the six relators with k = 3n. The y-side exponents alpha, delta, rho are the
// smallest distinct integers m >= 2 with y^m outside <z> for every other
// generator z of y's factor; beta, gamma, sigma symmetrically for x. tau and
// theta take the smallest distinct values strictly between 10n and 20n.
Presentation gen_corollary_presentation(std::vector<FactorDescriptor> factors, int n);

// Relator exponent sums against the generator basis of all factors.
struct ExponentMatrix {
  std::vector<std::vector<long long>> rows;  // one per relator
  std::vector<std::string> cols;             // generator names, declaration order
};
ExponentMatrix exponent_matrix(const Presentation& pres);

// Diagonal of the integer normal form of m: length min(rows, cols), the
// nonzero entries first and forming a divisibility chain d_1 | d_2 | ...,
// zeros after. Entries that overflow 64-bit arithmetic raise a resource error.
std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m);

// True when the abelianized group is finite, i.e. the exponent matrix has
// full column rank over the rationals.
bool abelianization_torsion_check(const Presentation& pres);

}  // namespace fpsc
