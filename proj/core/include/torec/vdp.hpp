#pragma once

#include <vector>

#include "torec/trig_polynomial.hpp"

namespace torec {

// One-dimensional de la Vallee Poussin multiplier, m even and positive:
//   nu_m(k) = 1                     |k| <= m/2
//           = 2(1 - |k|/(m+1))      m/2 < |k| <= m
//           = 0                     |k| > m
double vdp_multiplier(int m, int k);

// V_m f: coefficients prod_j nu_m(xi_j) * f-hat(xi) on the block |xi|_inf <= m.
// Reproduces f exactly when f has degree <= m/2.
TrigPolynomial vdp_sum(const CoeffFn& f, int m, int dim);

// Dyadic band pieces: f_0 = V_2 f, f_k = V_{2^{k+1}} f - V_{2^k} f.
// Coefficients of f_k vanish outside {floor(2^{k-1}) <= |xi|_inf <= 2^{k+1}},
// and sum_{k<r} f_k = V_{2^r} f.
struct BandDecomposition {
  int dim = 0;
  int levels = 0;                     // pieces f_0 .. f_{levels-1}
  std::vector<TrigPolynomial> pieces; // f_k has degree 2^{k+1}
};

BandDecomposition band_decompose(const CoeffFn& f, int levels, int dim);

// Diagnostic smoothness proxy: max_{0<=k<=k_max} 2^{ks} ||f - V_{2^{k+1}} f||_{L1(grid)}.
// The accessor must supply coefficients up to degree 2^{k_max+1}; anything
// beyond source_degree is treated as zero.
double besov_proxy(const CoeffFn& f, int source_degree, int dim, double s, int k_max);

}  // namespace torec
