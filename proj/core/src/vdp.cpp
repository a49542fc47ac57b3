#include "torec/vdp.hpp"

#include <cmath>
#include <cstdlib>

namespace torec {

double vdp_multiplier(int m, int k) {
  if (m <= 0 || m % 2 != 0) throw ParameterError("vdp_multiplier: m must be even and positive");
  const int a = std::abs(k);
  if (2 * a <= m) return 1.0;
  if (a <= m) return 2.0 * (1.0 - double(a) / double(m + 1));
  return 0.0;
}

TrigPolynomial vdp_sum(const CoeffFn& f, int m, int dim) {
  if (m <= 0 || m % 2 != 0) throw ParameterError("vdp_sum: m must be even and positive");
  if (dim < 1) throw ParameterError("vdp_sum: dim must be positive");
  TrigPolynomial out(dim, m);
  std::int64_t i = 0;
  for_each_in_cube(m, dim, [&](const FrequencyIndex& xi) {
    double w = 1.0;
    for (int c : xi) w *= vdp_multiplier(m, c);
    out.raw()[std::size_t(i++)] = (w == 0.0) ? cplx{0.0, 0.0} : w * f(xi);
  });
  return out;
}

BandDecomposition band_decompose(const CoeffFn& f, int levels, int dim) {
  if (levels < 1) throw ParameterError("band_decompose: need at least one level");
  BandDecomposition bd;
  bd.dim = dim;
  bd.levels = levels;
  bd.pieces.reserve(std::size_t(levels));
  bd.pieces.push_back(vdp_sum(f, 2, dim));
  for (int k = 1; k < levels; ++k) {
    TrigPolynomial hi = vdp_sum(f, 1 << (k + 1), dim);
    const TrigPolynomial lo = vdp_sum(f, 1 << k, dim);
    // Embed the coarser block before subtracting; outside lo's block the
    // difference is just hi.
    std::int64_t i = 0;
    for_each_in_cube(hi.degree(), dim, [&](const FrequencyIndex& xi) {
      if (linf_norm(xi) <= lo.degree()) hi.raw()[std::size_t(i)] -= lo.coeff(xi);
      ++i;
    });
    bd.pieces.push_back(std::move(hi));
  }
  return bd;
}

double besov_proxy(const CoeffFn& f, int source_degree, int dim, double s, int k_max) {
  if (k_max < 0) throw ParameterError("besov_proxy: k_max must be non-negative");
  if (source_degree < 0) throw ParameterError("besov_proxy: source_degree must be non-negative");

  // f as a finite block; frequencies beyond source_degree are zero by contract.
  const TrigPolynomial full = TrigPolynomial::from_accessor(f, dim, source_degree);

  double best = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const int m = 1 << (k + 1);
    TrigPolynomial diff = full;
    // Subtract V_m f on the larger of the two blocks.
    if (m >= source_degree) {
      diff = TrigPolynomial(dim, m);
      std::int64_t i = 0;
      for_each_in_cube(m, dim, [&](const FrequencyIndex& xi) {
        double w = 1.0;
        for (int c : xi) w *= vdp_multiplier(m, c);
        diff.raw()[std::size_t(i++)] = (1.0 - w) * full.coeff(xi);
      });
    } else {
      std::int64_t i = 0;
      for_each_in_cube(source_degree, dim, [&](const FrequencyIndex& xi) {
        if (linf_norm(xi) <= m) {
          double w = 1.0;
          for (int c : xi) w *= vdp_multiplier(m, c);
          diff.raw()[std::size_t(i)] -= w * full.coeff(xi);
        }
        ++i;
      });
    }
    const int G = 2 * diff.degree() + 1;
    const double term = std::pow(2.0, double(k) * s) * lp_norm_grid(evaluate_on_grid(diff, G), 1.0);
    best = std::max(best, term);
  }
  return best;
}

}  // namespace torec
