#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "torec/errors.hpp"
#include "torec/frequency.hpp"

namespace torec {

using cplx = std::complex<double>;

// Coefficient accessor: any callable giving f-hat(xi) for arbitrary xi.
using CoeffFn = std::function<cplx(const FrequencyIndex&)>;

// Real scalar field sampled on the uniform grid x_j = 2*pi*j/G, j in [0,G)^d,
// stored row-major (first axis slowest).
struct GridField {
  int dim = 0;
  int points_per_axis = 0;
  std::vector<double> values;

  std::int64_t size() const { return std::int64_t(values.size()); }
  double& at(std::int64_t flat) { return values[std::size_t(flat)]; }
  double at(std::int64_t flat) const { return values[std::size_t(flat)]; }
};

// Trigonometric polynomial f(x) = sum_{|xi|_inf <= m} c(xi) e^{i xi.x} on T^d.
// Dense block storage in lexicographic order of xi.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int dim, int degree);

  static TrigPolynomial from_accessor(const CoeffFn& f, int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::int64_t coeff_count() const { return std::int64_t(coeffs_.size()); }

  cplx coeff(const FrequencyIndex& xi) const;  // zero outside the block
  void set_coeff(const FrequencyIndex& xi, cplx v);

  const std::vector<cplx>& raw() const { return coeffs_; }
  std::vector<cplx>& raw() { return coeffs_; }

  CoeffFn accessor() const;

  // c(xi) <- (c(xi) + conj(c(-xi)))/2; makes the synthesized field real.
  void hermitian_symmetrize();
  // max |c(xi) - conj(c(-xi))| over the block.
  double hermitian_defect() const;

  TrigPolynomial& operator+=(const TrigPolynomial& other);
  TrigPolynomial& operator-=(const TrigPolynomial& other);
  TrigPolynomial& operator*=(double s);

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::vector<cplx> coeffs_;
};

// Pointwise evaluation by direct summation; O((2m+1)^d) per point.
cplx evaluate_at(const TrigPolynomial& f, const std::vector<double>& x);

// Samples f on the G^d uniform grid. Requires G >= 2*degree+1: coarser grids
// alias distinct frequencies and are refused rather than silently folded.
GridField evaluate_on_grid(const TrigPolynomial& f, int points_per_axis);

// Componentwise spectral derivative: c_j(xi) = i*xi_j*c(xi).
std::vector<TrigPolynomial> gradient(const TrigPolynomial& f);

// (G^-d sum |v|^p)^(1/p) over grid values; p = infinity -> max.
// Defined for p >= 1.
double lp_norm_grid(const GridField& v, double p);
double lp_norm_grid(const std::vector<GridField>& channels, double p);

// Normalized-counting-measure L2 norm of the coefficient vector,
// equal to the grid L2 norm whenever G >= 2m+1 (Parseval).
double l2_norm_coeffs(const TrigPolynomial& f);

}  // namespace torec
