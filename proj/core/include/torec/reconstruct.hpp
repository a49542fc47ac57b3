#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "torec/measurements.hpp"
#include "torec/trig_polynomial.hpp"

namespace torec {

// Zero-fill reconstruction: measured coefficients placed in the block
// |xi|_inf <= m. Every block frequency must be measured.
TrigPolynomial partial_sum_recon(const Measurements& meas, int m);

// De la Vallee Poussin filtered reconstruction V_m of the measurements.
TrigPolynomial vdp_recon(const Measurements& meas, int m);

// B: degree-m coefficient block -> d real gradient-sample channels on the
// G^d grid (spectral differentiation, grid synthesis, real part under
// Hermitian symmetry). B^T B is diagonal with entries |xi|^2 under the
// normalized grid inner product, which gives the ADMM x-update in closed
// form. Requires G >= 4m+1; the coarsest Marcinkiewicz-Zygmund grid the
// solver's norm equivalences rely on.
class GradientGridOperator {
 public:
  GradientGridOperator(int dim, int degree, int points_per_axis);
  ~GradientGridOperator();
  GradientGridOperator(GradientGridOperator&&) noexcept;
  GradientGridOperator& operator=(GradientGridOperator&&) noexcept;

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int points_per_axis() const { return G_; }
  std::int64_t block_size() const { return block_; }
  std::int64_t grid_size() const { return grid_; }

  // |xi|^2 for each block index, in lexicographic block order.
  const std::vector<double>& diag() const { return diag_; }

  void apply(const std::vector<cplx>& coeffs, std::vector<std::vector<double>>& out) const;
  void adjoint(const std::vector<std::vector<double>>& fields, std::vector<cplx>& out) const;

  std::vector<std::vector<double>> apply(const TrigPolynomial& f) const;

 private:
  int dim_, degree_, G_;
  std::int64_t block_, grid_;
  std::vector<double> diag_;
  std::vector<std::vector<double>> xi_axis_;   // xi_j per block index
  std::vector<std::int64_t> grid_index_;      // block index -> wrapped grid index
  mutable std::unique_ptr<class Dft> dft_;
};

struct AdmmParams {
  double rho = 1.0;
  std::int64_t max_iter = 5000;
  double eps_primal = 1e-7;  // relative
  double eps_dual = 1e-7;    // relative
  int oversample = 4;        // G = oversample*m + 1
  std::int64_t check_every = 10;
};

struct ConvergenceReport {
  std::int64_t iterations = 0;
  double final_objective = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  bool converged = false;
  double wall_time_ms = 0.0;
};

struct BvMinResult {
  TrigPolynomial recon;
  ConvergenceReport report;
};

// Total-variation minimizer over degree-m trig polynomials whose block
// coefficients at the measured frequencies are pinned to the measurements.
//   min (1/G^d) sum_j |grad f(x_j)|_2   s.t.  f-hat(xi_i) = y_i
// Split z = Bx and alternate: closed-form diagonal x-update on the free
// coefficients, isotropic soft-threshold z-update, dual ascent on u.
// Pins are enforced exactly at every iterate; the best-objective iterate is
// returned, so the reported objective is non-increasing in the iteration
// count. Requires m even and m >= 2*max|xi| over the measurements.
BvMinResult bv_min_admm(const Measurements& meas, int m, const AdmmParams& params = {});

// max_i |f-hat(xi_i) - y_i| over the measurement set.
double feasibility_residual(const TrigPolynomial& f, const Measurements& meas);

// (1/G^d) sum_j |grad f(x_j)|_2 on the G^d grid.
double bv_objective_grid(const TrigPolynomial& f, int points_per_axis);

}  // namespace torec
