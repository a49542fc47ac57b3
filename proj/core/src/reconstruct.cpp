#include "torec/reconstruct.hpp"

#include <chrono>
#include <cmath>

#include "torec/dft.hpp"
#include "torec/errors.hpp"
#include "torec/vdp.hpp"

namespace torec {

TrigPolynomial partial_sum_recon(const Measurements& meas, int m) {
  if (m < 0) throw ParameterError("partial_sum_recon: m must be non-negative");
  TrigPolynomial out(meas.dim(), m);
  for_each_in_cube(m, meas.dim(), [&](const FrequencyIndex& xi) {
    const auto v = meas.lookup(xi);
    if (!v) throw ParameterError("partial_sum_recon: block frequency not measured");
    out.set_coeff(xi, *v);
  });
  return out;
}

TrigPolynomial vdp_recon(const Measurements& meas, int m) {
  if (m <= 0 || m % 2 != 0) throw ParameterError("vdp_recon: m must be even and positive");
  TrigPolynomial out(meas.dim(), m);
  for_each_in_cube(m, meas.dim(), [&](const FrequencyIndex& xi) {
    double w = 1.0;
    for (int c : xi) w *= vdp_multiplier(m, c);
    if (w == 0.0) return;
    const auto v = meas.lookup(xi);
    if (!v) throw ParameterError("vdp_recon: frequency with non-zero multiplier not measured");
    out.set_coeff(xi, w * *v);
  });
  return out;
}

GradientGridOperator::~GradientGridOperator() = default;
GradientGridOperator::GradientGridOperator(GradientGridOperator&&) noexcept = default;
GradientGridOperator& GradientGridOperator::operator=(GradientGridOperator&&) noexcept = default;

GradientGridOperator::GradientGridOperator(int dim, int degree, int points_per_axis)
    : dim_(dim), degree_(degree), G_(points_per_axis) {
  if (dim < 1) throw ParameterError("GradientGridOperator: dim must be positive");
  if (degree < 0) throw ParameterError("GradientGridOperator: degree must be non-negative");
  if (G_ < 4 * degree + 1)
    throw ParameterError("GradientGridOperator: G < 4m+1 breaks the grid norm equivalence");
  block_ = cube_count(degree, dim);
  grid_ = 1;
  for (int j = 0; j < dim; ++j) grid_ *= G_;

  diag_.resize(std::size_t(block_));
  xi_axis_.assign(std::size_t(dim), std::vector<double>(std::size_t(block_)));
  grid_index_.resize(std::size_t(block_));
  std::int64_t i = 0;
  for_each_in_cube(degree, dim, [&](const FrequencyIndex& xi) {
    diag_[std::size_t(i)] = l2_norm_sq(xi);
    std::int64_t flat = 0;
    for (int j = 0; j < dim; ++j) {
      xi_axis_[std::size_t(j)][std::size_t(i)] = double(xi[j]);
      flat = flat * G_ + ((xi[j] % G_) + G_) % G_;
    }
    grid_index_[std::size_t(i)] = flat;
    ++i;
  });
  dft_ = std::make_unique<Dft>(dim, G_);
}

void GradientGridOperator::apply(const std::vector<cplx>& coeffs,
                                 std::vector<std::vector<double>>& out) const {
  if (std::int64_t(coeffs.size()) != block_)
    throw ParameterError("GradientGridOperator::apply: wrong coefficient count");
  out.resize(std::size_t(dim_));
  auto* buf = dft_->buffer();
  for (int a = 0; a < dim_; ++a) {
    auto& field = out[std::size_t(a)];
    field.resize(std::size_t(grid_));
    for (std::int64_t k = 0; k < grid_; ++k) buf[k] = cplx{0.0, 0.0};
    const auto& xia = xi_axis_[std::size_t(a)];
    for (std::int64_t i = 0; i < block_; ++i)
      buf[grid_index_[std::size_t(i)]] = cplx{0.0, xia[std::size_t(i)]} * coeffs[std::size_t(i)];
    dft_->run_backward();
    for (std::int64_t k = 0; k < grid_; ++k) field[std::size_t(k)] = buf[k].real();
  }
}

void GradientGridOperator::adjoint(const std::vector<std::vector<double>>& fields,
                                   std::vector<cplx>& out) const {
  if (std::int64_t(fields.size()) != dim_)
    throw ParameterError("GradientGridOperator::adjoint: wrong channel count");
  out.assign(std::size_t(block_), cplx{0.0, 0.0});
  auto* buf = dft_->buffer();
  for (int a = 0; a < dim_; ++a) {
    const auto& field = fields[std::size_t(a)];
    if (std::int64_t(field.size()) != grid_)
      throw ParameterError("GradientGridOperator::adjoint: wrong field size");
    for (std::int64_t k = 0; k < grid_; ++k) buf[k] = cplx{field[std::size_t(k)], 0.0};
    dft_->run_forward();
    const auto& xia = xi_axis_[std::size_t(a)];
    for (std::int64_t i = 0; i < block_; ++i)
      out[std::size_t(i)] += cplx{0.0, -xia[std::size_t(i)]} * buf[grid_index_[std::size_t(i)]];
  }
}

std::vector<std::vector<double>> GradientGridOperator::apply(const TrigPolynomial& f) const {
  if (f.dim() != dim_ || f.degree() != degree_)
    throw ParameterError("GradientGridOperator::apply: polynomial shape mismatch");
  std::vector<std::vector<double>> out;
  apply(f.raw(), out);
  return out;
}

namespace {

double grid_norm2(const std::vector<std::vector<double>>& chans, std::int64_t grid) {
  double s = 0.0;
  for (const auto& ch : chans)
    for (double v : ch) s += v * v;
  return std::sqrt(s / double(grid));
}

}  // namespace

BvMinResult bv_min_admm(const Measurements& meas, int m, const AdmmParams& params) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = meas.dim();
  if (m <= 0 || m % 2 != 0) throw ParameterError("bv_min_admm: m must be even and positive");
  if (meas.size() == 0) throw ParameterError("bv_min_admm: no measurements");
  if (2 * meas.max_linf() > m)
    throw ParameterError("bv_min_admm: m must be at least twice the largest measured |xi|_inf");
  if (params.oversample < 4) throw ParameterError("bv_min_admm: oversample factor must be >= 4");
  if (!(params.rho > 0.0)) throw ParameterError("bv_min_admm: rho must be positive");
  const int G = params.oversample * m + 1;

  GradientGridOperator B(d, m, G);
  const std::int64_t nb = B.block_size();
  const std::int64_t ng = B.grid_size();
  const double rho = params.rho;

  // Pin both xi and -xi so every iterate synthesizes to a real field.
  std::vector<cplx> x(std::size_t(nb), cplx{0.0, 0.0});
  std::vector<char> pinned(std::size_t(nb), 0);
  for (const auto& [xi, v] : meas.entries()) {
    x[std::size_t(cube_offset(xi, m))] = v;
    pinned[std::size_t(cube_offset(xi, m))] = 1;
    x[std::size_t(cube_offset(negate(xi), m))] = std::conj(v);
    pinned[std::size_t(cube_offset(negate(xi), m))] = 1;
  }
  const std::int64_t zero_idx = cube_offset(FrequencyIndex(std::size_t(d), 0), m);

  std::vector<std::vector<double>> gx, z, u(std::size_t(d), std::vector<double>(std::size_t(ng), 0.0));
  std::vector<std::vector<double>> zw(u.size());
  std::vector<cplx> w, scratch;
  B.apply(x, gx);
  z = gx;

  auto objective_of = [&](const std::vector<std::vector<double>>& g) {
    double s = 0.0;
    for (std::int64_t k = 0; k < ng; ++k) {
      double q = 0.0;
      for (int a = 0; a < d; ++a) {
        const double v = g[std::size_t(a)][std::size_t(k)];
        q += v * v;
      }
      s += std::sqrt(q);
    }
    return s / double(ng);
  };

  ConvergenceReport rep;
  std::vector<cplx> x_best = x;
  double best_obj = objective_of(gx);
  double prim = 0.0, dual = 0.0;
  bool converged = false;

  const auto& diag = B.diag();
  std::vector<std::vector<double>> z_old;
  std::int64_t it = 0;
  for (it = 1; it <= params.max_iter; ++it) {
    // x-update: minimize ||Bx - (z - u)||^2 over the free coefficients.
    for (int a = 0; a < d; ++a) {
      auto& za = zw[std::size_t(a)];
      za.resize(std::size_t(ng));
      const auto& zc = z[std::size_t(a)];
      const auto& uc = u[std::size_t(a)];
      for (std::int64_t k = 0; k < ng; ++k)
        za[std::size_t(k)] = zc[std::size_t(k)] - uc[std::size_t(k)];
    }
    B.adjoint(zw, w);
    for (std::int64_t i = 0; i < nb; ++i) {
      if (pinned[std::size_t(i)]) continue;
      if (i == zero_idx) continue;  // zero gradient weight; mean stays put
      x[std::size_t(i)] = w[std::size_t(i)] / diag[std::size_t(i)];
    }

    B.apply(x, gx);
    const double obj = objective_of(gx);
    if (obj < best_obj) {
      best_obj = obj;
      x_best = x;
    }

    // z-update: isotropic soft-threshold of Bx + u at 1/rho; ties collapse to 0.
    const bool check = (it % params.check_every == 0) || it == params.max_iter;
    if (check) z_old = z;
    for (std::int64_t k = 0; k < ng; ++k) {
      double q = 0.0;
      for (int a = 0; a < d; ++a) {
        const double v = gx[std::size_t(a)][std::size_t(k)] + u[std::size_t(a)][std::size_t(k)];
        zw[std::size_t(a)][std::size_t(k)] = v;
        q += v * v;
      }
      const double mag = std::sqrt(q);
      const double scale = (mag * rho > 1.0) ? (1.0 - 1.0 / (rho * mag)) : 0.0;
      for (int a = 0; a < d; ++a)
        z[std::size_t(a)][std::size_t(k)] = scale * zw[std::size_t(a)][std::size_t(k)];
    }
    for (int a = 0; a < d; ++a)
      for (std::int64_t k = 0; k < ng; ++k)
        u[std::size_t(a)][std::size_t(k)] +=
            gx[std::size_t(a)][std::size_t(k)] - z[std::size_t(a)][std::size_t(k)];

    if (!check) continue;

    // Residuals in the normalized norms; tolerances are relative.
    double pr = 0.0;
    for (int a = 0; a < d; ++a)
      for (std::int64_t k = 0; k < ng; ++k) {
        const double r = gx[std::size_t(a)][std::size_t(k)] - z[std::size_t(a)][std::size_t(k)];
        pr += r * r;
      }
    prim = std::sqrt(pr / double(ng));
    for (int a = 0; a < d; ++a)
      for (std::int64_t k = 0; k < ng; ++k)
        z_old[std::size_t(a)][std::size_t(k)] =
            z[std::size_t(a)][std::size_t(k)] - z_old[std::size_t(a)][std::size_t(k)];
    B.adjoint(z_old, scratch);
    double dz = 0.0, du = 0.0;
    B.adjoint(u, w);
    for (std::int64_t i = 0; i < nb; ++i) {
      if (pinned[std::size_t(i)] || i == zero_idx) continue;
      dz += std::norm(scratch[std::size_t(i)]);
      du += std::norm(w[std::size_t(i)]);
    }
    dual = rho * std::sqrt(dz);
    const double pri_ref = std::max(grid_norm2(gx, ng), grid_norm2(z, ng));
    const double dual_ref = rho * std::sqrt(du);
    if (prim <= params.eps_primal * pri_ref && dual <= params.eps_dual * dual_ref) {
      converged = true;
      break;
    }
  }

  TrigPolynomial recon(d, m);
  recon.raw() = std::move(x_best);
  recon.hermitian_symmetrize();

  rep.iterations = std::min(it, params.max_iter);
  rep.final_objective = best_obj;
  rep.primal_res = prim;
  rep.dual_res = dual;
  rep.converged = converged;
  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return BvMinResult{std::move(recon), rep};
}

double feasibility_residual(const TrigPolynomial& f, const Measurements& meas) {
  double worst = 0.0;
  for (const auto& [xi, v] : meas.entries()) worst = std::max(worst, std::abs(f.coeff(xi) - v));
  return worst;
}

double bv_objective_grid(const TrigPolynomial& f, int points_per_axis) {
  const auto grads = gradient(f);
  std::vector<GridField> chans;
  chans.reserve(grads.size());
  for (const auto& gpoly : grads) chans.push_back(evaluate_on_grid(gpoly, points_per_axis));
  return lp_norm_grid(chans, 1.0);
}

}  // namespace torec
