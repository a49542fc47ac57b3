#include "torec/trig_polynomial.hpp"

#include <cmath>
#include <numbers>

#include "torec/dft.hpp"

namespace torec {

TrigPolynomial::TrigPolynomial(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim < 1) throw ParameterError("TrigPolynomial: dim must be positive");
  if (degree < 0) throw ParameterError("TrigPolynomial: degree must be non-negative");
  coeffs_.assign(std::size_t(cube_count(degree, dim)), cplx{0.0, 0.0});
}

TrigPolynomial TrigPolynomial::from_accessor(const CoeffFn& f, int dim, int degree) {
  TrigPolynomial p(dim, degree);
  std::int64_t i = 0;
  for_each_in_cube(degree, dim, [&](const FrequencyIndex& xi) { p.coeffs_[std::size_t(i++)] = f(xi); });
  return p;
}

cplx TrigPolynomial::coeff(const FrequencyIndex& xi) const {
  if (int(xi.size()) != dim_) throw ParameterError("TrigPolynomial::coeff: dimension mismatch");
  if (linf_norm(xi) > degree_) return cplx{0.0, 0.0};
  return coeffs_[std::size_t(cube_offset(xi, degree_))];
}

void TrigPolynomial::set_coeff(const FrequencyIndex& xi, cplx v) {
  if (int(xi.size()) != dim_) throw ParameterError("TrigPolynomial::set_coeff: dimension mismatch");
  if (linf_norm(xi) > degree_) throw ParameterError("TrigPolynomial::set_coeff: frequency outside block");
  coeffs_[std::size_t(cube_offset(xi, degree_))] = v;
}

CoeffFn TrigPolynomial::accessor() const {
  // Copy keeps the accessor valid past the polynomial's lifetime.
  auto self = *this;
  return [self](const FrequencyIndex& xi) { return self.coeff(xi); };
}

void TrigPolynomial::hermitian_symmetrize() {
  TrigPolynomial out(dim_, degree_);
  for_each_in_cube(degree_, dim_, [&](const FrequencyIndex& xi) {
    const cplx a = coeffs_[std::size_t(cube_offset(xi, degree_))];
    const cplx b = coeffs_[std::size_t(cube_offset(negate(xi), degree_))];
    out.coeffs_[std::size_t(cube_offset(xi, degree_))] = 0.5 * (a + std::conj(b));
  });
  coeffs_ = std::move(out.coeffs_);
}

double TrigPolynomial::hermitian_defect() const {
  double worst = 0.0;
  for_each_in_cube(degree_, dim_, [&](const FrequencyIndex& xi) {
    const cplx a = coeffs_[std::size_t(cube_offset(xi, degree_))];
    const cplx b = coeffs_[std::size_t(cube_offset(negate(xi), degree_))];
    worst = std::max(worst, std::abs(a - std::conj(b)));
  });
  return worst;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_)
    throw ParameterError("TrigPolynomial: shape mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_)
    throw ParameterError("TrigPolynomial: shape mismatch in -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

cplx evaluate_at(const TrigPolynomial& f, const std::vector<double>& x) {
  if (int(x.size()) != f.dim()) throw ParameterError("evaluate_at: dimension mismatch");
  cplx acc{0.0, 0.0};
  std::int64_t i = 0;
  const auto& c = f.raw();
  for_each_in_cube(f.degree(), f.dim(), [&](const FrequencyIndex& xi) {
    double phase = 0.0;
    for (int j = 0; j < f.dim(); ++j) phase += double(xi[j]) * x[j];
    acc += c[std::size_t(i++)] * cplx{std::cos(phase), std::sin(phase)};
  });
  return acc;
}

GridField evaluate_on_grid(const TrigPolynomial& f, int points_per_axis) {
  const int G = points_per_axis;
  const int m = f.degree();
  if (G < 2 * m + 1)
    throw ParameterError("evaluate_on_grid: G < 2m+1 would alias distinct frequencies");

  Dft dft(f.dim(), G);
  auto* buf = dft.buffer();
  for (std::int64_t i = 0; i < dft.size(); ++i) buf[i] = cplx{0.0, 0.0};

  // Place c(xi) at grid index (xi mod G) per axis; no collisions since G >= 2m+1.
  std::int64_t i = 0;
  const auto& c = f.raw();
  for_each_in_cube(m, f.dim(), [&](const FrequencyIndex& xi) {
    std::int64_t flat = 0;
    for (int j = 0; j < f.dim(); ++j) {
      const int w = ((xi[j] % G) + G) % G;
      flat = flat * G + w;
    }
    buf[flat] = c[std::size_t(i++)];
  });
  dft.run_backward();

  GridField out;
  out.dim = f.dim();
  out.points_per_axis = G;
  out.values.resize(std::size_t(dft.size()));
  for (std::int64_t k = 0; k < dft.size(); ++k) out.values[std::size_t(k)] = buf[k].real();
  return out;
}

std::vector<TrigPolynomial> gradient(const TrigPolynomial& f) {
  std::vector<TrigPolynomial> out(std::size_t(f.dim()), TrigPolynomial(f.dim(), f.degree()));
  std::int64_t i = 0;
  const auto& c = f.raw();
  for_each_in_cube(f.degree(), f.dim(), [&](const FrequencyIndex& xi) {
    const cplx v = c[std::size_t(i)];
    for (int j = 0; j < f.dim(); ++j)
      out[std::size_t(j)].raw()[std::size_t(i)] = cplx{0.0, double(xi[j])} * v;
    ++i;
  });
  return out;
}

double lp_norm_grid(const GridField& v, double p) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm_grid: p must be >= 1");
  if (v.values.empty()) throw ParameterError("lp_norm_grid: empty field");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (double x : v.values) mx = std::max(mx, std::abs(x));
    return mx;
  }
  double acc = 0.0;
  for (double x : v.values) acc += std::pow(std::abs(x), p);
  return std::pow(acc / double(v.values.size()), 1.0 / p);
}

double lp_norm_grid(const std::vector<GridField>& channels, double p) {
  if (!(p >= 1.0)) throw ParameterError("lp_norm_grid: p must be >= 1");
  if (channels.empty() || channels[0].values.empty())
    throw ParameterError("lp_norm_grid: empty field");
  const std::size_t n = channels[0].values.size();
  for (const auto& ch : channels)
    if (ch.values.size() != n) throw ParameterError("lp_norm_grid: channel size mismatch");

  // Pointwise Euclidean magnitude across channels, then the scalar Lp norm.
  auto mag = [&](std::size_t i) {
    double s = 0.0;
    for (const auto& ch : channels) s += ch.values[i] * ch.values[i];
    return std::sqrt(s);
  };
  if (std::isinf(p)) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, mag(i));
    return mx;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(mag(i), p);
  return std::pow(acc / double(n), 1.0 / p);
}

double l2_norm_coeffs(const TrigPolynomial& f) {
  double s = 0.0;
  for (const auto& c : f.raw()) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace torec
