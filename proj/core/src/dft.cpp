#include "torec/dft.hpp"

#include <fftw3.h>

#include <mutex>

#include "torec/errors.hpp"

namespace torec {

namespace {
// FFTW planner mutates global state; serialize plan creation/destruction.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis) {
  if (dim < 1 || points_per_axis < 1) throw ParameterError("Dft: dim and G must be positive");
  size_ = 1;
  for (int j = 0; j < dim; ++j) size_ *= n_;

  buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * std::size_t(size_)));
  if (!buf_) throw NumericalError("Dft: allocation failed");

  std::vector<int> shape(std::size_t(dim), n_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_ESTIMATE keeps plan selection deterministic run to run.
  plan_fwd_ = fftw_plan_dft(dim, shape.data(), reinterpret_cast<fftw_complex*>(buf_),
                            reinterpret_cast<fftw_complex*>(buf_), FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft(dim, shape.data(), reinterpret_cast<fftw_complex*>(buf_),
                            reinterpret_cast<fftw_complex*>(buf_), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw NumericalError("Dft: plan creation failed");
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_);
}

void Dft::run_backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

void Dft::run_forward() {
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double scale = 1.0 / double(size_);
  for (std::int64_t i = 0; i < size_; ++i) buf_[i] *= scale;
}

}  // namespace torec
