#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace torec {

// Thin FFTW wrapper for dense d-dimensional transforms of size G^d.
//
// Conventions (matching e^{i xi.x} synthesis on x_j = 2 pi j / G):
//   backward(a)[j] = sum_k a[k] e^{+2 pi i k.j / G}   (unnormalized)
//   forward(a)[k]  = (1/G^d) sum_j a[j] e^{-2 pi i k.j / G}
//
// Plans are created once per (dim, G) and reused; FFTW planning is not
// thread-safe, so construction takes a global lock. Execution is safe on the
// owning thread.
class Dft {
 public:
  Dft(int dim, int points_per_axis);
  ~Dft();

  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  std::int64_t size() const { return size_; }

  // In-place on the internal buffer.
  std::complex<double>* buffer() { return buf_; }
  void run_backward();
  void run_forward();  // includes the 1/G^d normalization

 private:
  int dim_;
  int n_;
  std::int64_t size_;
  std::complex<double>* buf_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace torec
