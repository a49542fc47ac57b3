#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torec/phantom.hpp"
#include "torec/sampling.hpp"
#include "torec/trig_polynomial.hpp"

namespace torec {

// Exact Fourier samples of a source image at a design's frequencies.
// Entries stay sorted by frequency; construction rejects duplicate
// frequencies and Hermitian-inconsistent pairs, which would make the
// reconstruction constraints infeasible.
class Measurements {
 public:
  Measurements() = default;
  Measurements(int dim, std::string phantom_id,
               std::vector<std::pair<FrequencyIndex, cplx>> entries);

  int dim() const { return dim_; }
  const std::string& phantom_id() const { return phantom_id_; }
  const std::vector<std::pair<FrequencyIndex, cplx>>& entries() const { return entries_; }
  std::int64_t size() const { return std::int64_t(entries_.size()); }

  std::optional<cplx> lookup(const FrequencyIndex& xi) const;
  int max_linf() const;

 private:
  int dim_ = 0;
  std::string phantom_id_;
  std::vector<std::pair<FrequencyIndex, cplx>> entries_;
};

// Closed-form coefficients at every design frequency.
Measurements measure(const Phantom& ph, const SamplingDesign& dz);

}  // namespace torec
