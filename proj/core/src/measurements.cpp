#include "torec/measurements.hpp"

#include <algorithm>
#include <cmath>

#include "torec/errors.hpp"

namespace torec {

Measurements::Measurements(int dim, std::string phantom_id,
                           std::vector<std::pair<FrequencyIndex, cplx>> entries)
    : dim_(dim), phantom_id_(std::move(phantom_id)), entries_(std::move(entries)) {
  if (dim_ < 1) throw ParameterError("Measurements: dim must be positive");
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (int(entries_[i].first.size()) != dim_)
      throw ParameterError("Measurements: frequency dimension mismatch");
    if (i > 0 && entries_[i].first == entries_[i - 1].first)
      throw ParameterError("Measurements: duplicate frequency");
  }
  // A real-valued reconstruction pins conj(v) at -xi; when both are supplied
  // they must agree or the pin set is contradictory.
  for (const auto& [xi, v] : entries_) {
    const auto other = lookup(negate(xi));
    if (other && std::abs(*other - std::conj(v)) > 1e-12 * std::max(1.0, std::abs(v)))
      throw ParameterError("Measurements: Hermitian-inconsistent pair at a frequency");
  }
}

std::optional<cplx> Measurements::lookup(const FrequencyIndex& xi) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), xi,
                             [](const auto& e, const FrequencyIndex& k) { return e.first < k; });
  if (it == entries_.end() || it->first != xi) return std::nullopt;
  return it->second;
}

int Measurements::max_linf() const {
  int r = 0;
  for (const auto& [xi, v] : entries_) r = std::max(r, linf_norm(xi));
  return r;
}

Measurements measure(const Phantom& ph, const SamplingDesign& dz) {
  if (dz.dim != 2) throw ParameterError("measure: phantoms are two-dimensional");
  std::vector<std::pair<FrequencyIndex, cplx>> entries;
  entries.reserve(dz.freqs.size());
  for (const auto& xi : dz.freqs) entries.emplace_back(xi, phantom_coeff(ph, xi));
  return Measurements(2, ph.id, std::move(entries));
}

}  // namespace torec
