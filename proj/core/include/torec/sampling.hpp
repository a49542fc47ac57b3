#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "torec/frequency.hpp"

namespace torec {

// A finite set of measurement frequencies plus enough header metadata to
// regenerate it byte-for-byte.
struct SamplingDesign {
  int dim = 0;
  std::string scheme;  // lowest-block | hierarchical | uniform
  bool seeded = false;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;  // ordered, serialized as written
  std::vector<FrequencyIndex> freqs;          // sorted lexicographically, distinct

  std::int64_t size() const { return std::int64_t(freqs.size()); }
  int max_linf() const;
};

// Full block |xi|_inf <= m, (2m+1)^d frequencies in lexicographic order.
SamplingDesign lowest_block(int m, int dim);

struct HierarchicalParams {
  std::int64_t n_target = 0;
  int dim = 2;
  double alpha = 1.0;
  int k0 = -1;     // < 0: auto, largest k0 >= 2 with low block at most half of n_target
  int k_cap = -1;  // < 0: auto, min(ceil(k0*(1+d/alpha)) - 1, 9)
};

// Dense low block plus geometrically thinning per-band draws, trimmed or
// filled to exactly n_target distinct frequencies.
SamplingDesign hierarchical(const HierarchicalParams& hp, std::uint64_t seed);

// n_target distinct draws from the cube |xi|_inf <= half_width.
SamplingDesign uniform_random(std::int64_t n_target, int half_width, int dim, std::uint64_t seed);

// Plain-text design file: '#' header lines (scheme, d, seed, params, rng),
// then one space-separated frequency row per line, sorted.
std::string design_to_string(const SamplingDesign& dz);
void design_write(const SamplingDesign& dz, const std::string& path);
SamplingDesign design_from_string(const std::string& text, const std::string& origin);
SamplingDesign design_read(const std::string& path);

}  // namespace torec
