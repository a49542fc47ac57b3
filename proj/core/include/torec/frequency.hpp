#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

namespace torec {

// Integer frequency vector xi in Z^d. Comparison is lexicographic, which is
// also the canonical order used by every serialized artifact.
using FrequencyIndex = std::vector<int>;

inline int linf_norm(const FrequencyIndex& xi) {
  int r = 0;
  for (int c : xi) r = std::max(r, std::abs(c));
  return r;
}

inline double l2_norm_sq(const FrequencyIndex& xi) {
  double s = 0.0;
  for (int c : xi) s += double(c) * double(c);
  return s;
}

inline FrequencyIndex negate(const FrequencyIndex& xi) {
  FrequencyIndex r(xi);
  for (int& c : r) c = -c;
  return r;
}

// Number of lattice points in the cube |xi|_inf <= m, i.e. (2m+1)^d.
inline std::int64_t cube_count(int m, int d) {
  std::int64_t n = 1;
  for (int j = 0; j < d; ++j) n *= 2 * std::int64_t(m) + 1;
  return n;
}

// Row-major enumeration of the cube |xi|_inf <= m with xi_1 most significant;
// index order coincides with lexicographic order of the tuples.
inline std::int64_t cube_offset(const FrequencyIndex& xi, int m) {
  std::int64_t idx = 0;
  for (int c : xi) idx = idx * (2 * std::int64_t(m) + 1) + (c + m);
  return idx;
}

inline FrequencyIndex cube_unoffset(std::int64_t idx, int m, int d) {
  FrequencyIndex xi(d);
  const std::int64_t w = 2 * std::int64_t(m) + 1;
  for (int j = d - 1; j >= 0; --j) {
    xi[j] = int(idx % w) - m;
    idx /= w;
  }
  return xi;
}

// Visits the cube in lexicographic order.
template <typename F>
void for_each_in_cube(int m, int d, F&& fn) {
  FrequencyIndex xi(d, -m);
  for (;;) {
    fn(const_cast<const FrequencyIndex&>(xi));
    int j = d - 1;
    while (j >= 0 && xi[j] == m) xi[j--] = -m;
    if (j < 0) return;
    ++xi[j];
  }
}

}  // namespace torec
