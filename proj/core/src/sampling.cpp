#include "torec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "torec/errors.hpp"
#include "torec/rng.hpp"

namespace torec {

namespace {

constexpr const char* kRngNote =
    "mt19937_64;stream=sm64(seed+tag*0x9e3779b97f4a7c15);tags=band:k,trim:2^32+1,fill:2^32+2,uniform:2^32+3";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Lattice annulus lo <= |xi|_inf <= hi (lo == 0 means the full cube).
struct Annulus {
  int lo, hi, dim;
  std::int64_t capacity() const {
    const std::int64_t outer = cube_count(hi, dim);
    return lo == 0 ? outer : outer - cube_count(lo - 1, dim);
  }
  bool contains(const FrequencyIndex& xi) const {
    const int r = linf_norm(xi);
    return r >= lo && r <= hi;
  }
};

using Selected = std::set<FrequencyIndex>;

// Draws up to `want` distinct annulus points not already selected; appends to
// `picked` and `selected`. Returns how many were actually drawn.
std::int64_t draw_from_annulus(const Annulus& an, std::int64_t want, Rng& g, Selected& selected,
                               std::vector<FrequencyIndex>& picked) {
  if (want <= 0) return 0;
  const std::int64_t cap = an.capacity();

  if (cap <= (std::int64_t(1) << 18)) {
    // Small population: materialize candidates in canonical order and take a
    // partial Fisher-Yates prefix.
    std::vector<FrequencyIndex> cand;
    cand.reserve(std::size_t(cap));
    for_each_in_cube(an.hi, an.dim, [&](const FrequencyIndex& xi) {
      if (an.contains(xi) && !selected.count(xi)) cand.push_back(xi);
    });
    const std::int64_t take = std::min<std::int64_t>(want, std::int64_t(cand.size()));
    for (std::int64_t i = 0; i < take; ++i) {
      const std::int64_t j = i + std::int64_t(draw_below(g, std::uint64_t(cand.size() - std::size_t(i))));
      std::swap(cand[std::size_t(i)], cand[std::size_t(j)]);
      picked.push_back(cand[std::size_t(i)]);
      selected.insert(cand[std::size_t(i)]);
    }
    return take;
  }

  // Large population: rejection from the enclosing cube. Selected sets are
  // tiny relative to capacity here, so acceptance stays near 3/4.
  std::int64_t got = 0;
  const std::uint64_t cube = std::uint64_t(cube_count(an.hi, an.dim));
  std::uint64_t attempts = 0;
  const std::uint64_t attempt_cap = 1000ULL * std::uint64_t(want) + 1000000ULL;
  while (got < want && attempts < attempt_cap) {
    ++attempts;
    const FrequencyIndex xi = cube_unoffset(std::int64_t(draw_below(g, cube)), an.hi, an.dim);
    if (!an.contains(xi) || selected.count(xi)) continue;
    picked.push_back(xi);
    selected.insert(xi);
    ++got;
  }
  return got;
}

void finalize(SamplingDesign& dz) {
  std::sort(dz.freqs.begin(), dz.freqs.end());
  for (std::size_t i = 1; i < dz.freqs.size(); ++i)
    if (dz.freqs[i] == dz.freqs[i - 1]) throw NumericalError("design: duplicate frequency generated");
}

}  // namespace

int SamplingDesign::max_linf() const {
  int r = 0;
  for (const auto& xi : freqs) r = std::max(r, linf_norm(xi));
  return r;
}

SamplingDesign lowest_block(int m, int dim) {
  if (m < 0) throw ParameterError("lowest_block: m must be non-negative");
  if (dim < 1) throw ParameterError("lowest_block: dim must be positive");
  SamplingDesign dz;
  dz.dim = dim;
  dz.scheme = "lowest-block";
  dz.params["m"] = std::to_string(m);
  dz.freqs.reserve(std::size_t(cube_count(m, dim)));
  for_each_in_cube(m, dim, [&](const FrequencyIndex& xi) { dz.freqs.push_back(xi); });
  return dz;  // enumeration order is already lexicographic
}

SamplingDesign hierarchical(const HierarchicalParams& hp, std::uint64_t seed) {
  const int d = hp.dim;
  if (d < 1) throw ParameterError("hierarchical: dim must be positive");
  if (hp.n_target < 1) throw ParameterError("hierarchical: n_target must be positive");
  if (!(hp.alpha > 0.0)) throw ParameterError("hierarchical: alpha must be positive");

  int k0 = hp.k0;
  if (k0 < 0) {
    // Largest k0 >= 2 whose full low block uses at most half the budget
    // (never below the floor k0 = 2).
    k0 = 2;
    while (2 * cube_count(1 << (k0 + 1), d) <= hp.n_target) ++k0;
  }
  if (k0 < 2) throw ParameterError("hierarchical: k0 must be >= 2");

  int k_cap = hp.k_cap;
  if (k_cap < 0)
    k_cap = std::min(int(std::ceil(k0 * (1.0 + double(d) / hp.alpha) - 1e-9)) - 1, 9);
  if (k_cap < k0) throw ParameterError("hierarchical: k_cap must be >= k0");

  SamplingDesign dz;
  dz.dim = d;
  dz.scheme = "hierarchical";
  dz.seeded = true;
  dz.seed = seed;
  dz.params["alpha"] = fmt_double(hp.alpha);
  dz.params["k0"] = std::to_string(k0);
  dz.params["k_cap"] = std::to_string(k_cap);
  dz.params["n_target"] = std::to_string(hp.n_target);

  Selected selected;
  std::vector<FrequencyIndex> low;
  for_each_in_cube(1 << k0, d, [&](const FrequencyIndex& xi) {
    low.push_back(xi);
    selected.insert(xi);
  });

  // Band k covers floor(2^{k-1}) <= |xi|_inf <= 2^{k+1} with budget
  // ceil(2^{d k0 - alpha (k - k0)}), drawn without replacement.
  std::vector<std::vector<FrequencyIndex>> band_picks(std::size_t(k_cap + 1));
  for (int k = k0 + 1; k <= k_cap; ++k) {
    const auto budget = std::int64_t(std::ceil(std::pow(2.0, double(d * k0) - hp.alpha * double(k - k0))));
    Annulus an{1 << (k - 1), 1 << (k + 1), d};
    Rng g(stream_seed(seed, std::uint64_t(k)));
    draw_from_annulus(an, budget, g, selected, band_picks[std::size_t(k)]);
  }

  auto total = [&]() {
    std::int64_t t = std::int64_t(low.size());
    for (const auto& b : band_picks) t += std::int64_t(b.size());
    return t;
  };

  // Exact-count adjustment: excess comes off the highest bands first, deficit
  // refills the lowest bands first.
  std::int64_t over = total() - hp.n_target;
  if (over > 0) {
    Rng g(stream_seed(seed, kTagTrim));
    for (int k = k_cap; k >= k0 + 1 && over > 0; --k) {
      auto& picks = band_picks[std::size_t(k)];
      while (over > 0 && !picks.empty()) {
        const auto j = std::size_t(draw_below(g, picks.size()));
        selected.erase(picks[j]);
        picks[j] = picks.back();
        picks.pop_back();
        --over;
      }
    }
    while (over > 0 && !low.empty()) {
      const auto j = std::size_t(draw_below(g, low.size()));
      selected.erase(low[j]);
      low[j] = low.back();
      low.pop_back();
      --over;
    }
  } else if (over < 0) {
    Rng g(stream_seed(seed, kTagFill));
    for (int k = k0 + 1; k <= k_cap && over < 0; ++k) {
      Annulus an{1 << (k - 1), 1 << (k + 1), d};
      over += draw_from_annulus(an, -over, g, selected, band_picks[std::size_t(k)]);
    }
    if (over < 0)
      throw ParameterError("hierarchical: n_target exceeds the frequencies reachable with k_cap");
  }

  dz.freqs = std::move(low);
  for (auto& b : band_picks)
    dz.freqs.insert(dz.freqs.end(), b.begin(), b.end());
  finalize(dz);
  if (dz.size() != hp.n_target) throw NumericalError("hierarchical: count adjustment failed");
  return dz;
}

SamplingDesign uniform_random(std::int64_t n_target, int half_width, int dim, std::uint64_t seed) {
  if (dim < 1) throw ParameterError("uniform_random: dim must be positive");
  if (half_width < 0) throw ParameterError("uniform_random: half_width must be non-negative");
  if (n_target < 1) throw ParameterError("uniform_random: n_target must be positive");
  const std::int64_t cap = cube_count(half_width, dim);
  if (n_target > cap) throw ParameterError("uniform_random: n_target exceeds the grid size");

  SamplingDesign dz;
  dz.dim = dim;
  dz.scheme = "uniform";
  dz.seeded = true;
  dz.seed = seed;
  dz.params["half_width"] = std::to_string(half_width);
  dz.params["n_target"] = std::to_string(n_target);

  if (n_target == cap) {
    // Exhaustive draw; no randomness involved.
    for_each_in_cube(half_width, dim, [&](const FrequencyIndex& xi) { dz.freqs.push_back(xi); });
    return dz;
  }

  Rng g(stream_seed(seed, kTagUniform));
  Selected selected;
  Annulus an{0, half_width, dim};
  std::vector<FrequencyIndex> picks;
  if (draw_from_annulus(an, n_target, g, selected, picks) != n_target)
    throw NumericalError("uniform_random: draw failed");
  dz.freqs = std::move(picks);
  finalize(dz);
  return dz;
}

std::string design_to_string(const SamplingDesign& dz) {
  std::ostringstream out;
  out << "# scheme=" << dz.scheme << "\n";
  out << "# d=" << dz.dim << "\n";
  if (dz.seeded) out << "# seed=" << dz.seed << "\n";
  out << "# params=";
  bool first = true;
  for (const auto& [k, v] : dz.params) {
    if (!first) out << ";";
    out << k << "=" << v;
    first = false;
  }
  out << "\n";
  if (dz.seeded) out << "# rng=" << kRngNote << "\n";
  for (const auto& xi : dz.freqs) {
    for (std::size_t j = 0; j < xi.size(); ++j) out << (j ? " " : "") << xi[j];
    out << "\n";
  }
  return out.str();
}

void design_write(const SamplingDesign& dz, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("design_write: cannot open " + path);
  out << design_to_string(dz);
  if (!out) throw IoError("design_write: write failed for " + path);
}

SamplingDesign design_from_string(const std::string& text, const std::string& origin) {
  SamplingDesign dz;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_d = false;
  auto fail = [&](const std::string& msg) {
    throw IoError("design " + origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      const std::string val = line.substr(eq + 1);
      if (key == "scheme") {
        dz.scheme = val;
      } else if (key == "d") {
        dz.dim = std::atoi(val.c_str());
        have_d = true;
      } else if (key == "seed") {
        dz.seeded = true;
        dz.seed = std::strtoull(val.c_str(), nullptr, 10);
      } else if (key == "params") {
        std::istringstream ps(val);
        std::string item;
        while (std::getline(ps, item, ';')) {
          const auto e2 = item.find('=');
          if (e2 != std::string::npos) dz.params[item.substr(0, e2)] = item.substr(e2 + 1);
        }
      }
      continue;
    }
    if (!have_d || dz.dim < 1) fail("frequency row before '# d=' header");
    FrequencyIndex xi;
    std::istringstream row(line);
    std::string tok;
    while (row >> tok) {
      char* end = nullptr;
      const long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') fail("malformed integer '" + tok + "'");
      xi.push_back(int(v));
    }
    if (int(xi.size()) != dz.dim) fail("expected " + std::to_string(dz.dim) + " components");
    if (!dz.freqs.empty()) {
      if (xi == dz.freqs.back()) fail("duplicate frequency row");
      if (xi < dz.freqs.back()) fail("rows not in sorted order");
    }
    dz.freqs.push_back(std::move(xi));
  }
  if (dz.scheme.empty()) throw IoError("design " + origin + ": missing '# scheme=' header");
  if (!have_d) throw IoError("design " + origin + ": missing '# d=' header");
  if (dz.freqs.empty()) throw IoError("design " + origin + ": no frequency rows");
  return dz;
}

SamplingDesign design_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("design_read: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return design_from_string(ss.str(), path);
}

}  // namespace torec
