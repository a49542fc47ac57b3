#include "torec/group_witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "torec/errors.hpp"
#include "torec/rng.hpp"

namespace torec {

namespace {
constexpr std::int64_t kOrderCap = 1 << 16;
constexpr int kMaxRieszFactors = 20;

void validate_group(const GroupSpec& G) {
  if (G.moduli.empty()) throw ParameterError("group: no moduli");
  for (int n : G.moduli)
    if (n < 2) throw ParameterError("group: moduli must be at least 2");
  if (G.order() > kOrderCap) throw ParameterError("group: order above the 2^16 cap");
}

void validate_element(const GroupSpec& G, const std::vector<int>& g, const char* what) {
  if (g.size() != G.moduli.size()) throw ParameterError(std::string(what) + ": rank mismatch");
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g[j] < 0 || g[j] >= G.moduli[j])
      throw ParameterError(std::string(what) + ": component out of range");
}

// chi_{s}(g) tables for all flat g, one pass of the tuple odometer.
std::vector<cplx> character_table(const GroupSpec& G, const std::vector<int>& s) {
  const std::size_t r = G.moduli.size();
  std::vector<std::vector<cplx>> roots(r);
  for (std::size_t a = 0; a < r; ++a) {
    roots[a].resize(std::size_t(G.moduli[a]));
    for (int t = 0; t < G.moduli[a]; ++t) {
      const double ang = 2.0 * std::numbers::pi * double(t) / double(G.moduli[a]);
      roots[a][std::size_t(t)] = cplx{std::cos(ang), std::sin(ang)};
    }
  }
  const std::int64_t n = G.order();
  std::vector<cplx> table(static_cast<std::size_t>(n));
  std::vector<int> g(r, 0);
  for (std::int64_t idx = 0; idx < n; ++idx) {
    cplx v{1.0, 0.0};
    for (std::size_t a = 0; a < r; ++a)
      v *= roots[a][std::size_t((std::int64_t(s[a]) * g[a]) % G.moduli[a])];
    table[std::size_t(idx)] = v;
    int a = int(r) - 1;
    while (a >= 0 && ++g[std::size_t(a)] == G.moduli[std::size_t(a)]) g[std::size_t(a--)] = 0;
  }
  return table;
}

}  // namespace

std::int64_t GroupSpec::order() const {
  std::int64_t n = 1;
  for (int m : moduli) n *= m;
  return n;
}

std::int64_t GroupSpec::flatten(const std::vector<int>& g) const {
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < moduli.size(); ++j) idx = idx * moduli[j] + g[j];
  return idx;
}

std::vector<int> GroupSpec::unflatten(std::int64_t idx) const {
  std::vector<int> g(moduli.size());
  for (std::size_t j = moduli.size(); j-- > 0;) {
    g[j] = int(idx % moduli[j]);
    idx /= moduli[j];
  }
  return g;
}

std::vector<int> GroupSpec::add(const std::vector<int>& a, const std::vector<int>& b) const {
  std::vector<int> c(moduli.size());
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    int t = a[j] + b[j];
    if (t >= moduli[j]) t -= moduli[j];
    c[j] = t;
  }
  return c;
}

std::vector<int> GroupSpec::neg(const std::vector<int>& a) const {
  std::vector<int> c(moduli.size());
  for (std::size_t j = 0; j < moduli.size(); ++j) c[j] = a[j] == 0 ? 0 : moduli[j] - a[j];
  return c;
}

cplx character_eval(const GroupSpec& G, const std::vector<int>& a, const std::vector<int>& g) {
  validate_element(G, a, "character index");
  validate_element(G, g, "group element");
  double ang = 0.0;
  for (std::size_t j = 0; j < G.moduli.size(); ++j)
    ang += double((std::int64_t(a[j]) * g[j]) % G.moduli[j]) / double(G.moduli[j]);
  ang *= 2.0 * std::numbers::pi;
  return cplx{std::cos(ang), std::sin(ang)};
}

GreedyResult greedy_select(const GroupSpec& G, const std::vector<std::vector<int>>& lambda,
                           double delta) {
  validate_group(G);
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("greedy_select: delta must be in (0,1)");
  if (lambda.size() < 2) throw ParameterError("greedy_select: Lambda needs at least 2 elements");
  const std::int64_t order = G.order();

  // Flat-index working sets, kept sorted so "smallest tuple" is "first".
  std::vector<char> lam_mask(std::size_t(order), 0);
  std::vector<std::int64_t> lam;
  lam.reserve(lambda.size());
  for (const auto& g : lambda) {
    validate_element(G, g, "greedy_select: Lambda element");
    const std::int64_t f = G.flatten(g);
    if (lam_mask[std::size_t(f)]) throw ParameterError("greedy_select: duplicate Lambda element");
    lam_mask[std::size_t(f)] = 1;
    lam.push_back(f);
  }
  std::sort(lam.begin(), lam.end());

  std::vector<char> e_mask(std::size_t(order), 0);
  std::vector<std::int64_t> e_list;
  e_mask[0] = 1;
  e_list.push_back(0);

  GreedyResult res;
  res.trace.push_back(std::int64_t(lam.size()));
  {
    const double lg = std::log2(double(order));
    const double ratio = double(order) / double(lam.size());
    const double first = (lam.size() == std::size_t(order))
                             ? std::numeric_limits<double>::infinity()
                             : delta * lg / std::log2(ratio);
    const double second = std::pow(std::pow(double(order), 1.0 - delta) / 16.0, 2.0 / 3.0);
    res.bound_rhs = 0.5 * std::min(first, second);
  }

  const std::size_t rank = G.moduli.size();
  std::vector<std::int64_t> strides(rank, 1);
  for (std::size_t j = rank - 1; j-- > 0;) strides[j] = strides[j + 1] * G.moduli[j + 1];

  std::vector<std::vector<int>> lam_tuples;
  auto rebuild_tuples = [&]() {
    lam_tuples.clear();
    lam_tuples.reserve(lam.size());
    for (std::int64_t f : lam) lam_tuples.push_back(G.unflatten(f));
  };
  rebuild_tuples();

  for (;;) {
    if (std::int64_t(e_list.size()) == order) break;  // E_j exhausted the group

    std::int64_t best_cnt = 0, best_g = -1;
    std::vector<int> gt;
    for (std::int64_t gf = 0; gf < order; ++gf) {
      if (e_mask[std::size_t(gf)]) continue;
      gt = G.unflatten(gf);
      std::int64_t cnt = 0;
      for (const auto& x : lam_tuples) {
        std::int64_t idx = 0;
        for (std::size_t j = 0; j < rank; ++j) {
          int t = x[j] + gt[j];
          if (t >= G.moduli[j]) t -= G.moduli[j];
          idx += strides[j] * t;
        }
        cnt += lam_mask[std::size_t(idx)];
      }
      if (cnt > best_cnt) {
        best_cnt = cnt;
        best_g = gf;
      }
    }
    if (best_cnt == 0) break;  // every remaining shift empties the intersection

    const std::vector<int> g = G.unflatten(best_g);
    res.s.push_back(g);

    // Lambda <- {x in Lambda : x + g in Lambda}
    std::vector<std::int64_t> next;
    next.reserve(std::size_t(best_cnt));
    for (const auto& x : lam_tuples) {
      std::int64_t idx = 0, self = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        int t = x[j] + g[j];
        if (t >= G.moduli[j]) t -= G.moduli[j];
        idx += strides[j] * t;
        self += strides[j] * x[j];
      }
      if (lam_mask[std::size_t(idx)]) next.push_back(self);
    }
    std::fill(lam_mask.begin(), lam_mask.end(), 0);
    for (std::int64_t f : next) lam_mask[std::size_t(f)] = 1;
    lam = std::move(next);
    rebuild_tuples();
    res.trace.push_back(std::int64_t(lam.size()));

    // E <- E union (E+g) union (E-g)
    const std::vector<int> ng = G.neg(g);
    const std::vector<std::int64_t> snapshot = e_list;
    for (std::int64_t ef : snapshot) {
      const std::vector<int> e = G.unflatten(ef);
      for (const auto& shift : {g, ng}) {
        const std::int64_t f = G.flatten(G.add(e, shift));
        if (!e_mask[std::size_t(f)]) {
          e_mask[std::size_t(f)] = 1;
          e_list.push_back(f);
        }
      }
    }
  }

  res.h = G.unflatten(lam.front());  // lam is sorted and never empty
  return res;
}

WitnessFunction riesz_product(const GroupSpec& G, const std::vector<std::vector<int>>& s,
                              const std::vector<int>& h, const std::vector<cplx>& phases) {
  validate_group(G);
  validate_element(G, h, "riesz_product: h");
  const int n = int(s.size());
  if (n > kMaxRieszFactors) throw ParameterError("riesz_product: too many factors");
  if (phases.size() != s.size()) throw ParameterError("riesz_product: |phases| != |S|");
  for (const auto& z : phases)
    if (std::abs(std::abs(z) - 1.0) > 1e-9)
      throw ParameterError("riesz_product: phases must be unimodular");
  for (const auto& g : s) validate_element(G, g, "riesz_product: S element");

  const std::int64_t order = G.order();
  WitnessFunction w;
  w.group = G;
  w.n = n;

  std::vector<std::vector<cplx>> tabs;
  tabs.reserve(std::size_t(n));
  for (const auto& g : s) tabs.push_back(character_table(G, g));
  const std::vector<cplx> tab_h = character_table(G, h);

  w.values.resize(std::size_t(order));
  for (std::int64_t i = 0; i < order; ++i) {
    cplx v = tab_h[std::size_t(i)];
    for (int j = 0; j < n; ++j)
      v *= cplx{1.0, 0.0} + phases[std::size_t(j)] * tabs[std::size_t(j)][std::size_t(i)];
    w.values[std::size_t(i)] = v;
  }

  // Coefficients: chi_{h + sum_{j in T} s_j} carries prod_{j in T} z_j.
  std::map<std::vector<int>, cplx> acc;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> e = h;
    cplx c{1.0, 0.0};
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        e = G.add(e, s[std::size_t(j)]);
        c *= phases[std::size_t(j)];
      }
    acc[e] += c;
  }
  w.coeffs.assign(acc.begin(), acc.end());
  return w;
}

PhaseSearchResult phase_search(const GroupSpec& G, const std::vector<std::vector<int>>& s,
                               std::int64_t trials, std::uint64_t seed) {
  validate_group(G);
  if (trials < 1) throw ParameterError("phase_search: need at least one trial");
  const int n = int(s.size());
  if (n > kMaxRieszFactors) throw ParameterError("phase_search: too many factors");
  std::vector<std::vector<cplx>> tabs;
  tabs.reserve(std::size_t(n));
  for (const auto& g : s) {
    validate_element(G, g, "phase_search: S element");
    tabs.push_back(character_table(G, g));
  }

  const std::int64_t order = G.order();
  PhaseSearchResult out;
  out.trials = trials;
  out.best_l1 = std::numeric_limits<double>::infinity();
  double mean_acc = 0.0;
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng g(stream_seed(seed, std::uint64_t(t)));
    for (int j = 0; j < n; ++j) {
      const double ang = 2.0 * std::numbers::pi * draw_unit(g);
      z[std::size_t(j)] = cplx{std::cos(ang), std::sin(ang)};
    }
    double l1 = 0.0;
    for (std::int64_t i = 0; i < order; ++i) {
      double m = 1.0;
      for (int j = 0; j < n; ++j)
        m *= std::abs(cplx{1.0, 0.0} + z[std::size_t(j)] * tabs[std::size_t(j)][std::size_t(i)]);
      l1 += m;
    }
    l1 /= double(order);
    mean_acc += l1;
    if (l1 < out.best_l1) {
      out.best_l1 = l1;
      out.best_phases = z;
    }
  }
  out.mean_l1 = mean_acc / double(trials);
  out.met_target = out.best_l1 <= std::pow(4.0 / std::numbers::pi, double(s.size()));
  return out;
}

double group_lp_norm(const std::vector<cplx>& values, double p) {
  if (values.empty()) throw ParameterError("group_lp_norm: empty values");
  if (!(p >= 1.0)) throw ParameterError("group_lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const auto& v : values) mx = std::max(mx, std::abs(v));
    return mx;
  }
  double acc = 0.0;
  for (const auto& v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / double(values.size()), 1.0 / p);
}

double witness_ratio(const std::vector<cplx>& values, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw ParameterError("witness_ratio: p must lie in [1,2]");
  const double l1 = group_lp_norm(values, 1.0);
  if (l1 == 0.0) throw ParameterError("witness_ratio: zero witness");
  return group_lp_norm(values, p) / l1;
}

Theorem2Witness theorem2_witness(int k, int d, const std::vector<FrequencyIndex>& sampled,
                                 double delta, std::int64_t trials, std::uint64_t seed) {
  if (k < 1) throw ParameterError("theorem2_witness: k must be >= 1");
  if (d < 1) throw ParameterError("theorem2_witness: d must be >= 1");
  const int N = 1 << (k + 2);
  GroupSpec G{std::vector<int>(std::size_t(d), N)};
  validate_group(G);
  const std::int64_t order = G.order();

  // Torus representative in (-N/2, N/2]; |rep| <= 2^{k+1}.
  auto rep = [&](int g) { return g <= N / 2 ? g : g - N; };

  std::vector<char> lambda_mask(std::size_t(order), 0);
  for (std::int64_t i = 0; i < order; ++i) {
    const auto t = G.unflatten(i);
    int r = 0;
    for (int c : t) r = std::max(r, std::abs(rep(c)));
    if (r > (1 << k)) lambda_mask[std::size_t(i)] = 1;  // the excluded band
  }
  for (const auto& xi : sampled) {
    if (int(xi.size()) != d) throw ParameterError("theorem2_witness: sampled dimension mismatch");
    if (linf_norm(xi) > (1 << k)) continue;  // degree cap already excludes these
    std::vector<int> t(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) t[std::size_t(j)] = ((xi[std::size_t(j)] % N) + N) % N;
    lambda_mask[std::size_t(G.flatten(t))] = 1;
  }

  std::vector<std::vector<int>> complement;
  for (std::int64_t i = 0; i < order; ++i)
    if (!lambda_mask[std::size_t(i)]) complement.push_back(G.unflatten(i));
  if (complement.empty())
    throw ParameterError("theorem2_witness: sampled frequencies exhaust the low block");

  Theorem2Witness out;
  std::int64_t low_block = 1;
  for (int j = 0; j < d; ++j) low_block *= (1 << k) + 1;
  out.balance_ok = low_block >= 2 * std::int64_t(sampled.size());

  out.greedy = greedy_select(G, complement, delta);
  out.phases = phase_search(G, out.greedy.s, trials, seed);
  out.witness = riesz_product(G, out.greedy.s, out.greedy.h, out.phases.best_phases);

  out.poly = TrigPolynomial(d, 1 << k);
  for (const auto& [tuple, c] : out.witness.coeffs) {
    FrequencyIndex xi(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) xi[std::size_t(j)] = rep(tuple[std::size_t(j)]);
    if (linf_norm(xi) > (1 << k))
      throw NumericalError("theorem2_witness: witness support escaped the low block");
    out.poly.set_coeff(xi, out.poly.coeff(xi) + c);
    out.ell2_sq += std::norm(c);
  }
  out.ell1 = group_lp_norm(out.witness.values, 1.0);
  for (double p : {1.5, 2.0}) out.ratios[p] = witness_ratio(out.witness.values, p);
  return out;
}

}  // namespace torec
