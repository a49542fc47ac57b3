#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "torec/trig_polynomial.hpp"

namespace torec {

// Additive finite abelian group Z/N_1 x ... x Z/N_r. Elements are tuples
// (g_1..g_r), 0 <= g_j < N_j, ordered lexicographically; flat indices follow
// that order with g_1 most significant. The dual group is identified with the
// same tuple space: chi_a(g) = exp(2 pi i sum_j a_j g_j / N_j).
struct GroupSpec {
  std::vector<int> moduli;

  std::int64_t order() const;
  std::int64_t flatten(const std::vector<int>& g) const;
  std::vector<int> unflatten(std::int64_t idx) const;
  std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> neg(const std::vector<int>& a) const;
};

cplx character_eval(const GroupSpec& G, const std::vector<int>& a, const std::vector<int>& g);

// Greedy shift selection: maintains Lambda_0 = Lambda and
// E_j = {sums of +-S elements}; while some g outside E_j keeps
// Lambda_j cap (Lambda_j - g) nonempty, picks the maximizer (ties to the
// smallest tuple) and intersects. Ends with h, the smallest element of the
// final Lambda_n; every h + sum_{T subset S} g lands inside Lambda.
struct GreedyResult {
  std::vector<std::vector<int>> s;  // selected shifts, in pick order
  std::vector<int> h;
  std::vector<std::int64_t> trace;  // |Lambda_j| for j = 0..n
  double bound_rhs = 0.0;           // (1/2) min{...} from the size guarantee
};

GreedyResult greedy_select(const GroupSpec& G, const std::vector<std::vector<int>>& lambda,
                           double delta);

// rho_S(z) = chi_h prod_j (1 + z_j chi_{s_j}); 2^n coefficients, all
// unimodular, supported on {h + subset sums of S} when those are distinct.
struct WitnessFunction {
  GroupSpec group;
  int n = 0;
  std::vector<cplx> values;  // over flat group indices
  std::vector<std::pair<std::vector<int>, cplx>> coeffs;  // sorted by tuple
};

WitnessFunction riesz_product(const GroupSpec& G, const std::vector<std::vector<int>>& s,
                              const std::vector<int>& h, const std::vector<cplx>& phases);

// Monte-Carlo minimization of the normalized l1 norm over unimodular phases;
// trial t draws from stream_seed(seed, t), so trials are order-independent.
struct PhaseSearchResult {
  std::vector<cplx> best_phases;
  double best_l1 = 0.0;
  double mean_l1 = 0.0;
  std::int64_t trials = 0;
  bool met_target = false;  // best_l1 <= (4/pi)^n
};

PhaseSearchResult phase_search(const GroupSpec& G, const std::vector<std::vector<int>>& s,
                               std::int64_t trials, std::uint64_t seed);

// Normalized counting-measure norms of the values vector.
double group_lp_norm(const std::vector<cplx>& values, double p);
// ||w||_p / ||w||_1 for p in [1,2]; rejects the zero witness.
double witness_ratio(const std::vector<cplx>& values, double p);

// Witness below the sampled frequencies: on G = (Z/2^{k+2})^d, excludes the
// band 2^k < |xi|_inf <= 2^{k+1} together with the sampled frequencies of
// modulus at most 2^k, runs the greedy construction on the complement, and
// returns a degree-2^k polynomial vanishing at every sampled frequency.
struct Theorem2Witness {
  TrigPolynomial poly;
  GreedyResult greedy;
  PhaseSearchResult phases;
  WitnessFunction witness;
  double ell1 = 0.0;
  double ell2_sq = 0.0;                 // coefficient-side sum of |c|^2
  std::map<double, double> ratios;      // p -> l_p/l_1, group side
  bool balance_ok = false;              // (2^k+1)^d >= 2 |sampled|
};

Theorem2Witness theorem2_witness(int k, int d, const std::vector<FrequencyIndex>& sampled,
                                 double delta = 0.5, std::int64_t trials = 1000,
                                 std::uint64_t seed = 0);

}  // namespace torec
