#include "torec/edge_metrics.hpp"

#include <cmath>
#include <numbers>

#include "torec/errors.hpp"
#include "torec/reconstruct.hpp"

namespace torec {

namespace {
void require_aligned(const GridField& a, const GridField& b) {
  if (a.dim != b.dim || a.points_per_axis != b.points_per_axis || a.values.size() != b.values.size())
    throw ParameterError("edge metrics: grids are not aligned");
  if (a.values.empty()) throw ParameterError("edge metrics: empty grids");
}
}  // namespace

EdgeSets edge_sets_binary(const GridField& recon, const GridField& truth) {
  require_aligned(recon, truth);
  std::int64_t t = 0, p = 0, n = 0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const double tv = truth.values[i];
    if (tv != 0.0 && tv != 1.0)
      throw ParameterError("edge_sets_binary: truth must be 0/1 valued");
    const double rv = recon.values[i];
    if (rv >= 0.25 && rv <= 0.75)
      ++t;
    else if (tv == 0.0 && rv > 0.75)
      ++p;
    else if (tv == 1.0 && rv < 0.25)
      ++n;
  }
  const double scale = 1.0 / double(truth.values.size());
  EdgeSets es;
  es.measure_T = double(t) * scale;
  es.measure_P = double(p) * scale;
  es.measure_N = double(n) * scale;
  es.measure_union = double(t + p + n) * scale;  // the sets are disjoint
  return es;
}

double edge_discrepancy(const GridField& recon, const GridField& truth, double c) {
  require_aligned(recon, truth);
  if (!(c > 0.0)) throw ParameterError("edge_discrepancy: threshold must be positive");
  std::int64_t bad = 0;
  for (std::size_t i = 0; i < truth.values.size(); ++i)
    if (std::abs(recon.values[i] - truth.values[i]) >= c) ++bad;
  return double(bad) / double(truth.values.size());
}

double gamma_exponent(double p) {
  if (!(p > 1.0 && p <= 2.0)) throw ParameterError("gamma_exponent: p must lie in (1,2]");
  const double v = std::log2(std::numbers::pi) - (1.0 + 1.0 / p);
  return std::max(0.0, v);
}

double critical_p0() { return 1.0 / (std::log2(std::numbers::pi) - 1.0); }

EdgeReport recovery_report(const TrigPolynomial& recon, const Phantom& truth, int points_per_axis,
                           const Measurements* meas) {
  if (recon.dim() != 2) throw ParameterError("recovery_report: reconstruction must be 2-d");
  const GridField tg = phantom_render(truth, points_per_axis);
  const GridField rg = evaluate_on_grid(recon, points_per_axis);

  EdgeReport rep;
  rep.grid = points_per_axis;
  rep.phantom_id = truth.id;

  GridField diff = rg;
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= tg.values[i];
  for (double p : {1.0, 1.5, 2.0}) rep.lp_errors[p] = lp_norm_grid(diff, p);
  rep.discrepancy = edge_discrepancy(rg, tg);
  rep.bv_objective = bv_objective_grid(recon, points_per_axis);
  if (meas) rep.feasibility = feasibility_residual(recon, *meas);

  bool binary = true;
  for (double v : tg.values)
    if (v != 0.0 && v != 1.0) {
      binary = false;
      break;
    }
  if (binary) rep.edge_sets = edge_sets_binary(rg, tg);
  return rep;
}

}  // namespace torec
