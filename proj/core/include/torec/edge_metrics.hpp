#pragma once

#include <map>
#include <optional>
#include <string>

#include "torec/measurements.hpp"
#include "torec/phantom.hpp"
#include "torec/trig_polynomial.hpp"

namespace torec {

// Transition/positive-error/negative-error masses for binary ground truth:
//   T: recon in [1/4, 3/4]; P: truth 0 and recon > 3/4; N: truth 1 and recon < 1/4.
// The three sets are disjoint by construction.
struct EdgeSets {
  double measure_T = 0.0;
  double measure_P = 0.0;
  double measure_N = 0.0;
  double measure_union = 0.0;
};

EdgeSets edge_sets_binary(const GridField& recon, const GridField& truth);

// Fraction of grid points with |recon - truth| >= c.
double edge_discrepancy(const GridField& recon, const GridField& truth, double c = 0.25);

// gamma_p = max(0, log2(pi / 2^{1+1/p})) for p in [1,2]; positive iff p > p0.
double gamma_exponent(double p);
// p0 = 1/(log2(pi) - 1), the crossover where gamma_p becomes positive.
double critical_p0();

struct EdgeReport {
  int grid = 0;
  std::string phantom_id;
  std::map<double, double> lp_errors;  // p -> grid Lp error, p in {1, 1.5, 2}
  double discrepancy = 0.0;            // threshold 1/4
  double bv_objective = 0.0;
  std::optional<double> feasibility;   // only when measurements supplied
  std::optional<EdgeSets> edge_sets;   // only for binary truth
};

// Renders the phantom exactly on the G^2 grid, evaluates the reconstruction
// on the same grid, and aggregates the error metrics above.
EdgeReport recovery_report(const TrigPolynomial& recon, const Phantom& truth, int points_per_axis,
                           const Measurements* meas = nullptr);

}  // namespace torec
