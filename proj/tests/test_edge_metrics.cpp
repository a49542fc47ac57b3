#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "torec/edge_metrics.hpp"
#include "torec/errors.hpp"
#include "torec/measurements.hpp"
#include "torec/reconstruct.hpp"
#include "torec/sampling.hpp"

using namespace torec;

namespace {

GridField make_grid(int G, std::initializer_list<double> vals) {
  GridField f;
  f.dim = 1;
  f.points_per_axis = G;
  f.values = vals;
  return f;
}

}  // namespace

TEST_CASE("edge_sets_binary classifies transition and error points") {
  const GridField truth = make_grid(8, {0, 0, 0, 0, 1, 1, 1, 1});
  const GridField exact = truth;
  const EdgeSets perfect = edge_sets_binary(exact, truth);
  CHECK(perfect.measure_T == 0.0);
  CHECK(perfect.measure_P == 0.0);
  CHECK(perfect.measure_N == 0.0);
  CHECK(perfect.measure_union == 0.0);

  const GridField half = make_grid(8, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  const EdgeSets all_t = edge_sets_binary(half, truth);
  CHECK(all_t.measure_T == 1.0);
  CHECK(all_t.measure_P == 0.0);
  CHECK(all_t.measure_N == 0.0);

  // One transitional point, one false positive, one false negative.
  const GridField mixed = make_grid(8, {0, 0.5, 0.9, 0, 1, 1, 0.1, 1});
  const EdgeSets es = edge_sets_binary(mixed, truth);
  CHECK(es.measure_T == doctest::Approx(1.0 / 8.0));
  CHECK(es.measure_P == doctest::Approx(1.0 / 8.0));
  CHECK(es.measure_N == doctest::Approx(1.0 / 8.0));
  CHECK(es.measure_union <= es.measure_T + es.measure_P + es.measure_N);
  CHECK(es.measure_union <= edge_discrepancy(mixed, truth, 0.25));

  GridField short_truth = make_grid(4, {0, 0, 1, 1});
  CHECK_THROWS_AS(edge_sets_binary(mixed, short_truth), ParameterError);
}

TEST_CASE("edge_discrepancy counts threshold exceedances inclusively") {
  const GridField truth = make_grid(4, {0, 1, 0, 1});
  CHECK(edge_discrepancy(truth, truth) == 0.0);

  GridField shifted = truth;
  for (double& v : shifted.values) v += 0.25;
  CHECK(edge_discrepancy(shifted, truth, 0.25) == 1.0);  // >= convention at the boundary

  GridField nearly = truth;
  for (double& v : nearly.values) v += 0.2499;
  CHECK(edge_discrepancy(nearly, truth, 0.25) == 0.0);

  CHECK_THROWS_AS(edge_discrepancy(truth, make_grid(2, {0, 1}), 0.25), ParameterError);
  CHECK_THROWS_AS(edge_discrepancy(truth, truth, 0.0), ParameterError);
}

TEST_CASE("edge_discrepancy obeys the Chebyshev bound") {
  Rng g(91);
  GridField truth;
  truth.dim = 2;
  truth.points_per_axis = 16;
  truth.values.resize(256);
  GridField recon = truth;
  for (std::size_t i = 0; i < 256; ++i) {
    truth.values[i] = draw_unit(g) < 0.5 ? 0.0 : 1.0;
    recon.values[i] = truth.values[i] + 0.8 * (draw_unit(g) - 0.5);
  }
  GridField diff = recon;
  for (std::size_t i = 0; i < 256; ++i) diff.values[i] -= truth.values[i];
  const double c = 0.25;
  const double disc = edge_discrepancy(recon, truth, c);
  for (double p : {1.0, 2.0})
    CHECK(disc <= std::pow(lp_norm_grid(diff, p) / c, p) + 1e-15);
}

TEST_CASE("gamma exponent and crossover constants") {
  CHECK(std::abs(gamma_exponent(2.0) - 0.151) <= 5e-4);
  CHECK(std::abs(critical_p0() - 1.535) <= 5e-4);
  CHECK(gamma_exponent(critical_p0()) <= 1e-12);
  CHECK(gamma_exponent(1.01) == 0.0);  // clamped below the crossover
  CHECK(gamma_exponent(2.0) ==
        doctest::Approx(std::log2(std::numbers::pi) - 1.5).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_exponent(1.0), ParameterError);
  CHECK_THROWS_AS(gamma_exponent(2.5), ParameterError);
}

TEST_CASE("recovery_report aggregates grid metrics") {
  const Phantom ph = paper_phantom();
  const int G = 257;

  // Truth projections improve monotonically with degree.
  double prev = 1.0;
  for (int m : {16, 32, 64}) {
    const Measurements meas = measure(ph, lowest_block(m, 2));
    const TrigPolynomial recon = partial_sum_recon(meas, m);
    const EdgeReport rep = recovery_report(recon, ph, G, &meas);
    CHECK(rep.grid == G);
    CHECK(rep.discrepancy < prev);
    CHECK(rep.feasibility.has_value());
    CHECK(*rep.feasibility == 0.0);
    CHECK(rep.lp_errors.at(1.0) <= rep.lp_errors.at(1.5));
    CHECK(rep.lp_errors.at(1.5) <= rep.lp_errors.at(2.0));
    prev = rep.discrepancy;
  }

  // Zero reconstruction reports the phantom's own norms.
  const TrigPolynomial zero(2, 4);
  const EdgeReport zrep = recovery_report(zero, ph, G, nullptr);
  const GridField truth = phantom_render(ph, G);
  CHECK(zrep.lp_errors.at(1.0) == doctest::Approx(lp_norm_grid(truth, 1.0)).epsilon(1e-12));
  CHECK(zrep.lp_errors.at(2.0) == doctest::Approx(lp_norm_grid(truth, 2.0)).epsilon(1e-12));
  CHECK(zrep.bv_objective == 0.0);
  CHECK_FALSE(zrep.feasibility.has_value());
  CHECK_FALSE(zrep.edge_sets.has_value());
}

TEST_CASE("subset inequality holds for binary truths under reconstruction") {
  // Binary phantom: unit-weight rectangle; partial sums ring around the jump.
  Phantom ph;
  ph.rects.push_back({1.0, 4.0, 1.0, 4.0, 1.0});
  ph.id = "binary-rect";
  const Measurements meas = measure(ph, lowest_block(6, 2));
  const TrigPolynomial recon = partial_sum_recon(meas, 6);
  const int G = 129;
  const GridField rg = evaluate_on_grid(recon, G);
  const GridField truth = phantom_render(ph, G);
  const EdgeSets es = edge_sets_binary(rg, truth);
  CHECK(es.measure_T > 0.0);
  CHECK(es.measure_union <= edge_discrepancy(rg, truth, 0.25) + 1e-15);

  const EdgeReport rep = recovery_report(recon, ph, G, &meas);
  REQUIRE(rep.edge_sets.has_value());
  CHECK(rep.edge_sets->measure_T == es.measure_T);
}
