#include <benchmark/benchmark.h>

#include <vector>

#include "torec/phantom.hpp"
#include "torec/reconstruct.hpp"
#include "torec/rng.hpp"
#include "torec/sampling.hpp"
#include "torec/trig_polynomial.hpp"
#include "torec/vdp.hpp"

namespace {

torec::TrigPolynomial random_real_poly(int d, int m, std::uint64_t seed) {
  torec::Rng g(seed);
  torec::TrigPolynomial f(d, m);
  torec::for_each_in_cube(m, d, [&](const torec::FrequencyIndex& xi) {
    f.set_coeff(xi, torec::cplx(2.0 * torec::draw_unit(g) - 1.0, 2.0 * torec::draw_unit(g) - 1.0));
  });
  f.hermitian_symmetrize();
  return f;
}

void BM_evaluate_on_grid(benchmark::State& state) {
  const int m = int(state.range(0));
  const torec::TrigPolynomial f = random_real_poly(2, m, 11);
  const int G = 4 * m + 1;
  for (auto _ : state) benchmark::DoNotOptimize(torec::evaluate_on_grid(f, G));
}
BENCHMARK(BM_evaluate_on_grid)->Arg(16)->Arg(64)->Arg(128);

void BM_vdp_sum(benchmark::State& state) {
  const int m = int(state.range(0));
  const torec::TrigPolynomial f = random_real_poly(2, m, 12);
  for (auto _ : state) benchmark::DoNotOptimize(torec::vdp_sum(f.accessor(), m, 2));
}
BENCHMARK(BM_vdp_sum)->Arg(16)->Arg(64);

void BM_gradient_apply(benchmark::State& state) {
  const int m = int(state.range(0));
  const torec::GradientGridOperator B(2, m, 4 * m + 1);
  torec::Rng g(13);
  std::vector<torec::cplx> coeffs(std::size_t(B.block_size()));
  for (auto& c : coeffs) c = torec::cplx(torec::draw_unit(g) - 0.5, torec::draw_unit(g) - 0.5);
  std::vector<std::vector<double>> out;
  for (auto _ : state) {
    B.apply(coeffs, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_gradient_apply)->Arg(32)->Arg(128);

void BM_admm_iterations(benchmark::State& state) {
  const torec::Phantom ph = torec::phantom_load("paper");
  const torec::Measurements meas = torec::measure(ph, torec::lowest_block(8, 2));
  torec::AdmmParams ap;
  ap.max_iter = state.range(0);
  ap.eps_primal = 1e-30;  // never converges early; measures raw iteration cost
  ap.eps_dual = 1e-30;
  for (auto _ : state) benchmark::DoNotOptimize(torec::bv_min_admm(meas, 32, ap));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_admm_iterations)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_phantom_block(benchmark::State& state) {
  const torec::Phantom ph = torec::phantom_load("paper");
  for (auto _ : state) {
    torec::cplx acc = 0.0;
    torec::for_each_in_cube(8, 2,
                            [&](const torec::FrequencyIndex& xi) { acc += phantom_coeff(ph, xi); });
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_phantom_block);

}  // namespace

BENCHMARK_MAIN();
