#include <benchmark/benchmark.h>

#include "ggv/gcs.hpp"
#include "ggv/ghermitian.hpp"
#include "ggv/harness/fixtures.hpp"
#include "ggv/hypersurface.hpp"

namespace {

void BM_ExpressionJet(benchmark::State& state) {
  const ggv::Expression e = ggv::parse("sin(x1*x2)/(1 + norm2) + ln(1 + x3^2)*x4^3", 4);
  const ggv::Point p{0.3, -0.7, 1.1, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval_jet(p));
}
BENCHMARK(BM_ExpressionJet);

void BM_Integrability(benchmark::State& state) {
  const ggv::GcsData s = *ggv::make_fixture("ex31_prime").structure.gcs;
  ggv::CheckOptions o;
  o.points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ggv::check_integrability(s, o));
}
BENCHMARK(BM_Integrability)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ConfGk(benchmark::State& state) {
  const ggv::Structure s = ggv::make_fixture("ex32_rescaled").structure;
  const ggv::GHermitian h = s.hermitian();
  const auto crit = static_cast<ggv::ConfGkCriterion>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ggv::check_conf_gk(h, *s.lee, crit));
}
BENCHMARK(BM_ConfGk)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Lee1(benchmark::State& state) {
  const ggv::Structure s = ggv::make_fixture("ex32_rescaled").structure;
  const ggv::GHermitian h = s.hermitian();
  for (auto _ : state) benchmark::DoNotOptimize(ggv::check_lee1(*s.hyp, h, *s.lee));
}
BENCHMARK(BM_Lee1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
