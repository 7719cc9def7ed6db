#include "slitflow/family_io.hpp"
#include "slitflow/geodesic.hpp"
#include "slitflow/limitset.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace slitflow;

namespace {

const surface::SlitSurface& scaled_surface() {
  static const surface::SlitSurface s(
      contfrac::generate_slope_family(2, contfrac::default_dense_prefix(2, 8), 8,
                                      contfrac::GrowthMode::scaled()),
      Rational(1, 100));
  return s;
}

void BM_Convergents(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<unsigned long> coeff(1, 1000000);
  std::vector<BigInt> coeffs;
  for (int k = 0; k < state.range(0); ++k) coeffs.emplace_back(coeff(rng));
  for (auto _ : state) benchmark::DoNotOptimize(contfrac::CFExpansion::from_coefficients(coeffs));
}
BENCHMARK(BM_Convergents)->Arg(30)->Arg(300);

void BM_GenerateScaled(benchmark::State& state) {
  const auto levels = static_cast<unsigned>(state.range(0));
  const auto u = contfrac::default_dense_prefix(2, levels);
  for (auto _ : state) {
    benchmark::DoNotOptimize(contfrac::generate_slope_family(2, u, levels, contfrac::GrowthMode::scaled()));
  }
}
BENCHMARK(BM_GenerateScaled)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_FamilyRoundTrip(benchmark::State& state) {
  contfrac::FamilyFile f;
  f.family = scaled_surface().family();
  const std::string text = contfrac::family_to_string(f);
  for (auto _ : state) benchmark::DoNotOptimize(contfrac::family_from_string(text));
}
BENCHMARK(BM_FamilyRoundTrip)->Unit(benchmark::kMillisecond);

void BM_LengthReport(benchmark::State& state) {
  const auto& s = scaled_surface();
  const auto c = s.convergent_curve(0, 12);
  const Interval t = geodesic::balanced_time(s, c);
  for (auto _ : state) benchmark::DoNotOptimize(geodesic::length_report(s, c, t));
}
BENCHMARK(BM_LengthReport)->Unit(benchmark::kMicrosecond);

void BM_ShortestCurve(benchmark::State& state) {
  const auto& s = scaled_surface();
  const Interval t(static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geodesic::shortest_torus_curve(s, 1, t));
}
BENCHMARK(BM_ShortestCurve)->Arg(5)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_Probe(benchmark::State& state) {
  const auto& s = scaled_surface();
  const std::vector<surface::Curve> tests = {surface::parse_curve("T 0 1/1"), surface::parse_curve("T 1 1/1")};
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(limitset::make_probe(s, n, tests));
}
BENCHMARK(BM_Probe)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
