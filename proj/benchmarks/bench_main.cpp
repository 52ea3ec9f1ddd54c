// Microbenchmarks for the kernels the iterative solvers spend their time
// in. Sizes follow the intended desk scale (n up to 8).

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pnscale/boundary.hpp"
#include "pnscale/manifold.hpp"
#include "pnscale/matrix_scaling.hpp"
#include "pnscale/operator_scaling.hpp"

using namespace pnscale;

namespace {

CMat ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMat g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

PDPoint random_pd(int n, std::mt19937_64& rng) {
  const CMat g = ginibre(n, rng);
  return PDPoint(g * g.adjoint() + 0.1 * CMat::Identity(n, n));
}

BoundaryPoint random_boundary(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.1, 1.1);
  RVec lam(n);
  for (int i = 0; i < n; ++i) lam(i) = uni(rng);
  std::sort(lam.data(), lam.data() + n, std::greater<double>());
  const CMat g = ginibre(n, rng);
  const Eigen::HouseholderQR<CMat> qr(g);
  return BoundaryPoint::canonicalize(lam, qr.householderQ());
}

void bm_pd_sqrt(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const PDPoint x = random_pd(static_cast<int>(state.range(0)), rng);
  const CMat m = x.m();
  for (auto _ : state) {
    // Fresh point each pass: sqrt() is cached on the instance.
    PDPoint fresh(m);
    benchmark::DoNotOptimize(fresh.sqrt());
  }
}

void bm_busemann(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int n = static_cast<int>(state.range(0));
  const BoundaryPoint p = random_boundary(n, rng);
  const PDPoint x = random_pd(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(busemann(p, x));
}

void bm_pairing(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int n = static_cast<int>(state.range(0));
  const BoundaryPoint p = random_boundary(n, rng);
  const BoundaryPoint q = random_boundary(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pairing(p, q));
}

void bm_sinkhorn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  RMat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = uni(rng);
  }
  const NonnegMatrixInstance inst(a, RVec::Ones(n), RVec::Ones(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sinkhorn(inst, 1e-10, 200));
  }
}

void bm_alternating_sweeps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<CMat> mats;
  for (int k = 0; k < 3; ++k) mats.push_back(ginibre(n, rng));
  const OperatorTuple a(n, std::move(mats));
  const BoundaryPoint p = BoundaryPoint::canonicalize(
      RVec::Ones(n), CMat::Identity(n, n));
  const MarginalTarget target(p, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scale_alternating(a, target, 1e-12, 50));
  }
}

BENCHMARK(bm_pd_sqrt)->Arg(4)->Arg(8);
BENCHMARK(bm_busemann)->Arg(4)->Arg(8);
BENCHMARK(bm_pairing)->Arg(4)->Arg(8);
BENCHMARK(bm_sinkhorn)->Arg(4)->Arg(8);
BENCHMARK(bm_alternating_sweeps)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
