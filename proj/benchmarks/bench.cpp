#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "bundlex/automorphism.hpp"
#include "bundlex/bundle.hpp"
#include "bundlex/extend.hpp"
#include "bundlex/matrix_log.hpp"
#include "bundlex/rng.hpp"
#include "bundlex/verify.hpp"

using namespace bundlex;
using namespace bundlex::aut;

static void BM_EvalHenonWord(benchmark::State& state) {
  auto w = henon_word(3);
  FiberPoint z = {Cx(0.5, 0.25), Cx(-0.75, 0.1)};
  for (auto _ : state) {
    auto out = eval_word(w, z);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_EvalHenonWord);

static void BM_ExpandHenon(benchmark::State& state) {
  auto w = henon_word(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto ex = expand_polynomial(w);
    benchmark::DoNotOptimize(ex);
  }
}
BENCHMARK(BM_ExpandHenon)->Arg(2)->Arg(5);

static void BM_MatrixLog(benchmark::State& state) {
  Rng rng(99, "bench-matlog");
  Eigen::MatrixXcd m(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = rng.disc(1.0);
  m += 2.0 * Eigen::MatrixXcd::Identity(3, 3);
  for (auto _ : state) {
    auto lg = matrix_log(m);
    benchmark::DoNotOptimize(lg);
  }
}
BENCHMARK(BM_MatrixLog);

static void BM_ExtendSkoda(benchmark::State& state) {
  auto spec = ext::builtin_example("skoda");
  for (auto _ : state) {
    auto bundle = ext::extend_bundle(spec);
    benchmark::DoNotOptimize(bundle);
  }
}
BENCHMARK(BM_ExtendSkoda);

static void BM_VerifySkoda(benchmark::State& state) {
  auto bundle = ext::extend_bundle(ext::builtin_example("skoda"));
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = ext::verify_cocycle(bundle, samples);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_VerifySkoda)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
