#include <benchmark/benchmark.h>

#include <cpsys/complex_structure.hpp>
#include <cpsys/fields.hpp>
#include <cpsys/michelsohn.hpp>
#include <cpsys/montecarlo.hpp>
#include <random>

using namespace cpsys;

namespace {

GradedForm dense_form(int d, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  GradedForm f(d);
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      f.set(IndexTuple(idx.begin(), idx.end()), Complex(gauss(rng), gauss(rng)));
      return;
    }
    for (int i = start; i <= d; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(1, 0);
  return f;
}

void bm_wedge(benchmark::State& state) {
  const int d = int(state.range(0));
  const GradedForm a = dense_form(d, 2, 11), b = dense_form(d, 2, 13);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(bm_wedge)->Arg(6)->Arg(8)->Arg(10);

void bm_hodge_star(benchmark::State& state) {
  const int d = int(state.range(0));
  const LinearComplexStructure j(canonical_j_matrix(d / 2), Eigen::MatrixXd::Identity(d, d));
  const HermitianFrame fr = j.build_frame();
  const GradedForm a = dense_form(d, 3, 17);
  for (auto _ : state) benchmark::DoNotOptimize(hodge_star(a, fr));
}
BENCHMARK(bm_hodge_star)->Arg(6)->Arg(8);

void bm_michelsohn_root(benchmark::State& state) {
  const int n = int(state.range(0));
  std::mt19937_64 rng(19);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::NullaryExpr(
      n, n, [&](Eigen::Index, Eigen::Index) { return Complex(gauss(rng), gauss(rng)); });
  HermitianMatrixRep a{m * m.adjoint() + Eigen::MatrixXcd::Identity(n, n)};
  const HermitianMatrixRep sigma = michelsohn_power(a);
  for (auto _ : state) benchmark::DoNotOptimize(michelsohn_root(sigma));
}
BENCHMARK(bm_michelsohn_root)->Arg(3)->Arg(4)->Arg(6);

void bm_mc_volume(benchmark::State& state) {
  const int m = int(state.range(0));
  const FormField top = wedge_power_field(fs_field(m), m);
  for (auto _ : state) benchmark::DoNotOptimize(mc_integrate_form(top, 2000, 23, 1));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(bm_mc_volume)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
