#include <benchmark/benchmark.h>

#include "sqv/verifier.hpp"

using namespace sqv;

static void BM_BuildWorkbench(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  DimVector w(std::vector<int>(static_cast<std::size_t>(2 * d - 1), 0));
  w[0] = 2;
  w[w.size() - 1] = 2;
  for (auto _ : st) {
    Workbench wb(d, w, true);
    benchmark::DoNotOptimize(wb.kan().dims);
  }
}
BENCHMARK(BM_BuildWorkbench)->Arg(2)->Arg(3)->Arg(4);

static void BM_CountStratum(benchmark::State& st) {
  Workbench wb(2, {2, 0, 2}, true);
  const unsigned q = static_cast<unsigned>(st.range(0));
  const FqRep& rep = wb.rep(q);
  for (auto _ : st) benchmark::DoNotOptimize(count_points(rep, {2, 2, 2}, true));
}
BENCHMARK(BM_CountStratum)->Arg(2)->Arg(3)->Arg(5)->Arg(7)->Arg(11);

static void BM_EnumeratePoints(benchmark::State& st) {
  const unsigned q = static_cast<unsigned>(st.range(0));
  for (auto _ : st) {
    Workbench wb(3, {2, 0, 0, 0, 2}, true);
    benchmark::DoNotOptimize(wb.points(q).size());
  }
}
BENCHMARK(BM_EnumeratePoints)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_VerifyBEF(benchmark::State& st) {
  Workbench wb(2, {0, 2, 0}, true);
  const unsigned q = static_cast<unsigned>(st.range(0));
  wb.points(q);
  for (auto _ : st)
    for (auto& inst : admissible_instances(wb.dynkin(), true, {RelationName::BEF}))
      benchmark::DoNotOptimize(verify(wb, inst, q).pass);
}
BENCHMARK(BM_VerifyBEF)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_LagrangianChi(benchmark::State& st) {
  FiberFamily f;
  const std::size_t n = static_cast<std::size_t>(st.range(0));
  f.ambient = 2 * n;
  f.dim = n;
  QMat form(2 * n, 2 * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    form(k, n + k) = 1;
    form(n + k, k) = -1;
  }
  f.form = form;
  f.lagrangian = true;
  for (auto _ : st) benchmark::DoNotOptimize(chi_family(f, {2, 3, 5, 7, 11}).chi);
}
BENCHMARK(BM_LagrangianChi)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
