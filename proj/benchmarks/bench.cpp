#include <benchmark/benchmark.h>

#include "matchdc/feasibility.hpp"
#include "matchdc/random_gen.hpp"
#include "matchdc/reductions.hpp"
#include "matchdc/solvers.hpp"
#include "matchdc/stability.hpp"

using namespace matchdc;

namespace {

ScdcInstance random_instance(int students, int schools, int types,
                             std::uint64_t seed) {
  RandomScdcParams params;
  params.n_students = students;
  params.n_schools = schools;
  params.n_types = types;
  params.acceptability_prob = 0.6;
  params.min_quota_mode = MinQuotaMode::Random;
  params.seed = seed;
  return gen_random_scdc(params);
}

CnfFormula restricted_formula() {
  CnfFormula f;
  f.num_variables = 3;
  f.clauses = {{1, 2, 3}, {1, 2, 3}, {-1, -2, -3}, {-1, -2, -3}};
  return f;
}

}  // namespace

// Runtime sanity for the diversity-to-regional construction: the work is
// expected to grow like |C| * |S|^2.
static void BM_ReduceScdcToHrq(benchmark::State& state) {
  const int students = static_cast<int>(state.range(0));
  const int schools = 4;
  auto inst = random_instance(students, schools, 3, 7);
  for (auto _ : state) {
    auto reduced = reduce_scdc_to_hrq(inst);
    benchmark::DoNotOptimize(reduced.instance);
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(schools) *
                       students * students);
}
BENCHMARK(BM_ReduceScdcToHrq)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void BM_CheckFeasible(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 4, 3, 11);
  MasterList ml;
  for (auto& [sid, _] : inst.students) ml.order.push_back(sid);
  for (auto& [cid, school] : inst.schools)
    school.min_quotas.assign(inst.num_types(), 0);
  auto outcome = sd_school_choice(inst, ml);
  for (auto _ : state) {
    auto verdict = check_feasible_scdc(inst, outcome);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_CheckFeasible)->RangeMultiplier(2)->Range(8, 256);

static void BM_BlockingPairScan(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 4, 3, 13);
  for (auto& [cid, school] : inst.schools)
    school.min_quotas.assign(inst.num_types(), 0);
  MasterList ml;
  for (auto& [sid, _] : inst.students) ml.order.push_back(sid);
  auto outcome = sd_school_choice(inst, ml);
  for (auto _ : state) {
    bool stable = is_stable_scdc(inst, outcome);
    benchmark::DoNotOptimize(stable);
  }
}
BENCHMARK(BM_BlockingPairScan)->RangeMultiplier(2)->Range(8, 128);

static void BM_EnumerateFeasible(benchmark::State& state) {
  auto inst = random_instance(static_cast<int>(state.range(0)), 3, 2, 17);
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_feasible(inst, {}, [&](const Matching&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateFeasible)->DenseRange(4, 8, 2);

static void BM_FindStableGadget(benchmark::State& state) {
  auto gadget = gadget_from_3sat(restricted_formula());
  for (auto _ : state) {
    auto result = find_stable(gadget, SearchMode::Exists);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_FindStableGadget);

static void BM_SerialDictatorship(benchmark::State& state) {
  RandomHrqParams params;
  params.n_doctors = static_cast<int>(state.range(0));
  params.n_hospitals = 8;
  params.n_regions = 6;
  params.acceptability_prob = 0.6;
  params.min_quota_mode = MinQuotaMode::Zero;
  params.seed = 23;
  auto inst = gen_random_hrq(params);
  MasterList ml;
  for (auto& [did, _] : inst.doctors) ml.order.push_back(did);
  for (auto _ : state) {
    auto outcome = serial_dictatorship(inst, ml);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_SerialDictatorship)->RangeMultiplier(2)->Range(16, 256);

BENCHMARK_MAIN();
