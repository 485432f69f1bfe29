// Serial reference vs OpenMP path of the data-parallel kernels.
#include <benchmark/benchmark.h>

#include "uavjam/ao_driver.hpp"
#include "uavjam/beam_opt.hpp"

using namespace uavjam;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

const SystemModel& model() {
    static const SystemModel m(Scenario::table1(), ModelOptions{EveBoundMode::Rigorous});
    return m;
}

const SolutionState& state() {
    static const SolutionState s = initial_state(model());
    return s;
}

void BM_EvaluateSlots(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_slots(state(), model(), exec_of(st)));
}

void BM_EveRateOracle(benchmark::State& st) {
    const SolutionState& s = state();
    for (auto _ : st)
        benchmark::DoNotOptimize(eve_rate_oracle(s.trajectory[10], s.orientations[9], s.beams[9], model().bs_beam(),
                                                 model().scenario(), 64, exec_of(st)));
}

void BM_MinJammingGain(benchmark::State& st) {
    const SolutionState& s = state();
    for (auto _ : st)
        benchmark::DoNotOptimize(min_jamming_array_gain(s.trajectory[10], s.orientations[9], s.beams[9],
                                                        model().eve_grid(), model().scenario(), exec_of(st)));
}

void BM_ScoreCandidates(benchmark::State& st) {
    const SolutionState& s = state();
    const BeamSubproblem sub = make_beam_subproblem(s, 10, model(), evaluate_slots(s, model()));
    RngStream rng(1);
    std::vector<ComplexVec> cands;
    for (int k = 0; k < 100; ++k) {
        ComplexVec v = sample_complex_gaussian(sub.dim(), rng);
        cands.push_back(v / v.norm());
    }
    for (auto _ : st) benchmark::DoNotOptimize(score_candidates(cands, sub, exec_of(st)));
}

} // namespace

BENCHMARK(BM_EvaluateSlots)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EveRateOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinJammingGain)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreCandidates)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
