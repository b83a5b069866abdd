// Microbenchmarks for the ingest and scoring hot paths. Fixtures are
// deterministic functions of their seeds so numbers are comparable across
// builds.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "evaudit/environment.hpp"
#include "evaudit/json_io.hpp"
#include "evaudit/masking.hpp"
#include "evaudit/oracles.hpp"
#include "evaudit/perturbation.hpp"
#include "evaudit/protocol.hpp"
#include "evaudit/rewards.hpp"
#include "evaudit/simulate.hpp"

#include "generators.hpp"

namespace {

fixtures::Built fixture(std::uint64_t seed, int steps) {
    fixtures::TrajectoryOptions opt;
    opt.min_steps = steps;
    opt.max_steps = steps;
    opt.all_pass = true;
    return fixtures::random_valid_trajectory(seed, opt);
}

void BM_ParseTagged(benchmark::State& state) {
    const auto built = fixture(11, static_cast<int>(state.range(0)));
    const std::string raw = evaudit::serialize_trajectory(built.trajectory);
    for (auto _ : state) {
        auto parsed = evaudit::parse_trajectory(raw, built.trajectory.query);
        benchmark::DoNotOptimize(parsed);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(raw.size()));
}
BENCHMARK(BM_ParseTagged)->Arg(2)->Arg(8)->Arg(24);

void BM_SerializeTagged(benchmark::State& state) {
    const auto built = fixture(12, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto raw = evaudit::serialize_trajectory(built.trajectory);
        benchmark::DoNotOptimize(raw);
    }
}
BENCHMARK(BM_SerializeTagged)->Arg(2)->Arg(8)->Arg(24);

void BM_JsonRoundTrip(benchmark::State& state) {
    const auto built = fixture(13, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto back = evaudit::trajectory_from_json(
            evaudit::trajectory_to_json(built.trajectory));
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(BM_JsonRoundTrip)->Arg(8);

void BM_ComputeMasks(benchmark::State& state) {
    const auto built = fixture(14, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto spans = evaudit::compute_masks(built.trajectory);
        benchmark::DoNotOptimize(spans);
    }
}
BENCHMARK(BM_ComputeMasks)->Arg(8)->Arg(24);

void BM_ScoreTrajectory(benchmark::State& state) {
    const auto built = fixture(15, static_cast<int>(state.range(0)));
    evaudit::OverlapHelpfulnessOracle oracle;
    evaudit::OverlapJudge judge;
    evaudit::SnippetPoolPerturber perturber;
    evaudit::ScoreConfig cfg;
    cfg.b_max = 2;
    cfg.seed = 7;
    for (auto _ : state) {
        auto breakdown = evaudit::score_trajectory(
            built.trajectory, built.gold, oracle, judge, perturber, cfg);
        benchmark::DoNotOptimize(breakdown);
    }
}
BENCHMARK(BM_ScoreTrajectory)->Arg(2)->Arg(8)->Arg(24);

void BM_WebSearch(benchmark::State& state) {
    const auto world = evaudit::make_synthetic_world(
        3, static_cast<int>(state.range(0)));
    const evaudit::ProxyConfig cfg;
    const std::string query = world.tasks.front().question;
    for (auto _ : state) {
        auto resp = evaudit::web_search(world.corpus, query, cfg);
        benchmark::DoNotOptimize(resp);
    }
}
BENCHMARK(BM_WebSearch)->Arg(8)->Arg(64);

void BM_SimulateBatch(benchmark::State& state) {
    for (auto _ : state) {
        auto summary = evaudit::simulate_batch(
            static_cast<int>(state.range(0)), 42, /*num_tasks=*/8);
        benchmark::DoNotOptimize(summary);
    }
}
BENCHMARK(BM_SimulateBatch)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
