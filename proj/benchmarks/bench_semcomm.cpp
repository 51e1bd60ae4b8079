#include <benchmark/benchmark.h>

#include "semcomm/semcomm.hpp"

using namespace semcomm;

namespace {

SemanticSystem make_system(int n) {
    return build_system(build_well_conditioned(n, /*seed=*/7));
}

void BM_SystemSpectral(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    StochasticMatrix encoder = build_well_conditioned(n, 7);
    for (auto _ : state) {
        SemanticSystem system = build_system(encoder);
        benchmark::DoNotOptimize(system.spectral().sigma_min);
    }
}
BENCHMARK(BM_SystemSpectral)->Arg(10)->Arg(30)->Arg(100);

void BM_EstimatePrior(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SemanticSystem system = make_system(n);
    RandomStream rng(11);
    ProbabilityVector prior = make_prior(PriorSource::Zipf, n, PriorParams{}, 13);
    ObservationCounter counter(system.n_messages());
    SystemSampler sampler(system);
    for (int i = 0; i < 5000; ++i) counter.record(sampler.sample_observation(sample_meaning(prior, rng), rng));
    ProbabilityVector empirical = counter.empirical_distribution();
    for (auto _ : state) {
        PriorEstimate estimate = estimate_prior(system, empirical, counter.total());
        benchmark::DoNotOptimize(estimate.projected);
    }
}
BENCHMARK(BM_EstimatePrior)->Arg(10)->Arg(30)->Arg(100);

void BM_ProjectSimplex(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RandomStream rng(17);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(project_simplex(v));
    }
}
BENCHMARK(BM_ProjectSimplex)->Arg(30)->Arg(300)->Arg(3000);

void BM_OptimalDecoder(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SemanticSystem system = make_system(n);
    DistortionMatrix d = DistortionMatrix::zero_one(n);
    ProbabilityVector belief = make_prior(PriorSource::Zipf, n, PriorParams{}, 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_decoder(belief.entries(), system, d));
    }
}
BENCHMARK(BM_OptimalDecoder)->Arg(10)->Arg(30)->Arg(100);

void BM_Sampling(benchmark::State& state) {
    SemanticSystem system = make_system(30);
    ProbabilityVector prior = make_prior(PriorSource::Zipf, 30, PriorParams{}, 13);
    SystemSampler sampler(system);
    RandomStream rng(23);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample_observation(sample_meaning(prior, rng), rng));
    }
}
BENCHMARK(BM_Sampling);

void BM_Experiment(benchmark::State& state) {
    ExperimentConfig config;
    config.n_meanings = 30;
    config.t_grid = {100, 1000};
    config.trials = 20;
    config.master_seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(config).final_accuracy);
    }
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
