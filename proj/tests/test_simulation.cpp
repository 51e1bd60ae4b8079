#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "semcomm/semcomm.hpp"

using namespace semcomm;

namespace {

bool throws_code(ErrorCode expected, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == expected;
    }
    return false;
}

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.scheme = Scheme::Well;
    config.n_meanings = 8;
    config.t_grid = {10, 50, 250};
    config.trials = 20;
    config.master_seed = 9;
    return config;
}

}  // namespace

TEST_CASE("splitmix64 reference sequence") {
    // Sequence of the reference implementation from state 1234567.
    CHECK(splitmix64(1234567ULL) == 6457827717110365317ULL);
    std::uint64_t s1 = 1234567ULL + 0x9e3779b97f4a7c15ULL;
    CHECK(splitmix64(s1) == 3203168211198807973ULL);
    CHECK(splitmix64(s1 + 0x9e3779b97f4a7c15ULL) == 9817491932198370423ULL);

    CHECK(derive_seed(42, kStreamEncoder) == 13679457532755275413ULL);
    CHECK(derive_seed(42, kStreamPrior) == 2949826092126892291ULL);
    CHECK(derive_seed(42, kStreamTrialBase) == 1910607418205583989ULL);
    CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("uniform draws follow the pinned u53 mapping") {
    RandomStream stream(777);
    std::mt19937_64 reference(777);
    for (int i = 0; i < 1000; ++i) {
        double expected = static_cast<double>(reference() >> 11) * 0x1.0p-53;
        CHECK(stream.uniform() == expected);
    }
    // Engine identity: the standard pins mt19937_64's sequence.
    RandomStream def(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = def.next_u64();
    CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("normal and gamma moments") {
    RandomStream rng(888);
    const int k = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < k; ++i) {
        double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / k) < 0.02);
    CHECK(std::abs(sq / k - 1.0) < 0.03);

    double g_sum = 0.0;
    for (int i = 0; i < 20000; ++i) g_sum += rng.gamma(2.5);
    CHECK(g_sum / 20000 == doctest::Approx(2.5).epsilon(0.03));

    double small_sum = 0.0;
    for (int i = 0; i < 20000; ++i) small_sum += rng.gamma(0.3);
    CHECK(small_sum / 20000 == doctest::Approx(0.3).epsilon(0.08));

    CHECK(throws_code(ErrorCode::BadParams, [&] { rng.gamma(0.0); }));
}

TEST_CASE("categorical sampling frequencies") {
    ProbabilityVector point = ProbabilityVector::point_mass(4, 2);
    RandomStream rng(1);
    for (int i = 0; i < 100; ++i) CHECK(sample_meaning(point, rng) == 2);

    ProbabilityVector skewed(std::vector<double>{0.7, 0.3});
    CategoricalDistribution dist(skewed.entries());
    int hits = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) hits += dist.draw(rng) == 0;
    CHECK(std::abs(static_cast<double>(hits) / draws - 0.7) < 0.01);
}

TEST_CASE("uniform categorical passes a chi-square check") {
    const int n = 30;
    const int draws = 100000;
    CategoricalDistribution dist(ProbabilityVector::uniform(n).entries());
    RandomStream rng(424242);
    std::vector<int> counts(n, 0);
    for (int i = 0; i < draws; ++i) ++counts[dist.draw(rng)];
    double expected = static_cast<double>(draws) / n;
    double stat = 0.0;
    for (int c : counts) stat += (c - expected) * (c - expected) / expected;
    // chi-square 0.999 quantile at 29 degrees of freedom.
    CHECK(stat < 58.302);
}

TEST_CASE("system sampler composes encoder and channel draws") {
    SemanticSystem perfect = build_system(StochasticMatrix::identity(5));
    SystemSampler clean(perfect);
    RandomStream rng(3);
    for (int w = 0; w < 5; ++w) {
        CHECK(clean.sample_message(w, rng) == w);
        CHECK(clean.sample_observation(w, rng) == w);
    }
    CHECK(throws_code(ErrorCode::IndexOutOfRange, [&] { clean.sample_message(5, rng); }));

    SemanticSystem noisy(StochasticMatrix::identity(2), testutil::bsc(0.1));
    SystemSampler flipper(noisy);
    int kept = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) kept += flipper.sample_observation(0, rng) == 0;
    CHECK(std::abs(static_cast<double>(kept) / draws - 0.9) < 0.01);
}

TEST_CASE("two-stage sampling matches the effective matrix") {
    RandomStream build_rng(14);
    SemanticSystem system(testutil::random_stochastic(4, 3, build_rng),
                          testutil::random_stochastic(4, 4, build_rng));
    SystemSampler sampler(system);
    // Direct draws from A's column vs the two-stage path, same meaning.
    CategoricalDistribution direct(system.effective().col(1));
    RandomStream rng_a(15), rng_b(16);
    const int draws = 200000;
    std::vector<double> freq_two(4, 0.0), freq_direct(4, 0.0);
    for (int i = 0; i < draws; ++i) {
        freq_two[sampler.sample_observation(1, rng_a)] += 1.0;
        freq_direct[direct.draw(rng_b)] += 1.0;
    }
    double tv = 0.0;
    for (int s = 0; s < 4; ++s) tv += std::abs(freq_two[s] - freq_direct[s]) / draws;
    CHECK(tv / 2.0 < 0.01);
}

TEST_CASE("well-conditioned scheme stays near the identity") {
    StochasticMatrix u = build_well_conditioned(30, 42);
    SemanticSystem system = build_system(u);
    CHECK(system.learnable());
    CHECK(system.spectral().sigma_min > 0.6);
    CHECK(system.spectral().sigma_min < 0.9);
    CHECK(system.spectral().condition_number < 2.0);

    // Zero perturbation degenerates to the identity exactly.
    CHECK((build_well_conditioned(4, 7, 0.0).matrix() -
           Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    // Valid for arbitrary seeds (constructor revalidates).
    RandomStream rng(77);
    for (int i = 0; i < 20; ++i) CHECK_NOTHROW(build_well_conditioned(12, rng.next_u64()));
    CHECK(build_well_conditioned(6, 3).matrix() == build_well_conditioned(6, 3).matrix());
}

TEST_CASE("moderate scheme spreads onto neighbours") {
    StochasticMatrix u = build_moderate(3);
    CHECK(u(0, 0) == doctest::Approx(1.0 / 1.3).epsilon(1e-15));
    CHECK(u(1, 0) == doctest::Approx(0.3 / 1.3).epsilon(1e-15));
    CHECK(u(2, 0) == 0.0);
    CHECK(u(0, 1) == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(u(1, 1) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(u(2, 1) == doctest::Approx(0.1875).epsilon(1e-15));

    SemanticSystem system = build_system(build_moderate(30));
    CHECK(system.learnable());
    CHECK(system.spectral().sigma_min > 0.1);
    CHECK(system.spectral().sigma_min < 0.3);
}

TEST_CASE("ill-conditioned scheme leaks mass everywhere") {
    StochasticMatrix u = build_ill_conditioned(2);
    CHECK(u(0, 0) == doctest::Approx(5.0 / 7.0).epsilon(1e-15));
    CHECK(u(1, 0) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));

    SemanticSystem system = build_system(build_ill_conditioned(30));
    CHECK(system.learnable());
    CHECK(system.spectral().sigma_min < 0.15);
    CHECK(system.spectral().condition_number > 5.0);
}

TEST_CASE("conditioning is ordered well > moderate > ill") {
    const int n = 30;
    double well = build_system(build_well_conditioned(n, 42)).spectral().sigma_min;
    double moderate = build_system(build_moderate(n)).spectral().sigma_min;
    double ill = build_system(build_ill_conditioned(n)).spectral().sigma_min;
    CHECK(well > moderate);
    CHECK(moderate > ill);
}

TEST_CASE("zipf prior values and shuffling") {
    PriorParams params;
    params.shuffle = false;
    ProbabilityVector plain = make_prior(PriorSource::Zipf, 3, params, 0);
    CHECK(plain[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-15));
    CHECK(plain[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-15));
    CHECK(plain[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-15));

    params.shuffle = true;
    ProbabilityVector shuffled = make_prior(PriorSource::Zipf, 8, params, 5);
    ProbabilityVector ranked = [&] {
        PriorParams p2;
        p2.shuffle = false;
        return make_prior(PriorSource::Zipf, 8, p2, 5);
    }();
    std::vector<double> a(shuffled.entries().data(), shuffled.entries().data() + 8);
    std::vector<double> b(ranked.entries().data(), ranked.entries().data() + 8);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);  // same multiset, different order
    CHECK(make_prior(PriorSource::Zipf, 8, params, 5) == shuffled);  // seed-stable

    params.zipf_exponent = 0.0;
    CHECK(throws_code(ErrorCode::BadParams, [&] { make_prior(PriorSource::Zipf, 3, params, 0); }));
}

TEST_CASE("dirichlet prior concentration behaviour") {
    PriorParams params;
    params.dirichlet_alpha = 1.0;
    CHECK_NOTHROW(make_prior(PriorSource::Dirichlet, 10, params, 3));

    params.dirichlet_alpha = 1e6;  // enormous alpha pins the draw near uniform
    ProbabilityVector flat = make_prior(PriorSource::Dirichlet, 10, params, 3);
    CHECK(flat.entries().maxCoeff() - flat.entries().minCoeff() < 0.01);

    params.dirichlet_alpha = -1.0;
    CHECK(throws_code(ErrorCode::BadParams,
                      [&] { make_prior(PriorSource::Dirichlet, 10, params, 3); }));
}

TEST_CASE("file priors validate contents") {
    PriorParams params;
    params.file = "/tmp/semcomm_test_prior.json";
    write_file(params.file, "[0.25, 0.75]");
    ProbabilityVector loaded = make_prior(PriorSource::File, 2, params, 0);
    CHECK(loaded[1] == doctest::Approx(0.75));

    write_file(params.file, "0.25\n0.75\n");
    CHECK(make_prior(PriorSource::File, 2, params, 0)[0] == doctest::Approx(0.25));

    write_file(params.file, "[0.5, 0.6]");
    CHECK(throws_code(ErrorCode::BadFile, [&] { make_prior(PriorSource::File, 2, params, 0); }));
    CHECK(throws_code(ErrorCode::BadFile, [&] { make_prior(PriorSource::File, 3, params, 0); }));
    params.file = "/tmp/definitely_missing_prior.json";
    CHECK(throws_code(ErrorCode::BadFile, [&] { make_prior(PriorSource::File, 2, params, 0); }));
}

TEST_CASE("experiment config validation") {
    ExperimentConfig config = small_config();
    config.t_grid = {};
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));
    config.t_grid = {10, 10};
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));
    config.t_grid = {0, 10};
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));

    config = small_config();
    config.trials = 0;
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));

    config = small_config();
    config.scheme = Scheme::File;
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));

    config = small_config();
    config.encoder = StochasticMatrix::identity(4);
    CHECK(throws_code(ErrorCode::InvalidConfig, [&] { run_experiment(config); }));

    config = small_config();
    config.distortion = DistortionMatrix::zero_one(5);  // wrong size for n=8
    CHECK(throws_code(ErrorCode::DimensionMismatch, [&] { run_experiment(config); }));

    // A rank-deficient file system cannot be estimated.
    config = small_config();
    Eigen::MatrixXd dup(2, 2);
    dup << 1.0, 1.0, 0.0, 0.0;
    config.scheme = Scheme::File;
    config.encoder = StochasticMatrix(dup);
    CHECK(throws_code(ErrorCode::NotLearnable, [&] { run_experiment(config); }));
}

TEST_CASE("experiment error shrinks with more observations") {
    ExperimentConfig config = small_config();
    config.trials = 100;
    ExperimentResult result = run_experiment(config);
    CHECK(result.curve.mean_error.front() > result.curve.mean_error.back());
    CHECK(result.curve.mean_gap.front() >= result.curve.mean_gap.back());
    for (size_t g = 0; g < result.curve.t_values.size(); ++g) {
        CHECK(result.curve.ci_low[g] <= result.curve.mean_error[g]);
        CHECK(result.curve.mean_error[g] <= result.curve.ci_high[g]);
        CHECK(result.curve.gap_ci_low[g] <= result.curve.mean_gap[g]);
        CHECK(result.curve.mean_gap[g] >= 0.0);
        if (g > 0) {
            CHECK(result.curve.bound[g] < result.curve.bound[g - 1]);
            CHECK(result.curve.gap_bound[g] < result.curve.gap_bound[g - 1]);
        }
    }
    CHECK(result.final_accuracy > 0.0);
    CHECK(result.final_accuracy <= 1.0);
    CHECK(result.rng_identity == kRngIdentity);
}

TEST_CASE("BSC experiment honours the convergence bound at T=100") {
    ExperimentConfig config;
    config.scheme = Scheme::File;
    config.encoder = StochasticMatrix::identity(2);
    config.channel = testutil::bsc(0.1);
    config.prior_source = PriorSource::File;
    config.prior_params.file = "/tmp/semcomm_bsc_prior.json";
    write_file(config.prior_params.file, "[0.7, 0.3]");
    config.t_grid = {100};
    config.trials = 1000;
    config.master_seed = 4;
    ExperimentResult result = run_experiment(config);
    CHECK(result.sigma_min == doctest::Approx(0.8).epsilon(1e-9));
    // sqrt(2)/16 = 0.0884, and the observed mean sits near 0.067.
    CHECK(result.curve.mean_error[0] <= result.curve.bound[0]);
    CHECK(result.curve.mean_error[0] > 0.03);
}

TEST_CASE("experiments are bit-reproducible and thread-invariant") {
    ExperimentConfig config = small_config();
    config.trials = 16;
    ExperimentResult a = run_experiment(config);
    ExperimentResult b = run_experiment(config);
    CHECK(a.curve.mean_error == b.curve.mean_error);
    CHECK(a.curve.mean_gap == b.curve.mean_gap);

    config.parallelism = 4;
    ExperimentResult c = run_experiment(config);
    CHECK(a.curve.mean_error == c.curve.mean_error);
    CHECK(a.curve.ci_low == c.curve.ci_low);
    CHECK(a.curve.mean_gap == c.curve.mean_gap);
    CHECK(a.final_accuracy == c.final_accuracy);
}

TEST_CASE("oracle belief produces zero gaps") {
    ExperimentConfig config = small_config();
    config.belief = BeliefMode::Oracle;
    ExperimentResult result = run_experiment(config);
    for (double gap : result.curve.mean_gap) CHECK(gap <= 1e-9);
}

TEST_CASE("single-trial experiments have zero-width intervals") {
    ExperimentConfig config = small_config();
    config.trials = 1;
    ExperimentResult result = run_experiment(config);
    for (size_t g = 0; g < result.curve.t_values.size(); ++g) {
        CHECK(result.curve.ci_low[g] == result.curve.mean_error[g]);
        CHECK(result.curve.ci_high[g] == result.curve.mean_error[g]);
    }
}

TEST_CASE("raw-error curves preserve the conditioning order at small scale") {
    ExperimentConfig config;
    config.n_meanings = 30;
    config.t_grid = {100, 1000};
    config.trials = 30;
    config.master_seed = 2;
    config.parallelism = 4;

    std::vector<std::vector<double>> curves;
    for (Scheme scheme : {Scheme::Well, Scheme::Moderate, Scheme::Ill}) {
        config.scheme = scheme;
        curves.push_back(run_experiment(config).curve.mean_error);
    }
    for (size_t g = 0; g < 2; ++g) {
        CHECK(curves[2][g] >= curves[1][g]);  // ill >= moderate
        CHECK(curves[1][g] >= curves[0][g]);  // moderate >= well
    }
}

TEST_CASE("default grid is log-spaced and hits the endpoints") {
    std::vector<std::int64_t> grid = default_t_grid(10000, 20);
    CHECK(grid.size() == 20);
    CHECK(grid.front() == 10);
    CHECK(grid.back() == 10000);
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

    CHECK(default_t_grid(10, 5) == std::vector<std::int64_t>{10});
    CHECK(throws_code(ErrorCode::InvalidConfig, [] { default_t_grid(5, 10); }));
}

TEST_CASE("slope fitting on exact power laws") {
    std::vector<std::int64_t> t{100, 1000, 10000};
    std::vector<double> inv_sqrt, flat;
    for (std::int64_t v : t) {
        inv_sqrt.push_back(1.0 / std::sqrt(static_cast<double>(v)));
        flat.push_back(3.5);
    }
    CHECK(fit_loglog_slope(t, inv_sqrt) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit_loglog_slope(t, flat) == doctest::Approx(0.0));

    CHECK(throws_code(ErrorCode::InvalidConfig,
                      [&] { fit_loglog_slope({100, 1000}, {1.0, 2.0}); }));
    CHECK(throws_code(ErrorCode::NonPositiveValue,
                      [&] { fit_loglog_slope(t, {1.0, 0.0, 1.0}); }));
}

TEST_CASE("curve CSV round trip with exact values") {
    ExperimentConfig config = small_config();
    ExperimentResult result = run_experiment(config);
    std::string csv = curve_to_csv(result.curve);
    CHECK(csv.rfind("t,mean_error,ci_low,ci_high,bound,"
                    "mean_gap,gap_ci_low,gap_ci_high,gap_bound\n", 0) == 0);

    ConvergenceCurve back = curve_from_csv(csv);
    CHECK(back.t_values == result.curve.t_values);
    CHECK(back.mean_error == result.curve.mean_error);
    CHECK(back.gap_bound == result.curve.gap_bound);

    CHECK(throws_code(ErrorCode::BadFile, [] { curve_from_csv("nope\n1,2\n"); }));
    CHECK(throws_code(ErrorCode::BadFile, [] { curve_from_csv(""); }));
}

TEST_CASE("metadata records the configuration and rng identity") {
    ExperimentConfig config = small_config();
    ExperimentResult result = run_experiment(config);
    auto j = nlohmann::json::parse(metadata_json(result));
    CHECK(j["config"]["scheme"] == "well");
    CHECK(j["config"]["n"] == 8);
    CHECK(j["config"]["trials"] == 20);
    CHECK(j["config"]["prior"]["source"] == "zipf");
    CHECK(j["system"]["rank"] == 8);
    CHECK(j["rng"]["identity"] == kRngIdentity);
    CHECK(j["rng"]["streams"]["prior"] == 1);
    CHECK(j["fitted"]["error_slope"].is_number());
    CHECK(j["final_accuracy"].is_number());
    CHECK(j["wall_seconds"].is_number());
}
