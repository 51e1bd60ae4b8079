#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

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

SemanticSystem duplicate_column_system(int n, int m, RandomStream& rng) {
    StochasticMatrix u = testutil::random_stochastic(m, n, rng);
    Eigen::MatrixXd raw = u.matrix();
    raw.col(n - 1) = raw.col(n - 2);  // two meanings become indistinguishable
    return SemanticSystem(StochasticMatrix(raw), testutil::random_stochastic(m, m, rng));
}

}  // namespace

TEST_CASE("learnable systems report full rank and no witness") {
    SemanticSystem system(StochasticMatrix::identity(2), testutil::bsc(0.1));
    LearnabilityReport report = check_learnability(system);
    CHECK(report.learnable);
    CHECK(report.numerical_rank == 2);
    CHECK(report.required_rank == 2);
    CHECK(report.sigma_min == doctest::Approx(0.8).epsilon(1e-12));
    CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("duplicate-column encoder yields the canonical witness pair") {
    Eigen::MatrixXd dup(2, 2);
    dup << 1.0, 1.0, 0.0, 0.0;
    SemanticSystem system = build_system(StochasticMatrix{dup});
    LearnabilityReport report = check_learnability(system);
    CHECK_FALSE(report.learnable);
    CHECK(report.numerical_rank == 1);
    REQUIRE(report.witness.has_value());

    const auto& [p1, p2] = *report.witness;
    CHECK(std::abs(p1[0] - 0.5) <= 1e-9);
    CHECK(std::abs(p1[1] - 0.5) <= 1e-9);
    CHECK(std::abs(p2[0] - 0.75) <= 1e-9);
    CHECK(std::abs(p2[1] - 0.25) <= 1e-9);
}

TEST_CASE("witness construction with an explicit base prior") {
    Eigen::MatrixXd u(3, 3);
    u << 1.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5;
    SemanticSystem system = build_system(StochasticMatrix{u});

    auto [p1, p2] = construct_confusable_priors(
        system, ProbabilityVector(std::vector<double>{0.2, 0.4, 0.4}));
    CHECK(std::abs(p2[0] - 0.2) <= 1e-9);
    CHECK(std::abs(p2[1] - 0.6) <= 1e-9);
    CHECK(std::abs(p2[2] - 0.2) <= 1e-9);
    CHECK((system.effective() * (p1.entries() - p2.entries())).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("witness construction rejects bad inputs") {
    SemanticSystem learnable(StochasticMatrix::identity(2), testutil::bsc(0.1));
    CHECK(throws_code(ErrorCode::SystemLearnable,
                      [&] { construct_confusable_priors(learnable); }));

    Eigen::MatrixXd dup(2, 2);
    dup << 1.0, 1.0, 0.0, 0.0;
    SemanticSystem degenerate = build_system(StochasticMatrix{dup});
    // The null direction is (+,-)/sqrt(2); a base with no mass on the negative
    // side leaves no room to move.
    CHECK(throws_code(ErrorCode::BadBase, [&] {
        construct_confusable_priors(degenerate,
                                    ProbabilityVector(std::vector<double>{1.0, 0.0}));
    }));
    CHECK(throws_code(ErrorCode::DimensionMismatch, [&] {
        construct_confusable_priors(degenerate, ProbabilityVector::uniform(3));
    }));
}

TEST_CASE("witness pairs are valid on random rank-deficient systems") {
    RandomStream rng(606);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform() * 7);
        int m = n + static_cast<int>(rng.uniform() * 4);
        SemanticSystem system = duplicate_column_system(n, m, rng);
        CHECK_FALSE(system.learnable());

        auto [p1, p2] = construct_confusable_priors(system);
        CHECK((system.effective() * (p1.entries() - p2.entries())).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((p1.entries() - p2.entries()).cwiseAbs().maxCoeff() > 1e-6);
        CHECK(p1.size() == n);
        CHECK(p2.size() == n);
    }
}

TEST_CASE("duplicating a column drops the rank") {
    RandomStream rng(707);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng.uniform() * 5);
        int m = n + static_cast<int>(rng.uniform() * 3);
        StochasticMatrix u = testutil::random_stochastic(m, n, rng);
        StochasticMatrix c = testutil::random_stochastic(m, m, rng);
        SemanticSystem before(u, c);

        Eigen::MatrixXd raw = u.matrix();
        raw.col(0) = raw.col(1);
        SemanticSystem after(StochasticMatrix(raw), c);
        CHECK(after.spectral().numerical_rank <= n - 1);
        CHECK(after.spectral().numerical_rank <= before.spectral().numerical_rank);
        CHECK_FALSE(after.learnable());
    }
}

TEST_CASE("deterministic encoding analysis") {
    Eigen::MatrixXd collide(2, 2);
    collide << 1.0, 1.0, 0.0, 0.0;
    DeterministicEncodingReport merged =
        analyze_deterministic_encoding(StochasticMatrix{collide}, testutil::bsc(0.1));
    CHECK(merged.is_deterministic);
    CHECK(merged.mapping == std::vector<int>{0, 0});
    CHECK_FALSE(merged.injective);
    CHECK_FALSE(merged.learnable_given_channel);

    DeterministicEncodingReport clean =
        analyze_deterministic_encoding(StochasticMatrix::identity(2), testutil::bsc(0.1));
    CHECK(clean.is_deterministic);
    CHECK(clean.injective);
    CHECK(clean.learnable_given_channel);

    // Injective encoder into a channel that erases everything.
    Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(2, 2, 0.5);
    DeterministicEncodingReport erased =
        analyze_deterministic_encoding(StochasticMatrix::identity(2), StochasticMatrix{flat});
    CHECK(erased.injective);
    CHECK_FALSE(erased.learnable_given_channel);

    DeterministicEncodingReport soft =
        analyze_deterministic_encoding(testutil::bsc(0.1), StochasticMatrix::identity(2));
    CHECK_FALSE(soft.is_deterministic);
    CHECK(soft.mapping.empty());

    // Within tolerance of deterministic counts as deterministic.
    Eigen::MatrixXd nearly(2, 2);
    nearly << 1.0 - 1e-10, 1e-10, 1e-10, 1.0 - 1e-10;
    CHECK(analyze_deterministic_encoding(StochasticMatrix{nearly}, StochasticMatrix::identity(2))
              .is_deterministic);
}

TEST_CASE("deterministic analysis agrees with the rank test") {
    RandomStream rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform() * 4);
        int m = n + static_cast<int>(rng.uniform() * 3);
        // Random deterministic encoder, sometimes non-injective.
        Eigen::MatrixXd u = Eigen::MatrixXd::Zero(m, n);
        for (int j = 0; j < n; ++j) u(static_cast<int>(rng.uniform() * m), j) = 1.0;
        StochasticMatrix encoder(u);
        StochasticMatrix channel = testutil::random_stochastic(m, m, rng);

        DeterministicEncodingReport report = analyze_deterministic_encoding(encoder, channel);
        CHECK(report.is_deterministic);
        LearnabilityReport truth = check_learnability(SemanticSystem(encoder, channel));
        CHECK(report.learnable_given_channel == truth.learnable);
    }
}

TEST_CASE("learnability report JSON carries the pinned fields") {
    Eigen::MatrixXd dup(2, 2);
    dup << 1.0, 1.0, 0.0, 0.0;
    LearnabilityReport report = check_learnability(build_system(StochasticMatrix{dup}));
    auto j = nlohmann::json::parse(to_json(report));
    CHECK(j["learnable"] == false);
    CHECK(j["rank"] == 1);
    CHECK(j["n"] == 2);
    CHECK(j["sigma_min"].is_number());
    CHECK(j["witness"]["p1"].size() == 2);
    CHECK(j["witness"]["p2"][0] == doctest::Approx(0.75));

    LearnabilityReport ok = check_learnability(SemanticSystem(StochasticMatrix::identity(2),
                                                              testutil::bsc(0.1)));
    auto j2 = nlohmann::json::parse(to_json(ok));
    CHECK(j2["learnable"] == true);
    CHECK(j2["witness"].is_null());
    CHECK(j2["kappa"].is_number());
}
