#include "semcomm/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semcomm/interchange.hpp"
#include "semcomm/rng.hpp"

namespace semcomm {

StochasticMatrix build_well_conditioned(int n, std::uint64_t seed, double perturbation) {
    if (n < 1) throw Error(ErrorCode::BadParams, "need n >= 1");
    if (perturbation < 0.0) throw Error(ErrorCode::BadParams, "perturbation must be >= 0");
    RandomStream rng(seed);
    Eigen::MatrixXd base = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) base(i, j) += perturbation * rng.normal();
    }
    return normalize_columns(base);
}

StochasticMatrix build_moderate(int n) {
    if (n < 1) throw Error(ErrorCode::BadParams, "need n >= 1");
    Eigen::MatrixXd base = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        base(i + 1, i) += 0.3;
        base(i, i + 1) += 0.3;
    }
    return normalize_columns(base);
}

StochasticMatrix build_ill_conditioned(int n) {
    if (n < 1) throw Error(ErrorCode::BadParams, "need n >= 1");
    Eigen::MatrixXd base = 0.6 * Eigen::MatrixXd::Identity(n, n) +
                           0.4 * Eigen::MatrixXd::Ones(n, n);
    return normalize_columns(base);
}

namespace {

ProbabilityVector zipf_prior(int n, double exponent, bool shuffle, std::uint64_t seed) {
    if (!(exponent > 0.0)) throw Error(ErrorCode::BadParams, "zipf exponent must be > 0");
    Eigen::VectorXd weights(n);
    for (int i = 0; i < n; ++i) weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), exponent);
    weights /= weights.sum();
    if (shuffle) {
        // Fisher-Yates driven by the pinned uniform, so the permutation is
        // part of the reproducible stream.
        RandomStream rng(seed);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.uniform() * (i + 1));
            j = std::min(j, i);
            std::swap(perm[i], perm[j]);
        }
        Eigen::VectorXd shuffled(n);
        for (int i = 0; i < n; ++i) shuffled[i] = weights[perm[i]];
        weights = std::move(shuffled);
    }
    return ProbabilityVector(std::move(weights));
}

ProbabilityVector dirichlet_prior(int n, double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::BadParams, "dirichlet alpha must be > 0");
    RandomStream rng(seed);
    Eigen::VectorXd draws(n);
    for (int i = 0; i < n; ++i) draws[i] = rng.gamma(alpha);
    double sum = draws.sum();
    if (!(sum > 0.0)) throw Error(ErrorCode::BadParams, "dirichlet draw degenerated to zero");
    return ProbabilityVector(draws / sum);
}

ProbabilityVector file_prior(int n, const std::string& path) {
    if (path.empty()) throw Error(ErrorCode::BadFile, "no prior file given");
    Eigen::VectorXd v;
    try {
        v = vector_from_text(read_file(path));
    } catch (const Error& e) {
        throw Error(ErrorCode::BadFile, "prior file " + path + ": " + e.what());
    }
    if (v.size() != n) {
        throw Error(ErrorCode::BadFile, "prior file " + path + " has " + std::to_string(v.size()) +
                                            " entries, expected " + std::to_string(n));
    }
    try {
        return ProbabilityVector(std::move(v));
    } catch (const Error& e) {
        throw Error(ErrorCode::BadFile, "prior file " + path + ": " + e.what());
    }
}

}  // namespace

ProbabilityVector make_prior(PriorSource source, int n, const PriorParams& params,
                             std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::BadParams, "need n >= 1");
    switch (source) {
        case PriorSource::Zipf: return zipf_prior(n, params.zipf_exponent, params.shuffle, seed);
        case PriorSource::Dirichlet: return dirichlet_prior(n, params.dirichlet_alpha, seed);
        case PriorSource::File: return file_prior(n, params.file);
    }
    throw Error(ErrorCode::BadParams, "unknown prior source");
}

}  // namespace semcomm
