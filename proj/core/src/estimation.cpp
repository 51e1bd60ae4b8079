#include "semcomm/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace semcomm {

using json = nlohmann::ordered_json;

ObservationCounter::ObservationCounter(int n_messages) {
    if (n_messages < 1) throw Error(ErrorCode::BadParams, "counter needs n_messages >= 1");
    counts_.assign(n_messages, 0);
}

void ObservationCounter::record(int symbol) {
    if (symbol < 0 || symbol >= size()) {
        throw Error(ErrorCode::IndexOutOfRange, "symbol " + std::to_string(symbol) + " of " +
                                                    std::to_string(size()) + " messages");
    }
    ++counts_[symbol];
    ++total_;
}

ProbabilityVector ObservationCounter::empirical_distribution() const {
    if (total_ == 0) throw Error(ErrorCode::EmptyCounter, "no observations recorded");
    Eigen::VectorXd p(size());
    for (int i = 0; i < size(); ++i) p[i] = static_cast<double>(counts_[i]) / total_;
    return ProbabilityVector(std::move(p));
}

std::string to_json(const PriorEstimate& estimate) {
    json j;
    json raw = json::array(), projected = json::array();
    for (Eigen::Index i = 0; i < estimate.raw.size(); ++i) raw.push_back(estimate.raw[i]);
    for (int i = 0; i < estimate.projected.size(); ++i) projected.push_back(estimate.projected[i]);
    j["raw"] = std::move(raw);
    j["projected"] = std::move(projected);
    j["t"] = estimate.sample_count;
    return j.dump();
}

PriorEstimate estimate_prior(const SemanticSystem& system, const ProbabilityVector& empirical,
                             std::int64_t sample_count) {
    if (!system.learnable()) {
        throw Error(ErrorCode::NotLearnable,
                    "rank " + std::to_string(system.spectral().numerical_rank) + " < " +
                        std::to_string(system.n_meanings()));
    }
    if (empirical.size() != system.n_messages()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "empirical distribution has " + std::to_string(empirical.size()) +
                        " entries, system has " + std::to_string(system.n_messages()) +
                        " messages");
    }
    Eigen::VectorXd raw = system.pseudoinverse() * empirical.entries();
    ProbabilityVector projected = project_simplex(raw);
    return PriorEstimate{std::move(raw), std::move(projected), sample_count};
}

double estimation_error(const Eigen::VectorXd& estimate, const ProbabilityVector& truth) {
    if (estimate.size() != truth.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "estimate has " + std::to_string(estimate.size()) + " entries, truth has " +
                        std::to_string(truth.size()));
    }
    return (estimate - truth.entries()).norm();
}

double convergence_bound(int n_messages, double sigma_min, std::int64_t t) {
    if (n_messages < 1) throw Error(ErrorCode::BadParams, "need n_messages >= 1");
    if (!(sigma_min > 0.0)) {
        throw Error(ErrorCode::SingularSystem, "convergence bound needs sigma_min > 0");
    }
    if (t < 1) throw Error(ErrorCode::BadParams, "need t >= 1");
    return std::sqrt(static_cast<double>(n_messages)) /
           (2.0 * sigma_min * std::sqrt(static_cast<double>(t)));
}

ProbabilityVector project_simplex(const Eigen::VectorXd& v) {
    if (v.size() == 0) throw Error(ErrorCode::BadParams, "cannot project an empty vector");
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw Error(ErrorCode::BadParams, "non-finite entry");
    }

    // Already a distribution: hand it back untouched (makes projection exactly
    // idempotent).
    double sum = v.sum();
    if (std::abs(sum - 1.0) <= kSumTolerance && (v.array() >= 0.0).all()) {
        return ProbabilityVector(v);
    }

    // Sort-and-threshold: find the largest k with sorted[k] > (partial - 1)/k.
    std::vector<double> sorted(v.data(), v.data() + v.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double partial = 0.0, theta = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        partial += sorted[i];
        double candidate = (partial - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] > candidate) theta = candidate;
    }
    Eigen::VectorXd out = (v.array() - theta).cwiseMax(0.0);
    // Kill the residual round-off so the result is a valid distribution.
    out /= out.sum();
    return ProbabilityVector(std::move(out));
}

}  // namespace semcomm
