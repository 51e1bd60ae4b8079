#include "semcomm/learnability.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace semcomm {

using json = nlohmann::ordered_json;

LearnabilityReport check_learnability(const SemanticSystem& system) {
    LearnabilityReport report;
    const SpectralStats& s = system.spectral();
    report.learnable = system.learnable();
    report.numerical_rank = s.numerical_rank;
    report.required_rank = system.n_meanings();
    report.sigma_min = s.sigma_min;
    report.condition_number = s.condition_number;
    if (!report.learnable) {
        report.witness = construct_confusable_priors(system);
    }
    return report;
}

std::string to_json(const LearnabilityReport& report) {
    json j;
    j["learnable"] = report.learnable;
    j["rank"] = report.numerical_rank;
    j["n"] = report.required_rank;
    j["sigma_min"] = report.sigma_min;
    // nlohmann serializes infinities as null, which is what we want for the
    // kappa of an exactly singular system.
    j["kappa"] = report.condition_number;
    if (report.witness) {
        json w;
        json p1 = json::array(), p2 = json::array();
        for (int i = 0; i < report.witness->first.size(); ++i) p1.push_back(report.witness->first[i]);
        for (int i = 0; i < report.witness->second.size(); ++i) p2.push_back(report.witness->second[i]);
        w["p1"] = std::move(p1);
        w["p2"] = std::move(p2);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j.dump();
}

std::pair<ProbabilityVector, ProbabilityVector> construct_confusable_priors(
    const SemanticSystem& system, const std::optional<ProbabilityVector>& base) {
    if (system.learnable()) {
        throw Error(ErrorCode::SystemLearnable, "full-rank systems admit no confusable priors");
    }
    const int n = system.n_meanings();

    Eigen::VectorXd v = system.smallest_singular_direction();
    v /= v.norm();

    // Null directions of a column-stochastic matrix sum to ~0; enforce it
    // exactly so p2 stays normalized, then make sure v still kills A.
    double ones_dot = v.sum();
    if (std::abs(ones_dot) > 1e-8) {
        v.array() -= ones_dot / n;
        double norm = v.norm();
        if (!(norm > 0.0)) {
            throw Error(ErrorCode::SingularSystem, "null direction collapsed under re-centering");
        }
        v /= norm;
    }
    if ((system.effective() * v).cwiseAbs().maxCoeff() > 1e-9) {
        throw Error(ErrorCode::SingularSystem, "no usable null direction within tolerance");
    }

    // Fix the arbitrary SVD sign: first meaningful component positive.
    for (int i = 0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            break;
        }
    }

    ProbabilityVector p1 = base.value_or(ProbabilityVector::uniform(n));
    if (p1.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "base prior has " + std::to_string(p1.size()) + " entries, system has " +
                        std::to_string(n) + " meanings");
    }

    // Largest step along v that keeps every entry nonnegative, halved.
    double gamma = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (v[i] < -1e-12) gamma = std::min(gamma, p1[i] / -v[i]);
    }
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw Error(ErrorCode::BadBase,
                    "base prior has no mass to trade along the null direction");
    }
    double epsilon = 0.5 * gamma;
    ProbabilityVector p2(p1.entries() + epsilon * v);
    return {std::move(p1), std::move(p2)};
}

DeterministicEncodingReport analyze_deterministic_encoding(const StochasticMatrix& encoder,
                                                           const StochasticMatrix& channel) {
    if (channel.rows() != channel.cols() || channel.cols() != encoder.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "channel does not act on the encoder's messages");
    }
    DeterministicEncodingReport report;
    const int m = encoder.rows();
    const int n = encoder.cols();

    std::vector<int> mapping(n, -1);
    for (int j = 0; j < n; ++j) {
        int support = -1;
        for (int i = 0; i < m; ++i) {
            if (encoder(i, j) > 1e-9) {
                if (support >= 0) return report;  // two meaningful entries: not deterministic
                support = i;
            }
        }
        if (support < 0 || encoder(support, j) < 1.0 - 1e-9) return report;
        mapping[j] = support;
    }
    report.is_deterministic = true;
    report.mapping = mapping;

    std::set<int> used(mapping.begin(), mapping.end());
    report.injective = static_cast<int>(used.size()) == n;
    if (!report.injective) return report;  // two meanings share a message: hopeless

    // Injective deterministic encoder: A's columns are the used channel
    // columns, so learnability is their rank being N.
    Eigen::MatrixXd sub(m, n);
    for (int j = 0; j < n; ++j) sub.col(j) = channel.column(mapping[j]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    const auto& sv = svd.singularValues();
    double tol = (sv.size() ? sv[0] : 0.0) * std::max(m, n) * kRankTolFactor;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol) ++rank;
    }
    report.learnable_given_channel = rank == n;
    return report;
}

}  // namespace semcomm
