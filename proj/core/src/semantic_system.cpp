#include "semcomm/semantic_system.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace semcomm {

SemanticSystem::SemanticSystem(StochasticMatrix encoder, StochasticMatrix channel)
    : encoder_(std::move(encoder)), channel_(std::move(channel)) {
    if (channel_.rows() != channel_.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "channel must be square, got " + std::to_string(channel_.rows()) + "x" +
                        std::to_string(channel_.cols()));
    }
    if (channel_.cols() != encoder_.rows()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "channel is " + std::to_string(channel_.rows()) + "x" +
                        std::to_string(channel_.cols()) + " but encoder has " +
                        std::to_string(encoder_.rows()) + " rows");
    }

    effective_ = channel_.matrix() * encoder_.matrix();

    const int m = n_messages();
    const int n = n_meanings();
    // Full V so the null space is spanned even when M < N; thin U suffices
    // for the pseudoinverse.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(effective_, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd_u_ = svd.matrixU();
    svd_v_ = svd.matrixV();
    spectral_.singular_values = svd.singularValues();

    spectral_.sigma_max = spectral_.singular_values.size() ? spectral_.singular_values[0] : 0.0;
    spectral_.sigma_min = spectral_.singular_values.size()
                              ? spectral_.singular_values[spectral_.singular_values.size() - 1]
                              : 0.0;
    spectral_.rank_tolerance = spectral_.sigma_max * std::max(m, n) * kRankTolFactor;
    spectral_.numerical_rank = 0;
    for (Eigen::Index i = 0; i < spectral_.singular_values.size(); ++i) {
        if (spectral_.singular_values[i] > spectral_.rank_tolerance) ++spectral_.numerical_rank;
    }
    spectral_.condition_number = spectral_.sigma_min > 0.0
                                     ? spectral_.sigma_max / spectral_.sigma_min
                                     : std::numeric_limits<double>::infinity();

    // A^+ = V S^+ U^T, truncating singular values at the rank tolerance.
    pinv_ = Eigen::MatrixXd::Zero(n, m);
    for (Eigen::Index i = 0; i < spectral_.singular_values.size(); ++i) {
        double s = spectral_.singular_values[i];
        if (s > spectral_.rank_tolerance) {
            pinv_ += (1.0 / s) * svd_v_.col(i) * svd_u_.col(i).transpose();
        }
    }
}

ProbabilityVector SemanticSystem::push_forward(const ProbabilityVector& prior) const {
    if (prior.size() != n_meanings()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "prior has " + std::to_string(prior.size()) + " entries, system has " +
                        std::to_string(n_meanings()) + " meanings");
    }
    return ProbabilityVector(effective_ * prior.entries());
}

SemanticSystem build_system(StochasticMatrix encoder) {
    int m = encoder.rows();
    return SemanticSystem(std::move(encoder), StochasticMatrix::identity(m));
}

}  // namespace semcomm
