#pragma once

#include <Eigen/Dense>

#include "semcomm/probability_vector.hpp"
#include "semcomm/stochastic_matrix.hpp"

namespace semcomm {

struct SpectralStats {
    Eigen::VectorXd singular_values;  // descending, min(M,N) of them
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double condition_number = 0.0;    // +inf when sigma_min == 0
    int numerical_rank = 0;
    double rank_tolerance = 0.0;      // sigma_max * max(M,N) * 1e-12
};

/// Encoder U (M x N) composed with channel C (M x M). Construction eagerly
/// factors A = C * U so rank, conditioning, the pseudoinverse and the
/// least-identifiable direction are all cached.
class SemanticSystem {
public:
    SemanticSystem(StochasticMatrix encoder, StochasticMatrix channel);

    const StochasticMatrix& encoder() const { return encoder_; }
    const StochasticMatrix& channel() const { return channel_; }
    const Eigen::MatrixXd& effective() const { return effective_; }
    const SpectralStats& spectral() const { return spectral_; }
    const Eigen::MatrixXd& pseudoinverse() const { return pinv_; }

    // SVD factors: effective() == svd_u() * diag(singular_values) * svd_v_thin()^T.
    const Eigen::MatrixXd& svd_u() const { return svd_u_; }
    const Eigen::MatrixXd& svd_v() const { return svd_v_; }  // full N x N

    /// Right singular direction of the smallest singular value, including the
    /// implicit zeros when M < N: the last column of the full V factor.
    Eigen::VectorXd smallest_singular_direction() const { return svd_v_.col(svd_v_.cols() - 1); }

    int n_meanings() const { return encoder_.cols(); }
    int n_messages() const { return encoder_.rows(); }
    bool learnable() const { return spectral_.numerical_rank == n_meanings(); }

    /// Message distribution induced by a prior on meanings: A * p.
    ProbabilityVector push_forward(const ProbabilityVector& prior) const;

private:
    StochasticMatrix encoder_;
    StochasticMatrix channel_;
    Eigen::MatrixXd effective_;
    Eigen::MatrixXd svd_u_;   // M x min(M,N)
    Eigen::MatrixXd svd_v_;   // N x N (full)
    Eigen::MatrixXd pinv_;    // N x M
    SpectralStats spectral_;
};

inline SemanticSystem build_system(StochasticMatrix encoder, StochasticMatrix channel) {
    return SemanticSystem(std::move(encoder), std::move(channel));
}

/// System with a perfect (identity) channel.
SemanticSystem build_system(StochasticMatrix encoder);

}  // namespace semcomm
