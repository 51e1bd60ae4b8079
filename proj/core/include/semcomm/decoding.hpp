#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "semcomm/distortion_matrix.hpp"
#include "semcomm/probability_vector.hpp"
#include "semcomm/semantic_system.hpp"

namespace semcomm {

struct DecoderTable {
    std::vector<int> map;     // received message -> decoded meaning, length M
    Eigen::VectorXd belief;   // the prior (or estimate) the table was optimized for
};

std::string to_json(const DecoderTable& table);

/// Expected-loss score of decoding s_hat as w_hat when meanings are believed
/// to follow `belief`: sum_w belief(w) A(s_hat, w) d(w, w_hat). The belief may
/// be any real vector (raw estimates carry negative entries).
double psi(const Eigen::VectorXd& belief, const SemanticSystem& system,
           const DistortionMatrix& distortion, int w_hat, int s_hat);

/// Per-message argmin of psi; ties break to the lowest meaning index.
DecoderTable optimal_decoder(const Eigen::VectorXd& belief, const SemanticSystem& system,
                             const DistortionMatrix& distortion);

/// Average loss of running `table` when meanings truly follow `true_prior`.
double semantic_distortion(const ProbabilityVector& true_prior, const SemanticSystem& system,
                           const DistortionMatrix& distortion, const DecoderTable& table);

/// Excess distortion of decoding with `believed` instead of the true prior.
/// Nonnegative up to round-off (clamped to 0 within -1e-12).
double distortion_gap(const ProbabilityVector& true_prior, const Eigen::VectorXd& believed,
                      const SemanticSystem& system, const DistortionMatrix& distortion);

/// Gap ceiling d_max sqrt(N M) / (sigma_min sqrt(T)).
double distortion_gap_bound(double d_max, int n_meanings, int n_messages,
                            double sigma_min, std::int64_t t);

/// 1 - semantic distortion under the 0-1 loss: probability the decoded
/// meaning equals the transmitted one.
double classification_accuracy(const ProbabilityVector& true_prior, const SemanticSystem& system,
                               const DecoderTable& table);

}  // namespace semcomm
