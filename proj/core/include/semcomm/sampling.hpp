#pragma once

#include <Eigen/Dense>
#include <vector>

#include "semcomm/probability_vector.hpp"
#include "semcomm/rng.hpp"
#include "semcomm/semantic_system.hpp"

namespace semcomm {

/// Inverse-CDF sampler over a fixed probability vector: one uniform and a
/// binary search per draw.
class CategoricalDistribution {
public:
    explicit CategoricalDistribution(const Eigen::VectorXd& probabilities);

    int draw(RandomStream& rng) const;
    int size() const { return static_cast<int>(cumulative_.size()); }

private:
    std::vector<double> cumulative_;
};

/// Precomputed samplers for every encoder and channel column, so the
/// two-stage draw w -> s -> s_hat costs two binary searches.
class SystemSampler {
public:
    explicit SystemSampler(const SemanticSystem& system);

    int sample_message(int meaning, RandomStream& rng) const;      // s ~ U[., meaning]
    int sample_observation(int meaning, RandomStream& rng) const;  // s_hat ~ C[., s]

private:
    std::vector<CategoricalDistribution> encoder_columns_;
    std::vector<CategoricalDistribution> channel_columns_;
};

/// One-shot draws (conveniences over the classes above).
int sample_meaning(const ProbabilityVector& prior, RandomStream& rng);
int sample_observation(const SemanticSystem& system, int meaning, RandomStream& rng);

}  // namespace semcomm
