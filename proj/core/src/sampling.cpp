#include "semcomm/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace semcomm {

CategoricalDistribution::CategoricalDistribution(const Eigen::VectorXd& probabilities) {
    if (probabilities.size() == 0) {
        throw Error(ErrorCode::BadParams, "categorical needs at least one outcome");
    }
    cumulative_.resize(probabilities.size());
    double running = 0.0;
    for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
        double p = probabilities[i];
        if (!std::isfinite(p) || p < -kNegativeClamp) {
            throw Error(ErrorCode::BadParams, "bad categorical weight at " + std::to_string(i));
        }
        running += std::max(p, 0.0);
        cumulative_[i] = running;
    }
    if (!(running > 0.0)) throw Error(ErrorCode::BadParams, "categorical has no mass");
}

int CategoricalDistribution::draw(RandomStream& rng) const {
    // Scale by the realized total so round-off in the weights cannot strand u
    // past the last bucket.
    double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
}

SystemSampler::SystemSampler(const SemanticSystem& system) {
    encoder_columns_.reserve(system.n_meanings());
    for (int j = 0; j < system.n_meanings(); ++j) {
        encoder_columns_.emplace_back(system.encoder().column(j));
    }
    channel_columns_.reserve(system.n_messages());
    for (int j = 0; j < system.n_messages(); ++j) {
        channel_columns_.emplace_back(system.channel().column(j));
    }
}

int SystemSampler::sample_message(int meaning, RandomStream& rng) const {
    if (meaning < 0 || meaning >= static_cast<int>(encoder_columns_.size())) {
        throw Error(ErrorCode::IndexOutOfRange, "meaning " + std::to_string(meaning));
    }
    return encoder_columns_[meaning].draw(rng);
}

int SystemSampler::sample_observation(int meaning, RandomStream& rng) const {
    int message = sample_message(meaning, rng);
    return channel_columns_[message].draw(rng);
}

int sample_meaning(const ProbabilityVector& prior, RandomStream& rng) {
    return CategoricalDistribution(prior.entries()).draw(rng);
}

int sample_observation(const SemanticSystem& system, int meaning, RandomStream& rng) {
    return SystemSampler(system).sample_observation(meaning, rng);
}

}  // namespace semcomm
