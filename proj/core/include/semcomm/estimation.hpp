#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "semcomm/probability_vector.hpp"
#include "semcomm/semantic_system.hpp"

namespace semcomm {

/// Streaming tally of received messages.
class ObservationCounter {
public:
    explicit ObservationCounter(int n_messages);

    void record(int symbol);
    ProbabilityVector empirical_distribution() const;  // EmptyCounter before any record
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t total() const { return total_; }
    int size() const { return static_cast<int>(counts_.size()); }

private:
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
};

struct PriorEstimate {
    Eigen::VectorXd raw;           // A^+ applied to the empirical distribution
    ProbabilityVector projected;   // Euclidean projection of raw onto the simplex
    std::int64_t sample_count = 0;
};

std::string to_json(const PriorEstimate& estimate);

/// Inverts the empirical message distribution through the pseudoinverse.
/// Requires a learnable system (NotLearnable otherwise).
PriorEstimate estimate_prior(const SemanticSystem& system,
                             const ProbabilityVector& empirical,
                             std::int64_t sample_count = 0);

/// Euclidean distance between an (unconstrained) estimate and the truth.
double estimation_error(const Eigen::VectorXd& estimate, const ProbabilityVector& truth);

/// Expected-error ceiling sqrt(M) / (2 sigma_min sqrt(T)).
double convergence_bound(int n_messages, double sigma_min, std::int64_t t);

/// Euclidean projection onto the probability simplex (sort-and-threshold).
/// A vector already on the simplex comes back unchanged.
ProbabilityVector project_simplex(const Eigen::VectorXd& v);

}  // namespace semcomm
