#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semcomm/probability_vector.hpp"
#include "semcomm/semantic_system.hpp"

namespace semcomm {

struct LearnabilityReport {
    bool learnable = false;
    int numerical_rank = 0;
    int required_rank = 0;  // N
    double sigma_min = 0.0;
    double condition_number = 0.0;
    /// Two distinct priors with identical message statistics; present exactly
    /// when the system is not learnable.
    std::optional<std::pair<ProbabilityVector, ProbabilityVector>> witness;
};

LearnabilityReport check_learnability(const SemanticSystem& system);

/// {"learnable","rank","n","sigma_min","kappa","witness"} with witness null
/// when learnable.
std::string to_json(const LearnabilityReport& report);

/// For a rank-deficient system, returns (p1, p2) with A p1 == A p2 but
/// p1 != p2. p1 is `base` (uniform when absent); p2 = p1 + (gamma/2) v where v
/// is a unit null direction of A and gamma keeps p2 on the simplex. Throws
/// SystemLearnable for full-rank systems, BadBase when base has no room to
/// move along v.
std::pair<ProbabilityVector, ProbabilityVector> construct_confusable_priors(
    const SemanticSystem& system,
    const std::optional<ProbabilityVector>& base = std::nullopt);

struct DeterministicEncodingReport {
    bool is_deterministic = false;
    std::vector<int> mapping;  // meaning -> message; empty unless deterministic
    bool injective = false;
    bool learnable_given_channel = false;
};

/// Detects encoders that put all mass of each column on one message, and for
/// those reduces learnability to injectivity plus rank of the used channel
/// columns.
DeterministicEncodingReport analyze_deterministic_encoding(const StochasticMatrix& encoder,
                                                           const StochasticMatrix& channel);

}  // namespace semcomm
