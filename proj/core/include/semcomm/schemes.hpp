#pragma once

#include <cstdint>
#include <string>

#include "semcomm/probability_vector.hpp"
#include "semcomm/stochastic_matrix.hpp"

namespace semcomm {

/// Near-identity encoder: normalize_columns(I + perturbation * G) with G a
/// matrix of standard normals drawn column-major from `seed`.
StochasticMatrix build_well_conditioned(int n, std::uint64_t seed, double perturbation = 0.02);

/// Banded confusion: normalize_columns(I + 0.3 * nearest-neighbour adjacency).
/// Interior columns put 0.625 on the truth and 0.1875 on each neighbour.
StochasticMatrix build_moderate(int n);

/// Heavy shared mass: column-normalized 0.6 I + 0.4 ones, i.e. every meaning
/// leaks 0.4/(0.6 + 0.4 n) onto every message.
StochasticMatrix build_ill_conditioned(int n);

struct PriorParams {
    double zipf_exponent = 1.0;
    double dirichlet_alpha = 1.0;
    bool shuffle = true;        // zipf only: permute so meaning order is not rank order
    std::string file;           // source == File: path to a vector (JSON or CSV)
};

enum class PriorSource { Zipf, Dirichlet, File };

/// Zipf: p(w) proportional to 1/rank^s, optionally shuffled by `seed`.
/// Dirichlet: symmetric Dirichlet(alpha) draw. File: load and validate.
ProbabilityVector make_prior(PriorSource source, int n, const PriorParams& params,
                             std::uint64_t seed);

}  // namespace semcomm
