#pragma once

#include <cstdio>
#include <memory>
#include <string>

#include "semcomm/semcomm.hpp"

namespace testutil {

/// Binary symmetric channel as a 2x2 column-stochastic matrix.
inline semcomm::StochasticMatrix bsc(double flip) {
    Eigen::MatrixXd c(2, 2);
    c << 1.0 - flip, flip, flip, 1.0 - flip;
    return semcomm::StochasticMatrix(c);
}

/// Random column-stochastic matrix with strictly positive entries.
inline semcomm::StochasticMatrix random_stochastic(int rows, int cols, semcomm::RandomStream& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) m(i, j) = 0.05 + rng.uniform();
    }
    return semcomm::normalize_columns(m);
}

inline semcomm::ProbabilityVector random_prior(int n, semcomm::RandomStream& rng) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = 0.01 + rng.uniform();
    return semcomm::ProbabilityVector(v / v.sum());
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

/// Runs a shell command, capturing stdout; stderr is left on the test's own
/// stderr so failures stay diagnosable.
inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace testutil
