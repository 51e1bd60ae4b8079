#pragma once

#include <Eigen/Dense>

#include "semcomm/errors.hpp"

namespace semcomm {

/// Column-stochastic matrix: entry (i,j) is the probability of output i given
/// input j, so every column sums to 1 (within 1e-9) and entries are >= 0
/// (round-off within 1e-12 below zero is clamped).
class StochasticMatrix {
public:
    explicit StochasticMatrix(Eigen::MatrixXd entries);

    static StochasticMatrix identity(int n);

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    double operator()(int i, int j) const { return entries_(i, j); }
    Eigen::VectorXd column(int j) const { return entries_.col(j); }
    const Eigen::MatrixXd& matrix() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
};

/// Clamps negative entries to zero, then scales each column to sum 1.
/// A column with no positive mass is a ZeroColumn error.
StochasticMatrix normalize_columns(const Eigen::MatrixXd& raw);

}  // namespace semcomm
