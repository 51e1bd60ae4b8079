#pragma once

#include <Eigen/Dense>
#include <vector>

#include "semcomm/errors.hpp"

namespace semcomm {

/// A validated point on the probability simplex. Entries are clamped to zero
/// when they are only negative by round-off (within 1e-12); anything more
/// negative, or a sum off 1 by more than 1e-9, is rejected.
class ProbabilityVector {
public:
    explicit ProbabilityVector(Eigen::VectorXd entries);
    explicit ProbabilityVector(const std::vector<double>& entries);

    static ProbabilityVector uniform(int n);
    static ProbabilityVector point_mass(int n, int index);

    int size() const { return static_cast<int>(entries_.size()); }
    double operator[](int i) const { return entries_[i]; }
    const Eigen::VectorXd& entries() const { return entries_; }

    bool operator==(const ProbabilityVector& other) const { return entries_ == other.entries_; }

private:
    Eigen::VectorXd entries_;
};

}  // namespace semcomm
