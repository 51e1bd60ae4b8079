#pragma once

#include <Eigen/Dense>

#include "semcomm/errors.hpp"

namespace semcomm {

/// Square nonnegative loss table: entry (w, w_hat) is the cost of decoding
/// meaning w as w_hat.
class DistortionMatrix {
public:
    explicit DistortionMatrix(Eigen::MatrixXd entries);

    /// 0 on the diagonal, 1 elsewhere.
    static DistortionMatrix zero_one(int n);

    int size() const { return static_cast<int>(entries_.rows()); }
    double operator()(int w, int w_hat) const { return entries_(w, w_hat); }
    double max_entry() const { return d_max_; }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
    double d_max_;
};

}  // namespace semcomm
