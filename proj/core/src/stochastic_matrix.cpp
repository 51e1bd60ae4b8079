#include "semcomm/stochastic_matrix.hpp"

#include <cmath>
#include <string>

namespace semcomm {

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.cols() == 0) {
        throw Error(ErrorCode::BadParams, "stochastic matrix must be non-empty");
    }
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            double x = entries_(i, j);
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::BadParams, "non-finite entry in column " + std::to_string(j));
            }
            if (x < 0.0) {
                if (x < -kNegativeClamp) {
                    throw Error(ErrorCode::NegativeEntry,
                                "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                    std::to_string(x));
                }
                entries_(i, j) = 0.0;
                x = 0.0;
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            throw Error(ErrorCode::ColumnNotNormalized,
                        "column " + std::to_string(j) + " sums to " + std::to_string(sum));
        }
    }
}

StochasticMatrix StochasticMatrix::identity(int n) {
    if (n < 1) throw Error(ErrorCode::BadParams, "identity needs n >= 1");
    return StochasticMatrix(Eigen::MatrixXd::Identity(n, n));
}

StochasticMatrix normalize_columns(const Eigen::MatrixXd& raw) {
    if (raw.rows() == 0 || raw.cols() == 0) {
        throw Error(ErrorCode::BadParams, "cannot normalize an empty matrix");
    }
    Eigen::MatrixXd clipped = raw.cwiseMax(0.0);
    Eigen::MatrixXd out(raw.rows(), raw.cols());
    for (Eigen::Index j = 0; j < clipped.cols(); ++j) {
        double sum = clipped.col(j).sum();
        if (!(sum > 0.0) || !std::isfinite(sum)) {
            throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j) + " has no positive mass");
        }
        out.col(j) = clipped.col(j) / sum;
    }
    return StochasticMatrix(std::move(out));
}

}  // namespace semcomm
