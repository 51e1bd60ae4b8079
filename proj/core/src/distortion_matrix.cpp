#include "semcomm/distortion_matrix.hpp"

#include <cmath>
#include <string>

namespace semcomm {

DistortionMatrix::DistortionMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "distortion matrix must be square and non-empty, got " +
                        std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
    }
    d_max_ = 0.0;
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            double x = entries_(i, j);
            if (!std::isfinite(x)) {
                throw Error(ErrorCode::BadParams, "non-finite distortion entry");
            }
            if (x < 0.0) {
                throw Error(ErrorCode::NegativeEntry,
                            "distortion (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                                std::to_string(x));
            }
            d_max_ = std::max(d_max_, x);
        }
    }
}

DistortionMatrix DistortionMatrix::zero_one(int n) {
    if (n < 1) throw Error(ErrorCode::BadParams, "zero_one needs n >= 1");
    Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n, n);
    d.diagonal().setZero();
    return DistortionMatrix(std::move(d));
}

}  // namespace semcomm
