#include "semcomm/probability_vector.hpp"

#include <cmath>

namespace semcomm {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeEntry: return "NegativeEntry";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ColumnNotNormalized: return "ColumnNotNormalized";
        case ErrorCode::ZeroColumn: return "ZeroColumn";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::EmptyCounter: return "EmptyCounter";
        case ErrorCode::NotLearnable: return "NotLearnable";
        case ErrorCode::SystemLearnable: return "SystemLearnable";
        case ErrorCode::BadBase: return "BadBase";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NonPositiveValue: return "NonPositiveValue";
        case ErrorCode::BadFile: return "BadFile";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

ProbabilityVector::ProbabilityVector(Eigen::VectorXd entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) {
        throw Error(ErrorCode::BadParams, "probability vector must have at least one entry");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
        double x = entries_[i];
        if (!std::isfinite(x)) {
            throw Error(ErrorCode::BadParams, "non-finite entry at index " + std::to_string(i));
        }
        if (x < 0.0) {
            if (x < -kNegativeClamp) {
                throw Error(ErrorCode::NegativeEntry,
                            "entry " + std::to_string(i) + " is " + std::to_string(x));
            }
            entries_[i] = 0.0;
            x = 0.0;
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw Error(ErrorCode::NotNormalized, "entries sum to " + std::to_string(sum));
    }
}

ProbabilityVector::ProbabilityVector(const std::vector<double>& entries)
    : ProbabilityVector(Eigen::Map<const Eigen::VectorXd>(entries.data(),
                                                          static_cast<Eigen::Index>(entries.size()))) {}

ProbabilityVector ProbabilityVector::uniform(int n) {
    if (n < 1) throw Error(ErrorCode::BadParams, "uniform needs n >= 1");
    return ProbabilityVector(Eigen::VectorXd::Constant(n, 1.0 / n));
}

ProbabilityVector ProbabilityVector::point_mass(int n, int index) {
    if (n < 1) throw Error(ErrorCode::BadParams, "point_mass needs n >= 1");
    if (index < 0 || index >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "point mass index " + std::to_string(index));
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[index] = 1.0;
    return ProbabilityVector(std::move(v));
}

}  // namespace semcomm
