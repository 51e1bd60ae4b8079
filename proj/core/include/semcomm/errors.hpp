#pragma once

#include <stdexcept>
#include <string>

namespace semcomm {

enum class ErrorCode {
    NegativeEntry,
    NotNormalized,
    ColumnNotNormalized,
    ZeroColumn,
    DimensionMismatch,
    IndexOutOfRange,
    EmptyCounter,
    NotLearnable,
    SystemLearnable,
    BadBase,
    SingularSystem,
    NonPositiveValue,
    BadFile,
    BadParams,
    InvalidConfig,
};

const char* error_code_name(ErrorCode code);

/// All library failures throw this; code() tells callers which contract broke.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Shared numeric tolerances.
inline constexpr double kSumTolerance = 1e-9;       // probability / column sums
inline constexpr double kNegativeClamp = 1e-12;     // round-off below zero is forgiven
inline constexpr double kRankTolFactor = 1e-12;     // rank cut: sigma_max * max(M,N) * this

}  // namespace semcomm
