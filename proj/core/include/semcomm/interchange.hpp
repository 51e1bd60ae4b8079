#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "semcomm/errors.hpp"
#include "semcomm/stochastic_matrix.hpp"

namespace semcomm {

// Matrix JSON: {"rows": R, "cols": K, "data": [[..], ..]} with row-major data.
std::string matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const std::string& text);

// Matrix CSV: one row per line, comma separated.
std::string matrix_to_csv(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_csv(const std::string& text);

// Vector JSON: flat array. Vector CSV: one value per line.
std::string vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const std::string& text);
std::string vector_to_csv(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_csv(const std::string& text);

// Sniff JSON vs CSV by the first non-space character.
Eigen::MatrixXd matrix_from_text(const std::string& text);
Eigen::VectorXd vector_from_text(const std::string& text);

/// System file: {"U": <matrix>, "C": <matrix> | "identity"}. A missing "C"
/// also means the perfect channel.
std::pair<StochasticMatrix, StochasticMatrix> system_from_json(const std::string& text);
std::string system_to_json(const StochasticMatrix& encoder, const StochasticMatrix& channel);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal form (std::to_chars); used everywhere a float
/// is serialized so re-runs are byte-identical.
std::string format_double(double value);

}  // namespace semcomm
