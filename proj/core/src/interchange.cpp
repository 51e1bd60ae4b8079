#include "semcomm/interchange.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

namespace semcomm {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view token, const char* context) {
    // Trim surrounding whitespace; from_chars takes none.
    size_t b = token.find_first_not_of(" \t\r");
    size_t e = token.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) {
        throw Error(ErrorCode::BadFile, std::string("empty value in ") + context);
    }
    token = token.substr(b, e - b + 1);
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw Error(ErrorCode::BadFile,
                    "bad number '" + std::string(token) + "' in " + context);
    }
    return value;
}

json parse_json(const std::string& text, const char* context) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorCode::BadFile, std::string("malformed JSON in ") + context);
    }
    return j;
}

Eigen::MatrixXd matrix_from_json_value(const json& j, const char* context) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw Error(ErrorCode::BadFile,
                    std::string(context) + " needs {\"rows\", \"cols\", \"data\"}");
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw Error(ErrorCode::BadFile, std::string("rows/cols must be integers in ") + context);
    }
    auto rows = j["rows"].get<std::int64_t>();
    auto cols = j["cols"].get<std::int64_t>();
    if (rows < 1 || cols < 1) {
        throw Error(ErrorCode::BadFile, std::string("rows/cols must be >= 1 in ") + context);
    }
    const json& data = j["data"];
    if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows) {
        throw Error(ErrorCode::BadFile,
                    std::string("data must be an array of ") + std::to_string(rows) + " rows in " +
                        context);
    }
    Eigen::MatrixXd m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i) {
        const json& row = data[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols) {
            throw Error(ErrorCode::BadFile,
                        "row " + std::to_string(i) + " must have " + std::to_string(cols) +
                            " values in " + context);
        }
        for (std::int64_t k = 0; k < cols; ++k) {
            const json& cell = row[static_cast<size_t>(k)];
            if (!cell.is_number()) {
                throw Error(ErrorCode::BadFile,
                            "non-numeric cell (" + std::to_string(i) + "," + std::to_string(k) +
                                ") in " + context);
            }
            m(i, k) = cell.get<double>();
        }
    }
    return m;
}

}  // namespace

std::string matrix_to_json(const Eigen::MatrixXd& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    return j.dump();
}

Eigen::MatrixXd matrix_from_json(const std::string& text) {
    return matrix_from_json_value(parse_json(text, "matrix"), "matrix");
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (k) out += ',';
            out += format_double(m(i, k));
        }
        out += '\n';
    }
    return out;
}

Eigen::MatrixXd matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            std::string_view token(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
            row.push_back(parse_double(token, "CSV matrix"));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::BadFile, "ragged CSV: row " + std::to_string(rows.size()) +
                                                " has " + std::to_string(row.size()) + " values");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::BadFile, "CSV matrix has no rows");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t k = 0; k < rows[i].size(); ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
        }
    }
    return m;
}

std::string vector_to_json(const Eigen::VectorXd& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j.dump();
}

Eigen::VectorXd vector_from_json(const std::string& text) {
    json j = parse_json(text, "vector");
    if (!j.is_array() || j.empty()) {
        throw Error(ErrorCode::BadFile, "vector JSON must be a non-empty array");
    }
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw Error(ErrorCode::BadFile, "non-numeric vector entry " + std::to_string(i));
        }
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

std::string vector_to_csv(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out += format_double(v[i]);
        out += '\n';
    }
    return out;
}

Eigen::VectorXd vector_from_csv(const std::string& text) {
    Eigen::MatrixXd m = matrix_from_csv(text);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw Error(ErrorCode::BadFile, "vector CSV must be a single column or single row");
}

namespace {

bool looks_like_json(const std::string& text) {
    size_t i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && (text[i] == '{' || text[i] == '[');
}

}  // namespace

Eigen::MatrixXd matrix_from_text(const std::string& text) {
    return looks_like_json(text) ? matrix_from_json(text) : matrix_from_csv(text);
}

Eigen::VectorXd vector_from_text(const std::string& text) {
    return looks_like_json(text) ? vector_from_json(text) : vector_from_csv(text);
}

std::pair<StochasticMatrix, StochasticMatrix> system_from_json(const std::string& text) {
    json j = parse_json(text, "system file");
    if (!j.is_object() || !j.contains("U")) {
        throw Error(ErrorCode::BadFile, "system file needs an encoder under \"U\"");
    }
    Eigen::MatrixXd u_raw = matrix_from_json_value(j["U"], "encoder U");
    StochasticMatrix encoder{std::move(u_raw)};

    if (!j.contains("C") || (j["C"].is_string() && j["C"].get<std::string>() == "identity")) {
        StochasticMatrix channel = StochasticMatrix::identity(encoder.rows());
        return {std::move(encoder), std::move(channel)};
    }
    if (j["C"].is_string()) {
        throw Error(ErrorCode::BadFile,
                    "channel must be a matrix or \"identity\", got \"" +
                        j["C"].get<std::string>() + "\"");
    }
    Eigen::MatrixXd c_raw = matrix_from_json_value(j["C"], "channel C");
    return {std::move(encoder), StochasticMatrix{std::move(c_raw)}};
}

std::string system_to_json(const StochasticMatrix& encoder, const StochasticMatrix& channel) {
    json j;
    j["U"] = json::parse(matrix_to_json(encoder.matrix()));
    j["C"] = json::parse(matrix_to_json(channel.matrix()));
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::BadFile, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::BadFile, "cannot read " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::BadFile, "cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error(ErrorCode::BadFile, "cannot write " + path);
}

}  // namespace semcomm
