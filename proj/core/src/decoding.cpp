#include "semcomm/decoding.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace semcomm {

using json = nlohmann::ordered_json;

std::string to_json(const DecoderTable& table) {
    json j;
    j["map"] = table.map;
    json belief = json::array();
    for (Eigen::Index i = 0; i < table.belief.size(); ++i) belief.push_back(table.belief[i]);
    j["belief"] = std::move(belief);
    return j.dump();
}

namespace {

void check_shapes(const Eigen::VectorXd& belief, const SemanticSystem& system,
                  const DistortionMatrix& distortion) {
    if (belief.size() != system.n_meanings()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "belief has " + std::to_string(belief.size()) + " entries, system has " +
                        std::to_string(system.n_meanings()) + " meanings");
    }
    if (distortion.size() != system.n_meanings()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "distortion is over " + std::to_string(distortion.size()) +
                        " meanings, system has " + std::to_string(system.n_meanings()));
    }
}

}  // namespace

double psi(const Eigen::VectorXd& belief, const SemanticSystem& system,
           const DistortionMatrix& distortion, int w_hat, int s_hat) {
    check_shapes(belief, system, distortion);
    if (w_hat < 0 || w_hat >= system.n_meanings()) {
        throw Error(ErrorCode::IndexOutOfRange, "w_hat " + std::to_string(w_hat));
    }
    if (s_hat < 0 || s_hat >= system.n_messages()) {
        throw Error(ErrorCode::IndexOutOfRange, "s_hat " + std::to_string(s_hat));
    }
    const Eigen::MatrixXd& a = system.effective();
    double score = 0.0;
    for (int w = 0; w < system.n_meanings(); ++w) {
        score += belief[w] * a(s_hat, w) * distortion(w, w_hat);
    }
    return score;
}

DecoderTable optimal_decoder(const Eigen::VectorXd& belief, const SemanticSystem& system,
                             const DistortionMatrix& distortion) {
    check_shapes(belief, system, distortion);
    const int m = system.n_messages();
    const int n = system.n_meanings();
    // psi(w_hat, s_hat) for all pairs in one product: (A .* belief^T) D.
    Eigen::MatrixXd weighted =
        system.effective().array().rowwise() * belief.transpose().array();
    Eigen::MatrixXd scores = weighted * distortion.entries();  // M x N

    DecoderTable table;
    table.map.resize(m);
    table.belief = belief;
    for (int s = 0; s < m; ++s) {
        int best = 0;
        double best_score = scores(s, 0);
        for (int w = 1; w < n; ++w) {
            if (scores(s, w) < best_score) {  // strict: ties keep the lowest index
                best_score = scores(s, w);
                best = w;
            }
        }
        table.map[s] = best;
    }
    return table;
}

double semantic_distortion(const ProbabilityVector& true_prior, const SemanticSystem& system,
                           const DistortionMatrix& distortion, const DecoderTable& table) {
    check_shapes(true_prior.entries(), system, distortion);
    if (static_cast<int>(table.map.size()) != system.n_messages()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "decoder table covers " + std::to_string(table.map.size()) +
                        " messages, system has " + std::to_string(system.n_messages()));
    }
    const Eigen::MatrixXd& a = system.effective();
    double total = 0.0;
    for (int s = 0; s < system.n_messages(); ++s) {
        int w_hat = table.map[s];
        if (w_hat < 0 || w_hat >= system.n_meanings()) {
            throw Error(ErrorCode::IndexOutOfRange, "decoded meaning " + std::to_string(w_hat));
        }
        for (int w = 0; w < system.n_meanings(); ++w) {
            total += true_prior[w] * a(s, w) * distortion(w, w_hat);
        }
    }
    return total;
}

double distortion_gap(const ProbabilityVector& true_prior, const Eigen::VectorXd& believed,
                      const SemanticSystem& system, const DistortionMatrix& distortion) {
    DecoderTable believed_table = optimal_decoder(believed, system, distortion);
    DecoderTable true_table = optimal_decoder(true_prior.entries(), system, distortion);
    double gap = semantic_distortion(true_prior, system, distortion, believed_table) -
                 semantic_distortion(true_prior, system, distortion, true_table);
    if (gap < 0.0 && gap > -1e-12) gap = 0.0;  // round-off from reordered sums
    return gap;
}

double distortion_gap_bound(double d_max, int n_meanings, int n_messages, double sigma_min,
                            std::int64_t t) {
    if (d_max < 0.0) throw Error(ErrorCode::NegativeEntry, "d_max must be >= 0");
    if (n_meanings < 1 || n_messages < 1) {
        throw Error(ErrorCode::BadParams, "need n_meanings >= 1 and n_messages >= 1");
    }
    if (!(sigma_min > 0.0)) {
        throw Error(ErrorCode::SingularSystem, "gap bound needs sigma_min > 0");
    }
    if (t < 1) throw Error(ErrorCode::BadParams, "need t >= 1");
    return d_max * std::sqrt(static_cast<double>(n_meanings) * n_messages) /
           (sigma_min * std::sqrt(static_cast<double>(t)));
}

double classification_accuracy(const ProbabilityVector& true_prior, const SemanticSystem& system,
                               const DecoderTable& table) {
    DistortionMatrix zero_one = DistortionMatrix::zero_one(system.n_meanings());
    return 1.0 - semantic_distortion(true_prior, system, zero_one, table);
}

}  // namespace semcomm
