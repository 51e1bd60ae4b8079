#include "semcomm/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "semcomm/decoding.hpp"
#include "semcomm/estimation.hpp"
#include "semcomm/interchange.hpp"
#include "semcomm/rng.hpp"
#include "semcomm/sampling.hpp"
#include "semcomm/semantic_system.hpp"

namespace semcomm {

using json = nlohmann::ordered_json;

const char* scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::Well: return "well";
        case Scheme::Moderate: return "moderate";
        case Scheme::Ill: return "ill";
        case Scheme::File: return "file";
    }
    return "unknown";
}

const char* belief_mode_name(BeliefMode mode) {
    switch (mode) {
        case BeliefMode::Raw: return "raw";
        case BeliefMode::Projected: return "projected";
        case BeliefMode::Oracle: return "oracle";
    }
    return "unknown";
}

std::vector<std::int64_t> default_t_grid(std::int64_t t_max, int points) {
    if (t_max < 10) throw Error(ErrorCode::InvalidConfig, "t_max must be >= 10");
    if (points < 1) throw Error(ErrorCode::InvalidConfig, "need at least one grid point");
    std::vector<std::int64_t> grid;
    double lo = std::log10(10.0);
    double hi = std::log10(static_cast<double>(t_max));
    for (int i = 0; i < points; ++i) {
        double x = points == 1 ? hi : lo + (hi - lo) * i / (points - 1);
        auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, x)));
        t = std::max<std::int64_t>(t, 1);
        if (grid.empty() || t > grid.back()) grid.push_back(t);
    }
    // Rounding can land short of t_max; the last point is always exact.
    if (grid.back() != t_max) grid.back() = t_max;
    return grid;
}

namespace {

struct ResolvedExperiment {
    SemanticSystem system;
    ProbabilityVector prior;
    DistortionMatrix distortion;
};

ResolvedExperiment resolve(const ExperimentConfig& config) {
    if (config.trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (config.parallelism < 1) throw Error(ErrorCode::InvalidConfig, "parallelism must be >= 1");
    if (config.t_grid.empty()) throw Error(ErrorCode::InvalidConfig, "t_grid must be non-empty");
    std::int64_t prev = 0;
    for (std::int64_t t : config.t_grid) {
        if (t < 1 || t <= prev) {
            throw Error(ErrorCode::InvalidConfig, "t_grid must be strictly ascending and >= 1");
        }
        prev = t;
    }

    std::optional<StochasticMatrix> encoder;
    if (config.scheme == Scheme::File) {
        if (!config.encoder) {
            throw Error(ErrorCode::InvalidConfig, "scheme 'file' needs an encoder matrix");
        }
        encoder = config.encoder;
    } else {
        if (config.encoder) {
            throw Error(ErrorCode::InvalidConfig,
                        "an explicit encoder only combines with scheme 'file'");
        }
        if (config.n_meanings < 1) throw Error(ErrorCode::InvalidConfig, "n_meanings must be >= 1");
        switch (config.scheme) {
            case Scheme::Well:
                encoder = build_well_conditioned(config.n_meanings,
                                                 derive_seed(config.master_seed, kStreamEncoder));
                break;
            case Scheme::Moderate: encoder = build_moderate(config.n_meanings); break;
            case Scheme::Ill: encoder = build_ill_conditioned(config.n_meanings); break;
            case Scheme::File: break;
        }
    }

    StochasticMatrix channel =
        config.channel ? *config.channel : StochasticMatrix::identity(encoder->rows());
    SemanticSystem system(std::move(*encoder), std::move(channel));
    if (!system.learnable()) {
        throw Error(ErrorCode::NotLearnable,
                    "system rank " + std::to_string(system.spectral().numerical_rank) + " < " +
                        std::to_string(system.n_meanings()) + "; nothing to estimate");
    }

    const int n = system.n_meanings();
    ProbabilityVector prior = make_prior(config.prior_source, n, config.prior_params,
                                         derive_seed(config.master_seed, kStreamPrior));

    DistortionMatrix distortion = config.distortion.value_or(DistortionMatrix::zero_one(n));
    if (distortion.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "distortion is over " + std::to_string(distortion.size()) +
                        " meanings, system has " + std::to_string(n));
    }
    return {std::move(system), std::move(prior), std::move(distortion)};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    auto start = std::chrono::steady_clock::now();
    ResolvedExperiment rx = resolve(config);
    const SemanticSystem& system = rx.system;
    const ProbabilityVector& prior = rx.prior;
    const DistortionMatrix& distortion = rx.distortion;

    const int n_grid = static_cast<int>(config.t_grid.size());
    const int trials = config.trials;

    SystemSampler sampler(system);
    CategoricalDistribution prior_sampler(prior.entries());
    DecoderTable true_table = optimal_decoder(prior.entries(), system, distortion);
    const double true_distortion = semantic_distortion(prior, system, distortion, true_table);

    std::vector<std::vector<double>> errors(trials, std::vector<double>(n_grid));
    std::vector<std::vector<double>> gaps(trials, std::vector<double>(n_grid));
    std::vector<double> accuracies(trials);

    auto run_trial = [&](int trial) {
        RandomStream rng(derive_seed(config.master_seed, kStreamTrialBase + trial));
        ObservationCounter counter(system.n_messages());
        std::int64_t drawn = 0;
        for (int g = 0; g < n_grid; ++g) {
            for (; drawn < config.t_grid[g]; ++drawn) {
                int meaning = prior_sampler.draw(rng);
                counter.record(sampler.sample_observation(meaning, rng));
            }
            PriorEstimate estimate =
                estimate_prior(system, counter.empirical_distribution(), counter.total());
            errors[trial][g] = estimation_error(estimate.raw, prior);

            Eigen::VectorXd believed;
            switch (config.belief) {
                case BeliefMode::Raw: believed = estimate.raw; break;
                case BeliefMode::Projected: believed = estimate.projected.entries(); break;
                case BeliefMode::Oracle: believed = prior.entries(); break;
            }
            DecoderTable believed_table = optimal_decoder(believed, system, distortion);
            double gap = semantic_distortion(prior, system, distortion, believed_table) -
                         true_distortion;
            if (gap < 0.0 && gap > -1e-12) gap = 0.0;
            gaps[trial][g] = gap;
            if (g == n_grid - 1) {
                accuracies[trial] = classification_accuracy(prior, system, believed_table);
            }
        }
    };

    int workers = std::min(config.parallelism, trials);
    if (workers <= 1) {
        for (int trial = 0; trial < trials; ++trial) run_trial(trial);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            try {
                for (int trial; (trial = next.fetch_add(1)) < trials;) run_trial(trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    ExperimentResult result;
    result.curve.t_values = config.t_grid;
    result.curve.mean_error.resize(n_grid);
    result.curve.ci_low.resize(n_grid);
    result.curve.ci_high.resize(n_grid);
    result.curve.bound.resize(n_grid);
    result.curve.mean_gap.resize(n_grid);
    result.curve.gap_ci_low.resize(n_grid);
    result.curve.gap_ci_high.resize(n_grid);
    result.curve.gap_bound.resize(n_grid);

    const SpectralStats& spectral = system.spectral();
    const double d_max = distortion.max_entry();
    // Trials are aggregated in index order, so the curve is independent of the
    // thread schedule.
    for (int g = 0; g < n_grid; ++g) {
        double err_mean = 0.0, gap_mean = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            err_mean += errors[trial][g];
            gap_mean += gaps[trial][g];
        }
        err_mean /= trials;
        gap_mean /= trials;
        double err_var = 0.0, gap_var = 0.0;
        if (trials > 1) {
            for (int trial = 0; trial < trials; ++trial) {
                err_var += (errors[trial][g] - err_mean) * (errors[trial][g] - err_mean);
                gap_var += (gaps[trial][g] - gap_mean) * (gaps[trial][g] - gap_mean);
            }
            err_var /= trials - 1;
            gap_var /= trials - 1;
        }
        double err_half = 1.96 * std::sqrt(err_var / trials);
        double gap_half = 1.96 * std::sqrt(gap_var / trials);
        result.curve.mean_error[g] = err_mean;
        result.curve.ci_low[g] = err_mean - err_half;
        result.curve.ci_high[g] = err_mean + err_half;
        result.curve.bound[g] =
            convergence_bound(system.n_messages(), spectral.sigma_min, config.t_grid[g]);
        result.curve.mean_gap[g] = gap_mean;
        result.curve.gap_ci_low[g] = gap_mean - gap_half;
        result.curve.gap_ci_high[g] = gap_mean + gap_half;
        result.curve.gap_bound[g] =
            distortion_gap_bound(d_max, system.n_meanings(), system.n_messages(),
                                 spectral.sigma_min, config.t_grid[g]);
    }

    double acc = 0.0;
    for (int trial = 0; trial < trials; ++trial) acc += accuracies[trial];
    result.final_accuracy = acc / trials;

    result.sigma_min = spectral.sigma_min;
    result.sigma_max = spectral.sigma_max;
    result.condition_number = spectral.condition_number;
    result.numerical_rank = spectral.numerical_rank;
    result.rng_identity = kRngIdentity;
    result.config = config;
    result.config.n_meanings = system.n_meanings();  // resolved N for file schemes

    auto end = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(end - start).count();
    return result;
}

double fit_loglog_slope(const std::vector<std::int64_t>& t_values,
                        const std::vector<double>& values) {
    if (t_values.size() != values.size()) {
        throw Error(ErrorCode::DimensionMismatch, "t and value lengths differ");
    }
    if (t_values.size() < 3) {
        throw Error(ErrorCode::InvalidConfig, "slope fit needs at least 3 points");
    }
    const size_t k = t_values.size();
    std::vector<double> xs(k), ys(k);
    for (size_t i = 0; i < k; ++i) {
        if (t_values[i] < 1) throw Error(ErrorCode::NonPositiveValue, "t must be >= 1");
        if (!(values[i] > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "log-log fit needs positive values, got " + std::to_string(values[i]));
        }
        xs[i] = std::log10(static_cast<double>(t_values[i]));
        ys[i] = std::log10(values[i]);
    }
    double x_mean = 0.0, y_mean = 0.0;
    for (size_t i = 0; i < k; ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= k;
    y_mean /= k;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
        sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidConfig, "grid points must differ");
    return sxy / sxx;
}

double fit_loglog_slope(const ConvergenceCurve& curve, CurveField field) {
    return fit_loglog_slope(curve.t_values,
                            field == CurveField::Error ? curve.mean_error : curve.mean_gap);
}

namespace {

constexpr const char* kCurveHeader =
    "t,mean_error,ci_low,ci_high,bound,mean_gap,gap_ci_low,gap_ci_high,gap_bound";

}  // namespace

std::string curve_to_csv(const ConvergenceCurve& curve) {
    std::string out = kCurveHeader;
    out += '\n';
    for (size_t i = 0; i < curve.t_values.size(); ++i) {
        out += std::to_string(curve.t_values[i]);
        for (double x : {curve.mean_error[i], curve.ci_low[i], curve.ci_high[i], curve.bound[i],
                         curve.mean_gap[i], curve.gap_ci_low[i], curve.gap_ci_high[i],
                         curve.gap_bound[i]}) {
            out += ',';
            out += format_double(x);
        }
        out += '\n';
    }
    return out;
}

ConvergenceCurve curve_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::BadFile, "empty curve CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCurveHeader) {
        throw Error(ErrorCode::BadFile, "unexpected curve CSV header: " + line);
    }
    Eigen::MatrixXd body;
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    body = matrix_from_csv(rest);
    if (body.cols() != 9) {
        throw Error(ErrorCode::BadFile, "curve CSV needs 9 columns");
    }
    ConvergenceCurve curve;
    for (Eigen::Index i = 0; i < body.rows(); ++i) {
        curve.t_values.push_back(static_cast<std::int64_t>(std::llround(body(i, 0))));
        curve.mean_error.push_back(body(i, 1));
        curve.ci_low.push_back(body(i, 2));
        curve.ci_high.push_back(body(i, 3));
        curve.bound.push_back(body(i, 4));
        curve.mean_gap.push_back(body(i, 5));
        curve.gap_ci_low.push_back(body(i, 6));
        curve.gap_ci_high.push_back(body(i, 7));
        curve.gap_bound.push_back(body(i, 8));
    }
    return curve;
}

std::string metadata_json(const ExperimentResult& result) {
    const ExperimentConfig& config = result.config;
    json j;

    json cfg;
    cfg["scheme"] = scheme_name(config.scheme);
    cfg["n"] = config.n_meanings;
    cfg["channel"] = config.channel ? "file" : "perfect";
    json prior;
    switch (config.prior_source) {
        case PriorSource::Zipf:
            prior["source"] = "zipf";
            prior["exponent"] = config.prior_params.zipf_exponent;
            prior["shuffle"] = config.prior_params.shuffle;
            break;
        case PriorSource::Dirichlet:
            prior["source"] = "dirichlet";
            prior["alpha"] = config.prior_params.dirichlet_alpha;
            break;
        case PriorSource::File:
            prior["source"] = "file";
            prior["path"] = config.prior_params.file;
            break;
    }
    cfg["prior"] = std::move(prior);
    cfg["t_grid"] = config.t_grid;
    cfg["trials"] = config.trials;
    cfg["master_seed"] = config.master_seed;
    cfg["belief"] = belief_mode_name(config.belief);
    cfg["distortion"] = config.distortion ? "custom" : "0-1";
    cfg["parallelism"] = config.parallelism;
    j["config"] = std::move(cfg);

    json system;
    system["m"] = config.encoder ? config.encoder->rows() : config.n_meanings;
    system["n"] = config.n_meanings;
    system["sigma_min"] = result.sigma_min;
    system["sigma_max"] = result.sigma_max;
    system["kappa"] = result.condition_number;
    system["rank"] = result.numerical_rank;
    j["system"] = std::move(system);

    json rng;
    rng["identity"] = result.rng_identity;
    rng["seed_derivation"] = "splitmix64(master + stream * 0x9e3779b97f4a7c15)";
    json streams;
    streams["encoder"] = kStreamEncoder;
    streams["prior"] = kStreamPrior;
    streams["trial_i"] = "16+i";
    rng["streams"] = std::move(streams);
    j["rng"] = std::move(rng);

    json fitted;
    try {
        fitted["error_slope"] = fit_loglog_slope(result.curve, CurveField::Error);
    } catch (const Error&) {
        fitted["error_slope"] = nullptr;
    }
    try {
        fitted["gap_slope"] = fit_loglog_slope(result.curve, CurveField::Gap);
    } catch (const Error&) {
        fitted["gap_slope"] = nullptr;
    }
    j["fitted"] = std::move(fitted);

    j["final_accuracy"] = result.final_accuracy;
    j["wall_seconds"] = result.wall_seconds;
    return j.dump();
}

}  // namespace semcomm
