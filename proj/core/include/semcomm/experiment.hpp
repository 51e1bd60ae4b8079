#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semcomm/distortion_matrix.hpp"
#include "semcomm/schemes.hpp"
#include "semcomm/stochastic_matrix.hpp"

namespace semcomm {

enum class Scheme { Well, Moderate, Ill, File };

const char* scheme_name(Scheme scheme);

/// Which estimate the receiver decodes with at each snapshot.
enum class BeliefMode { Raw, Projected, Oracle };

const char* belief_mode_name(BeliefMode mode);

struct ExperimentConfig {
    int n_meanings = 30;
    Scheme scheme = Scheme::Well;
    std::optional<StochasticMatrix> encoder;   // scheme == File
    std::optional<StochasticMatrix> channel;   // absent: perfect channel
    PriorSource prior_source = PriorSource::Zipf;
    PriorParams prior_params;
    std::vector<std::int64_t> t_grid;          // strictly ascending, >= 1
    int trials = 100;
    std::uint64_t master_seed = 0;
    std::optional<DistortionMatrix> distortion;  // absent: 0-1 loss
    BeliefMode belief = BeliefMode::Raw;
    int parallelism = 1;
};

/// Snapshot statistics over trials at each grid point. ci_* are 95% normal
/// intervals (+-1.96 sd / sqrt(trials)); zero-width for a single trial.
struct ConvergenceCurve {
    std::vector<std::int64_t> t_values;
    std::vector<double> mean_error, ci_low, ci_high, bound;
    std::vector<double> mean_gap, gap_ci_low, gap_ci_high, gap_bound;
};

struct ExperimentResult {
    ConvergenceCurve curve;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double condition_number = 0.0;
    int numerical_rank = 0;
    double final_accuracy = 0.0;   // trial-averaged, believed decoder at the last T
    double wall_seconds = 0.0;     // the one field that varies between re-runs
    std::string rng_identity;
    ExperimentConfig config;
};

/// Runs `trials` independent sequential-observation trials, snapshotting the
/// estimate, its error, and the distortion gap at every grid point. Identical
/// configs produce bit-identical curves regardless of `parallelism`.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// `points` log-spaced values from 10 to t_max, deduplicated after rounding.
std::vector<std::int64_t> default_t_grid(std::int64_t t_max, int points = 20);

/// OLS slope of log10(value) against log10(t). Needs >= 3 points
/// (InvalidConfig) and positive values (NonPositiveValue).
double fit_loglog_slope(const std::vector<std::int64_t>& t_values,
                        const std::vector<double>& values);

enum class CurveField { Error, Gap };

double fit_loglog_slope(const ConvergenceCurve& curve, CurveField field);

/// Header "t,mean_error,ci_low,ci_high,bound,mean_gap,gap_ci_low,gap_ci_high,
/// gap_bound", one row per grid point, shortest round-trip decimals.
std::string curve_to_csv(const ConvergenceCurve& curve);
ConvergenceCurve curve_from_csv(const std::string& text);

/// Sidecar metadata: config echo, spectral stats, RNG identity and stream
/// layout, fitted slopes, final accuracy, wall time.
std::string metadata_json(const ExperimentResult& result);

}  // namespace semcomm
