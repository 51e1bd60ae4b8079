// semcomm: learnability checks and sequential-observation simulations for
// fixed semantic communication systems.
//
// Exit codes: 0 success, 1 bad input or config, 2 system not learnable.
// Results go to stdout as JSON/CSV; diagnostics go to stderr.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semcomm/semcomm.hpp"

namespace {

using json = nlohmann::ordered_json;

std::uint64_t parse_seed_env() {
    const char* env = std::getenv("SEMCOMM_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    errno = 0;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0') {
        throw semcomm::Error(semcomm::ErrorCode::BadParams,
                             std::string("SEMCOMM_SEED is not an unsigned integer: ") + env);
    }
    return value;
}

struct SimulateArgs {
    std::string scheme;
    std::string system_file;
    int n = 30;
    std::string prior = "zipf";
    std::optional<double> prior_param;
    bool no_shuffle = false;
    std::int64_t t_max = 10000;
    int grid = 20;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string out;
    int parallel = 1;
    // distortion subcommand only:
    std::string distortion_file;
    bool oracle_prior = false;
    bool projected_belief = false;
};

void add_common_options(CLI::App* cmd, SimulateArgs& args) {
    auto* scheme = cmd->add_option("--scheme", args.scheme, "Built-in encoder: well, moderate, ill")
                       ->check(CLI::IsMember({"well", "moderate", "ill"}));
    auto* system = cmd->add_option("--system", args.system_file,
                                   "System JSON file ({\"U\": matrix, \"C\": matrix|\"identity\"})");
    scheme->excludes(system);
    system->excludes(scheme);
    cmd->add_option("--n", args.n, "Number of meanings for built-in schemes")->capture_default_str();
    cmd->add_option("--prior", args.prior, "Prior: zipf, dirichlet, or a vector file path")
        ->capture_default_str();
    cmd->add_option("--prior-param", args.prior_param,
                    "Zipf exponent or Dirichlet concentration");
    cmd->add_flag("--no-shuffle", args.no_shuffle, "Keep the Zipf prior in rank order");
    cmd->add_option("--t-max", args.t_max, "Largest observation count")->capture_default_str();
    cmd->add_option("--grid", args.grid, "Number of log-spaced snapshot points")
        ->capture_default_str();
    cmd->add_option("--trials", args.trials, "Independent trials to average")
        ->capture_default_str();
    cmd->add_option("--seed", args.seed, "Master seed (default: $SEMCOMM_SEED or 0)");
    cmd->add_option("--out", args.out, "Curve CSV output path (.meta.json written alongside)")
        ->required();
    cmd->add_option("--parallel", args.parallel, "Worker threads over trials")
        ->capture_default_str();
}

semcomm::ExperimentConfig build_config(const SimulateArgs& args) {
    semcomm::ExperimentConfig config;
    config.n_meanings = args.n;
    config.trials = args.trials;
    config.master_seed = args.seed;
    config.parallelism = args.parallel;
    config.t_grid = semcomm::default_t_grid(args.t_max, args.grid);

    if (!args.system_file.empty()) {
        auto [encoder, channel] = semcomm::system_from_json(semcomm::read_file(args.system_file));
        config.scheme = semcomm::Scheme::File;
        config.encoder = std::move(encoder);
        config.channel = std::move(channel);
    } else if (args.scheme == "moderate") {
        config.scheme = semcomm::Scheme::Moderate;
    } else if (args.scheme == "ill") {
        config.scheme = semcomm::Scheme::Ill;
    } else {
        config.scheme = semcomm::Scheme::Well;  // default
    }

    if (args.prior == "zipf") {
        config.prior_source = semcomm::PriorSource::Zipf;
        if (args.prior_param) config.prior_params.zipf_exponent = *args.prior_param;
        config.prior_params.shuffle = !args.no_shuffle;
    } else if (args.prior == "dirichlet") {
        config.prior_source = semcomm::PriorSource::Dirichlet;
        if (args.prior_param) config.prior_params.dirichlet_alpha = *args.prior_param;
    } else {
        config.prior_source = semcomm::PriorSource::File;
        config.prior_params.file = args.prior;
        if (args.prior_param) {
            throw semcomm::Error(semcomm::ErrorCode::InvalidConfig,
                                 "--prior-param applies to zipf or dirichlet priors only");
        }
    }
    return config;
}

json summary_json(const semcomm::ExperimentResult& result, const std::string& csv_path) {
    json j;
    j["sigma_min"] = result.sigma_min;
    j["kappa"] = result.condition_number;
    j["rank"] = result.numerical_rank;
    j["final_accuracy"] = result.final_accuracy;
    try {
        j["error_slope"] = fit_loglog_slope(result.curve, semcomm::CurveField::Error);
    } catch (const semcomm::Error&) {
        j["error_slope"] = nullptr;
    }
    try {
        j["gap_slope"] = fit_loglog_slope(result.curve, semcomm::CurveField::Gap);
    } catch (const semcomm::Error&) {
        j["gap_slope"] = nullptr;
    }
    j["csv"] = csv_path;
    return j;
}

int run_curve_command(const SimulateArgs& args) {
    semcomm::ExperimentConfig config = build_config(args);

    if (!args.distortion_file.empty()) {
        Eigen::MatrixXd d;
        try {
            d = semcomm::matrix_from_text(semcomm::read_file(args.distortion_file));
        } catch (const semcomm::Error& e) {
            throw semcomm::Error(semcomm::ErrorCode::BadFile,
                                 "distortion file " + args.distortion_file + ": " + e.what());
        }
        config.distortion = semcomm::DistortionMatrix(std::move(d));
    }
    if (args.oracle_prior && args.projected_belief) {
        throw semcomm::Error(semcomm::ErrorCode::InvalidConfig,
                             "--oracle-prior and --projected-belief are mutually exclusive");
    }
    if (args.oracle_prior) config.belief = semcomm::BeliefMode::Oracle;
    if (args.projected_belief) config.belief = semcomm::BeliefMode::Projected;

    semcomm::ExperimentResult result = semcomm::run_experiment(config);
    semcomm::write_file(args.out, semcomm::curve_to_csv(result.curve));
    semcomm::write_file(args.out + ".meta.json", semcomm::metadata_json(result) + "\n");
    std::cout << summary_json(result, args.out).dump() << "\n";
    return 0;
}

int run_check(const std::string& system_path) {
    auto [encoder, channel] = semcomm::system_from_json(semcomm::read_file(system_path));
    semcomm::DeterministicEncodingReport det =
        semcomm::analyze_deterministic_encoding(encoder, channel);
    semcomm::SemanticSystem system(std::move(encoder), std::move(channel));
    semcomm::LearnabilityReport report = semcomm::check_learnability(system);
    std::cout << semcomm::to_json(report) << "\n";
    if (det.is_deterministic) {
        std::cerr << "note: encoder is deterministic ("
                  << (det.injective ? "injective" : "non-injective")
                  << "), learnable given channel: "
                  << (det.learnable_given_channel ? "yes" : "no") << "\n";
    }
    return report.learnable ? 0 : 2;
}

int run_slope(const std::string& in_path, const std::string& field) {
    semcomm::ConvergenceCurve curve = semcomm::curve_from_csv(semcomm::read_file(in_path));
    double slope = fit_loglog_slope(curve, field == "gap" ? semcomm::CurveField::Gap
                                                          : semcomm::CurveField::Error);
    std::printf("%.4f\n", slope);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prior estimation and semantic decoding over fixed noisy channels"};
    app.require_subcommand(1);

    std::string check_system;
    CLI::App* check = app.add_subcommand("check", "Learnability report for a system file");
    check->add_option("system", check_system, "System JSON file")->required();

    SimulateArgs sim_args;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Estimation-error convergence experiment");
    add_common_options(simulate, sim_args);

    SimulateArgs dist_args;
    CLI::App* distortion =
        app.add_subcommand("distortion", "Distortion-gap convergence experiment");
    add_common_options(distortion, dist_args);
    distortion->add_option("--distortion", dist_args.distortion_file,
                           "Distortion matrix file (default: 0-1 loss)");
    distortion->add_flag("--oracle-prior", dist_args.oracle_prior,
                         "Decode with the true prior instead of the estimate");
    distortion->add_flag("--projected-belief", dist_args.projected_belief,
                         "Decode with the simplex-projected estimate");

    std::string slope_in, slope_field = "error";
    CLI::App* slope = app.add_subcommand("slope", "OLS log-log slope of a saved curve");
    slope->add_option("--in", slope_in, "Curve CSV path")->required();
    slope->add_option("--field", slope_field, "error or gap")
        ->check(CLI::IsMember({"error", "gap"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        std::uint64_t env_seed = parse_seed_env();
        if (simulate->parsed() && !simulate->count("--seed")) sim_args.seed = env_seed;
        if (distortion->parsed() && !distortion->count("--seed")) dist_args.seed = env_seed;

        if (check->parsed()) return run_check(check_system);
        if (simulate->parsed()) return run_curve_command(sim_args);
        if (distortion->parsed()) return run_curve_command(dist_args);
        if (slope->parsed()) return run_slope(slope_in, slope_field);
    } catch (const semcomm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == semcomm::ErrorCode::NotLearnable ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
