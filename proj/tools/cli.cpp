#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "supergraph/config.hpp"
#include "supergraph/montecarlo.hpp"
#include "supergraph/report.hpp"
#include "supergraph/sampler.hpp"
#include "supergraph/theory.hpp"

namespace supergraph::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string inline_config;
    std::string regime;
    double c = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string sampler = "direct";
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> kmax;
    // powerlaw
    std::uint64_t super_vertices = 0;
    double alpha = 2.0;
    std::uint64_t max_size = 1;
};

void add_config_flags(CLI::App& cmd, Options& opt) {
    auto* file = cmd.add_option("--config", opt.config_path, "Configuration JSON file {\"sizes\": {...}}");
    auto* inl = cmd.add_option("--inline", opt.inline_config, "Inline configuration, e.g. 1x500,2x250");
    file->excludes(inl);
    inl->excludes(file);
}

// Subcommands share one Options value, so per-command defaults are applied
// after parsing to whichever command ran.
struct Defaults {
    std::string regime;
    std::uint64_t trials = 0;
};

void add_model_flags(CLI::App& cmd, Options& opt, const std::string& default_regime) {
    cmd.add_option("--regime", opt.regime,
                   "raw: p = c; connectivity: p = (ln N + c)/N; sparse: p = c/n (default: " +
                       default_regime + ")")
        ->check(CLI::IsMember({"raw", "connectivity", "sparse"}));
    cmd.add_option("--c", opt.c, "Regime parameter (with --regime raw this is p itself)")
        ->required();
}

void add_output_flags(CLI::App& cmd, Options& opt) {
    cmd.add_option("--out", opt.out_path, "Output file (default: standard output)");
}

void add_experiment_flags(CLI::App& cmd, Options& opt, std::uint64_t default_trials,
                          std::vector<std::string> formats) {
    cmd.add_option("--seed", opt.seed, "Master seed (u64)")->required();
    cmd.add_option("--trials", opt.trials,
                   "Number of independent trials (default: " + std::to_string(default_trials) + ")")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--sampler", opt.sampler, "Sampler: direct or constructive")
        ->check(CLI::IsMember({"direct", "constructive"}))
        ->capture_default_str();
    cmd.add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

SizeConfiguration load_config(const Options& opt) {
    if (!opt.config_path.empty()) return parse_configuration(read_file(opt.config_path));
    if (!opt.inline_config.empty()) return parse_shorthand(opt.inline_config);
    throw UsageError("one of --config or --inline is required");
}

unsigned worker_count() {
    const char* env = std::getenv("SUPERGRAPH_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    unsigned value = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw UsageError("SUPERGRAPH_THREADS must be a positive integer");
    }
    return value;
}

void emit(const Options& opt, const std::string& document, std::ostream& out) {
    if (opt.out_path.empty()) {
        out << document;
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + opt.out_path + "'");
    file << document;
    if (!file) throw std::runtime_error("failed writing '" + opt.out_path + "'");
}

std::string predict_document(const SizeConfiguration& config, const ModelParams& params,
                             std::optional<std::uint64_t> kmax) {
    const auto profile = empirical_profile(config);
    const double c_connect = connectivity_parameter(config, params.p);
    const double c_sparse = sparse_parameter(config, params.p);
    const auto giant = solve_giant_fraction(profile, c_sparse);

    nlohmann::ordered_json doc;
    doc["p"] = params.p;
    doc["E_isolated"] = expected_isolated(config, params.p);
    doc["Var_isolated"] = variance_isolated(config, params.p);
    doc["P_connected_limit"] =
        limit_connectivity_probability({ConnectivityLimit::fixed_c, c_connect}, profile.u);
    doc["c_star"] = critical_threshold(profile);
    doc["rho"] = giant.rho;
    doc["rho_by_size"] = nlohmann::ordered_json::object();
    for (const auto& [size, rho_i] : giant.rho_by_size) doc["rho_by_size"][std::to_string(size)] = rho_i;
    const std::uint64_t count = kmax ? *kmax + 1 : degree_truncation(profile, c_sparse);
    doc["degree_pmf"] = mixed_poisson_pmf_table(profile, c_sparse, count);
    return doc.dump(2) + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Super-vertex random graphs G(N, K, p): sampling, predictions and Monte Carlo checks",
                 "supergraph"};
    app.require_subcommand(1);
    Options opt;

    auto* generate = app.add_subcommand(
        "generate", "Sample one super-graph and print its edge list (# header, then \"u v\" lines)");
    add_config_flags(*generate, opt);
    add_model_flags(*generate, opt, "sparse");
    generate->add_option("--seed", opt.seed, "Seed (u64)")->required();
    generate->add_option("--sampler", opt.sampler, "Sampler: direct or constructive")
        ->check(CLI::IsMember({"direct", "constructive"}))
        ->capture_default_str();
    add_output_flags(*generate, opt);

    auto* predict = app.add_subcommand(
        "predict",
        "Closed-form predictions: isolated-count moments, connectivity limit exp(-exp(-c)), "
        "giant-component threshold c* = 1/s2 and fraction rho, mixed Poisson degree law");
    add_config_flags(*predict, opt);
    add_model_flags(*predict, opt, "sparse");
    predict->add_option("--kmax", opt.kmax, "Last degree in degree_pmf (default: tail < 1e-9)");
    add_output_flags(*predict, opt);

    auto* connectivity = app.add_subcommand(
        "connectivity",
        "Connectivity threshold theorem, p = (ln N + c)/N: estimates P(connected) against "
        "exp(-exp(-c)) (u = 1) or 1 (u > 1), and the Poisson law of isolated super-vertices");
    add_config_flags(*connectivity, opt);
    add_model_flags(*connectivity, opt, "connectivity");
    add_experiment_flags(*connectivity, opt, 1000, {"json", "csv"});
    add_output_flags(*connectivity, opt);

    auto* giant = app.add_subcommand(
        "giant",
        "Giant component phase transition theorem, p = c/n: mean L1/N and L2/N against rho, "
        "with threshold c s2 = 1");
    add_config_flags(*giant, opt);
    add_model_flags(*giant, opt, "sparse");
    add_experiment_flags(*giant, opt, 20, {"json", "csv"});
    add_output_flags(*giant, opt);

    auto* degree = app.add_subcommand(
        "degree",
        "Degree distribution theorem, p = c/n: averaged Z_k/N against the mixed Poisson law "
        "sum_i mu_i Po(i c)");
    add_config_flags(*degree, opt);
    add_model_flags(*degree, opt, "sparse");
    add_experiment_flags(*degree, opt, 10, {"json", "csv", "pmf-csv"});
    add_output_flags(*degree, opt);

    auto* powerlaw = app.add_subcommand(
        "powerlaw",
        "Emit a configuration whose size tail follows k^-alpha (power-law example of the "
        "degree distribution theorem); feed it back with --config");
    powerlaw->add_option("--N", opt.super_vertices, "Number of super-vertices")->required();
    powerlaw->add_option("--alpha", opt.alpha, "Tail exponent (> 1)")->capture_default_str();
    powerlaw->add_option("--max-size", opt.max_size, "Largest super-vertex size")->required();
    add_output_flags(*powerlaw, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::map<const CLI::App*, Defaults> defaults{
        {generate, {"sparse", 1}},      {predict, {"sparse", 1}}, {connectivity, {"connectivity", 1000}},
        {giant, {"sparse", 20}},        {degree, {"sparse", 10}},
    };
    for (const auto& [cmd, d] : defaults) {
        if (!cmd->parsed()) continue;
        if (opt.regime.empty()) opt.regime = d.regime;
        if (opt.trials == 0) opt.trials = d.trials;
    }

    try {
        if (powerlaw->parsed()) {
            emit(opt, serialize_configuration(
                          power_law_configuration(opt.super_vertices, opt.alpha, opt.max_size)),
                 out);
            return 0;
        }

        const auto config = load_config(opt);
        const auto regime = parse_regime(opt.regime);
        const auto workers = worker_count();

        if (generate->parsed()) {
            const auto params = resolve_p(regime, opt.c, config);
            const auto graph = sample(config, params, Seed{opt.seed}, parse_sampler(opt.sampler));
            emit(opt, format_edge_list(config, graph), out);
            return 0;
        }
        if (predict->parsed()) {
            emit(opt, predict_document(config, resolve_p(regime, opt.c, config), opt.kmax), out);
            return 0;
        }

        ExperimentPlan plan{config, regime, opt.c, opt.trials, Seed{opt.seed},
                            Experiment::connectivity, parse_sampler(opt.sampler), workers};
        if (giant->parsed()) plan.experiment = Experiment::giant;
        if (degree->parsed()) plan.experiment = Experiment::degree;
        const auto format = parse_report_format(opt.format);
        emit(opt, render_report(run_experiment(plan), format), out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace supergraph::cli
