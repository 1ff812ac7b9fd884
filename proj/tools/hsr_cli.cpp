// Command-line front end: experiment sweeps, bound calculators, and Monte
// Carlo validation of the concentration inequalities and the generalization
// guarantee. Data goes to files/stdout; progress goes to stderr.
//
// Exit codes: 0 success, 1 validation failure, 2 usage/config error,
// 3 I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsr/hsr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void print_progress(std::size_t done, std::size_t total) {
    const std::size_t step = std::max<std::size_t>(1, total / 10);
    if (done % step == 0 || done == total)
        std::fprintf(stderr, "completed %zu/%zu trials\n", done, total);
}

void write_file_or_throw(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw std::ios_base::failure("failed writing '" + path.string() + "'");
}

std::vector<hsr::ChartSeries> summary_series(const hsr::SweepResult& result, bool scale_chart) {
    const auto color_of = [](hsr::Method m) {
        switch (m) {
            case hsr::Method::Erm: return "#d62728";  // red
            case hsr::Method::Vbr: return "#2ca02c";  // green
            case hsr::Method::Hsr: return "#1f77b4";  // blue
        }
        return "#000000";
    };
    std::vector<hsr::ChartSeries> series;
    for (hsr::Method m : hsr::kAllMethods) {
        hsr::ChartSeries s;
        s.label = hsr::method_name(m);
        s.color = color_of(m);
        for (const auto& row : result.summary)
            if (row.method == m) s.points.emplace_back(static_cast<double>(row.n),
                                                       scale_chart ? row.mean_scale : row.mean_gen_error);
        if (!s.points.empty()) series.push_back(std::move(s));
    }
    return series;
}

struct ExperimentArgs {
    std::string config_path;
    hsr::ExperimentConfig config;
    unsigned jobs{0};
    bool svg{false};
    // Overrides captured as optionals so the config file keeps unset keys.
    std::optional<std::size_t> trials, K;
    std::optional<std::uint64_t> seed;
    std::optional<double> delta, B;
    std::optional<std::vector<std::size_t>> n_values;
    std::optional<std::vector<std::string>> methods;
    std::optional<std::string> output_dir;
    std::optional<bool> diagnostics, reuse_prefix;
};

int run_experiment(ExperimentArgs& args) {
    hsr::ExperimentConfig config;
    if (const char* env_dir = std::getenv("HSR_OUTPUT_DIR")) config.output_dir = env_dir;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open config file '%s'\n", args.config_path.c_str());
            return kExitUsage;
        }
        try {
            std::string saved_output = config.output_dir;
            hsr::ExperimentConfig fresh;
            fresh.output_dir = saved_output;
            hsr::apply_config_stream(in, fresh);
            config = fresh;
        } catch (const hsr::ConfigError& e) {
            std::fprintf(stderr, "error: %s: %s\n", args.config_path.c_str(), e.what());
            return kExitUsage;
        }
    }
    if (args.trials) config.trials = *args.trials;
    if (args.K) config.K = *args.K;
    if (args.seed) config.master_seed = *args.seed;
    if (args.delta) config.delta = *args.delta;
    if (args.B) config.B = *args.B;
    if (args.n_values) config.n_values = *args.n_values;
    if (args.output_dir) config.output_dir = *args.output_dir;
    if (args.diagnostics) config.diagnostics = *args.diagnostics;
    if (args.reuse_prefix) config.reuse_prefix = *args.reuse_prefix;
    if (args.methods) {
        config.methods.clear();
        for (const auto& name : *args.methods) config.methods.push_back(hsr::detail::parse_method(name, 0, "methods"));
    }

    try {
        config.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    const hsr::SweepResult result = hsr::run_sweep(config, args.jobs, &print_progress);

    try {
        const std::filesystem::path dir(config.output_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);

        std::ostringstream raw;
        hsr::write_raw_csv(raw, result.records);
        write_file_or_throw(dir / "raw.csv", raw.str());

        std::ostringstream summary;
        hsr::write_summary_csv(summary, result.summary);
        write_file_or_throw(dir / "summary.csv", summary.str());

        if (args.svg) {
            std::ostringstream gen_chart;
            const auto gen_series = summary_series(result, false);
            hsr::write_line_chart(gen_chart, "Generalization error", "samples n", "mean generalization error",
                                  gen_series, /*log_y=*/true);
            write_file_or_throw(dir / "gen_error.svg", gen_chart.str());

            std::ostringstream scale_chart;
            const auto scale_series = summary_series(result, true);
            hsr::write_line_chart(scale_chart, "Regularization scale", "samples n", "mean regularization scale",
                                  scale_series, /*log_y=*/false);
            write_file_or_throw(dir / "reg_scale.svg", scale_chart.str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}

struct BoundsArgs {
    std::string mode{"finite"};
    std::size_t n{100};
    double delta{0.5};
    std::size_t K{500};
    std::vector<std::size_t> subset_sizes;
    int dim{2};
    double c_ell{0.0};
    double p1{0.0};
    double p2{0.0};
    std::optional<double> c_lstar;
    double covering_const{1.0};
    std::optional<double> covering_ball_radius;
    std::string csv_path;
};

std::vector<std::size_t> default_subset_sizes(std::size_t K) {
    std::vector<std::size_t> sizes;
    for (std::size_t s : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{10}, std::size_t{20},
                          std::size_t{50}, std::size_t{100}, std::size_t{200}, std::size_t{500},
                          std::size_t{1000}})
        if (s < K) sizes.push_back(s);
    sizes.push_back(K);
    return sizes;
}

int run_bounds(const BoundsArgs& args) {
    try {
        const hsr::Confidence conf(args.delta);
        if (args.mode == "finite") {
            const auto params = hsr::uniform_bound_finite(args.n, args.K, conf);
            const double delta_n = hsr::regularizer_deviation_finite(args.n, args.K, conf);
            std::printf("finite-space bounds: n=%zu K=%zu delta=%g\n", args.n, args.K, args.delta);
            std::printf("  %-8s %.12g\n", "alpha", params.alpha);
            std::printf("  %-8s %.12g\n", "beta", params.beta);
            std::printf("  %-8s %.12g\n", "delta_n", delta_n);
            std::printf("  %10s %16s %16s\n", "|F|", "mu", "nu");
            const auto sizes = args.subset_sizes.empty() ? default_subset_sizes(args.K) : args.subset_sizes;
            std::ostringstream csv;
            csv << "subset_size,mu,nu\n";
            for (std::size_t s : sizes) {
                const auto spatial = hsr::spatial_bound_finite(args.n, s, conf);
                std::printf("  %10zu %16.12g %16.12g\n", s, spatial.mu, spatial.nu);
                csv << s << ',' << hsr::format_double(spatial.mu) << ',' << hsr::format_double(spatial.nu) << '\n';
            }
            if (!args.csv_path.empty()) write_file_or_throw(args.csv_path, csv.str());
        } else if (args.mode == "continuous") {
            hsr::ContinuousSpaceSpec space;
            space.dim = args.dim;
            space.lipschitz_loss = args.c_ell;
            space.grad_bound = args.p1;
            space.hessian_bound = args.p2;
            space.lipschitz_true_risk = args.c_lstar;
            if (args.covering_ball_radius) {
                const double radius = *args.covering_ball_radius;
                const int dim = args.dim;
                space.covering = [radius, dim](double eps) {
                    return static_cast<double>(hsr::covering_upper_bound_ball(dim, radius, eps));
                };
            } else {
                const double constant = args.covering_const;
                space.covering = [constant](double) { return constant; };
            }
            const double eps = hsr::epsilon_n(args.n, args.dim, conf);
            const double subset_covering = space.covering(eps);
            const auto bounds = hsr::continuous_bounds(args.n, conf, space, subset_covering);
            const double delta_n = hsr::delta_n_continuous(args.n, conf, space);
            std::printf("continuous-space bounds: n=%zu delta=%g dim=%d\n", args.n, args.delta, args.dim);
            std::printf("  %-14s %.12g\n", "alpha", bounds.uniform.alpha);
            std::printf("  %-14s %.12g\n", "beta", bounds.uniform.beta);
            std::printf("  %-14s %.12g\n", "delta_n", delta_n);
            std::printf("  %-14s %.12g\n", "epsilon_n", eps);
            std::printf("  %-14s %.12g\n", "covering(1/n)", space.covering(1.0 / static_cast<double>(args.n)));
            std::printf("  %-14s %.12g\n", "covering(eps)", subset_covering);
            std::printf("  %-14s %.12g\n", "mu", bounds.mu);
            if (bounds.nu)
                std::printf("  %-14s %.12g\n", "nu", *bounds.nu);
            else
                std::printf("  %-14s %s\n", "nu", "unavailable (supply --c-lstar)");
            if (!args.csv_path.empty()) {
                std::ostringstream csv;
                csv << "alpha,beta,delta_n,epsilon_n,mu,nu\n"
                    << hsr::format_double(bounds.uniform.alpha) << ',' << hsr::format_double(bounds.uniform.beta)
                    << ',' << hsr::format_double(delta_n) << ',' << hsr::format_double(eps) << ','
                    << hsr::format_double(bounds.mu) << ',';
                if (bounds.nu) csv << hsr::format_double(*bounds.nu);
                csv << '\n';
                write_file_or_throw(args.csv_path, csv.str());
            }
        }
    } catch (const std::ios_base::failure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitOk;
}

struct ValidateArgs {
    std::string suite;
    std::size_t trials{2000};
    double delta{0.5};
    std::size_t n{500};
    std::uint64_t seed{1};
    std::size_t K{500};
    double B{0.25};
};

int run_validate(const ValidateArgs& args) {
    try {
        hsr::ValidationReport report;
        if (args.suite == "variance") {
            report = hsr::validate_variance_concentration(args.trials, args.delta, args.n, args.seed);
        } else if (args.suite == "bennett") {
            report = hsr::validate_bennett(args.trials, args.delta, args.n, args.seed);
        } else if (args.suite == "hoeffding") {
            report = hsr::validate_hoeffding(args.trials, args.delta, args.n, args.seed);
        } else {
            report = hsr::validate_generalization_bound(args.trials, hsr::Confidence(args.delta), args.n, args.K,
                                                        args.B, args.seed);
        }
        std::printf("suite=%s n=%zu delta=%g trials=%zu violations=%zu observed=%.6f allowed=%.6f -> %s\n",
                    report.suite.c_str(), args.n, args.delta, report.trials, report.violations,
                    report.observed_rate, report.allowed_rate, report.pass ? "PASS" : "FAIL");
        return report.pass ? kExitOk : kExitValidationFailed;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variance-regularized risk minimization with empirical hypothesis space reduction"};
    app.require_subcommand(1);

    ExperimentArgs exp_args;
    auto* exp = app.add_subcommand("experiment", "Run the Monte Carlo sweep and write raw/summary CSVs");
    exp->add_option("--config", exp_args.config_path, "Config file (key = value lines)");
    exp->add_option("--trials", exp_args.trials, "Trials per sweep");
    exp->add_option("--seed", exp_args.seed, "Master seed");
    exp->add_option("--n", exp_args.n_values, "Sample sizes (comma separated)")->delimiter(',');
    exp->add_option("--delta", exp_args.delta, "Confidence parameter in (0,1)");
    exp->add_option("--K", exp_args.K, "Number of hypotheses");
    exp->add_option("--B", exp_args.B, "Problem bound in (0, 1/2]");
    exp->add_option("--methods", exp_args.methods, "Subset of erm,vbr,hsr")->delimiter(',');
    exp->add_option("--output-dir", exp_args.output_dir, "Output directory (default: $HSR_OUTPUT_DIR or .)");
    exp->add_option("--jobs", exp_args.jobs, "Worker threads (0 = hardware concurrency)");
    exp->add_flag("--diagnostics,!--no-diagnostics",
                  [&exp_args](std::int64_t count) { exp_args.diagnostics = count > 0; },
                  "Attach generalization-bound diagnostics to HSR records");
    exp->add_flag("--reuse-prefix,!--no-reuse-prefix",
                  [&exp_args](std::int64_t count) { exp_args.reuse_prefix = count > 0; },
                  "Nest samples across n within a trial instead of drawing fresh ones");
    exp->add_flag("--svg", exp_args.svg, "Also emit gen_error.svg and reg_scale.svg");

    BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "Print bound coefficients for a given n and delta");
    bounds->add_option("--mode", bounds_args.mode, "finite or continuous")
        ->check(CLI::IsMember({"finite", "continuous"}));
    bounds->add_option("--n", bounds_args.n, "Sample size")->required();
    bounds->add_option("--delta", bounds_args.delta, "Confidence parameter in (0,1)");
    bounds->add_option("--K", bounds_args.K, "Number of hypotheses (finite mode)");
    bounds->add_option("--subset-size", bounds_args.subset_sizes, "Subset sizes for the mu table")->delimiter(',');
    bounds->add_option("--dim", bounds_args.dim, "Hypothesis space dimension (continuous mode)");
    bounds->add_option("--c-ell", bounds_args.c_ell, "Loss Lipschitz constant");
    bounds->add_option("--p1", bounds_args.p1, "Per-coordinate gradient bound");
    bounds->add_option("--p2", bounds_args.p2, "Hessian operator-norm bound");
    bounds->add_option("--c-lstar", bounds_args.c_lstar, "Local Lipschitz constant of the true risk (enables nu)");
    bounds->add_option("--covering-const", bounds_args.covering_const, "Constant covering-number oracle");
    bounds->add_option("--covering-ball", bounds_args.covering_ball_radius,
                       "Use the Euclidean-ball covering upper bound with this radius");
    bounds->add_option("--csv", bounds_args.csv_path, "Also write the table as CSV to this path");

    ValidateArgs val_args;
    auto* validate = app.add_subcommand("validate", "Monte Carlo validation of a probabilistic bound");
    validate->add_option("--suite", val_args.suite, "variance, bennett, hoeffding, or thm2")
        ->required()
        ->check(CLI::IsMember({"variance", "bennett", "hoeffding", "thm2"}));
    validate->add_option("--trials", val_args.trials, "Monte Carlo trials (>= 100)");
    validate->add_option("--delta", val_args.delta, "Confidence parameter in (0,1)");
    validate->add_option("--n", val_args.n, "Sample size per trial");
    validate->add_option("--seed", val_args.seed, "Master seed");
    validate->add_option("--K", val_args.K, "Hypothesis count (thm2)");
    validate->add_option("--B", val_args.B, "Problem bound (thm2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (exp->parsed()) return run_experiment(exp_args);
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (validate->parsed()) return run_validate(val_args);
    return kExitUsage;
}
