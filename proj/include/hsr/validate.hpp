#pragma once
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "hsr/algorithm.hpp"
#include "hsr/bounds.hpp"
#include "hsr/core_model.hpp"
#include "hsr/experiment.hpp"
#include "hsr/rng.hpp"
#include "hsr/variance_reg.hpp"

namespace hsr {

// Outcome of one Monte Carlo validation of a probabilistic bound: the bound
// claims a violation probability of at most delta, so over T trials the
// observed violation rate may not exceed delta plus a 3-sigma binomial margin.
struct ValidationReport {
    std::string suite;
    std::size_t trials{0};
    std::size_t violations{0};
    double observed_rate{0.0};
    double allowed_rate{0.0};
    bool pass{false};
};

namespace detail {

inline double binomial_margin(double delta, std::size_t trials) {
    return 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

inline ValidationReport finish_report(std::string suite, std::size_t trials, std::size_t violations, double delta) {
    ValidationReport report;
    report.suite = std::move(suite);
    report.trials = trials;
    report.violations = violations;
    report.observed_rate = static_cast<double>(violations) / static_cast<double>(trials);
    report.allowed_rate = delta + binomial_margin(delta, trials);
    report.pass = report.observed_rate <= report.allowed_rate;
    return report;
}

// One fresh two-point coordinate per trial: value mean +- spread, each with
// probability 1/2, mean uniform over [1/4, 3/4] and spread over [0, 1/4].
struct TwoPointTrial {
    double mean;
    double spread;
    double sample_mean;
    double sample_sqrt_variance;
};

inline TwoPointTrial draw_two_point_trial(std::size_t n, Rng& stream) {
    const SyntheticProblem problem = generate_problem(1, 0.25, stream);
    const LossTable table = sample_losses(problem, n, stream);
    const auto col = table.column(0);
    return {problem.mean[0], problem.spread[0], empirical_risk(col), std::sqrt(empirical_variance(col))};
}

}  // namespace detail

// Deviation of the empirical regularizer sqrt(V_n) from its ideal value:
// |r* - r_n| <= sqrt(2 log(2/delta) / (n-1)) with probability 1 - delta.
inline ValidationReport validate_variance_concentration(std::size_t trials, double delta, std::size_t n,
                                                        std::uint64_t master_seed) {
    if (trials < 100) throw std::invalid_argument("validate: need at least 100 trials");
    if (n < 2) throw std::invalid_argument("validate: need n >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("validate: delta must lie in (0, 1)");
    const double bound = std::sqrt(2.0 * std::log(2.0 / delta) / (static_cast<double>(n) - 1.0));

    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng stream = make_stream({master_seed, t});
        const auto trial = detail::draw_two_point_trial(n, stream);
        if (std::abs(trial.spread - trial.sample_sqrt_variance) > bound) ++violations;
    }
    return detail::finish_report("variance", trials, violations, delta);
}

// Bennett's inequality on [0,1] variables with known variance:
// |E Z - mean| <= sqrt(2 Var log(2/delta) / n) + log(2/delta)/(3n).
inline ValidationReport validate_bennett(std::size_t trials, double delta, std::size_t n,
                                         std::uint64_t master_seed) {
    if (trials < 100) throw std::invalid_argument("validate: need at least 100 trials");
    if (n < 1) throw std::invalid_argument("validate: need n >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("validate: delta must lie in (0, 1)");
    const double log_term = std::log(2.0 / delta);

    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng stream = make_stream({master_seed, t});
        const auto trial = detail::draw_two_point_trial(n, stream);
        const double variance = trial.spread * trial.spread;
        const double bound = std::sqrt(2.0 * variance * log_term / static_cast<double>(n)) +
                             log_term / (3.0 * static_cast<double>(n));
        if (std::abs(trial.mean - trial.sample_mean) > bound) ++violations;
    }
    return detail::finish_report("bennett", trials, violations, delta);
}

// Hoeffding's inequality on [0,1] variables, two-sided:
// |E Z - mean| <= sqrt(log(2/delta) / (2n)).
inline ValidationReport validate_hoeffding(std::size_t trials, double delta, std::size_t n,
                                           std::uint64_t master_seed) {
    if (trials < 100) throw std::invalid_argument("validate: need at least 100 trials");
    if (n < 1) throw std::invalid_argument("validate: need n >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("validate: delta must lie in (0, 1)");
    const double bound = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));

    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng stream = make_stream({master_seed, t});
        const auto trial = detail::draw_two_point_trial(n, stream);
        if (std::abs(trial.mean - trial.sample_mean) > bound) ++violations;
    }
    return detail::finish_report("hoeffding", trials, violations, delta);
}

// Generalization guarantee of the reduction algorithm: the excess true risk
// of its output may exceed the oracle right-hand side in at most a delta
// fraction of sample draws.
inline ValidationReport validate_generalization_bound(std::size_t trials, Confidence conf, std::size_t n,
                                                      std::size_t hypothesis_count, double bound,
                                                      std::uint64_t master_seed) {
    if (trials < 100) throw std::invalid_argument("validate: need at least 100 trials");
    if (n < 6) throw std::invalid_argument("validate: need n >= 6");

    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng stream = make_stream({master_seed, t});
        const SyntheticProblem problem = generate_problem(hypothesis_count, bound, stream);
        const LossTable table = sample_losses(problem, n, stream);
        const ColumnStats stats = compute_column_stats(table);

        const HsrResult hsr = run_hsr(stats, conf);
        const BoundParams params = uniform_bound_finite(n, hypothesis_count, conf);
        const double delta_n = regularizer_deviation_finite(n, hypothesis_count, conf);
        const TheoryDiagnostics diag = theory_diagnostics(problem, params, delta_n, n, conf);

        const auto [best_index, risk_min] = problem.true_optimum();
        if (problem.mean[hsr.chosen] - risk_min > diag.bound_rhs) ++violations;
    }
    return detail::finish_report("thm2", trials, violations, conf.delta);
}

}  // namespace hsr
