#pragma once
#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hsr/algorithm.hpp"
#include "hsr/bounds.hpp"
#include "hsr/core_model.hpp"
#include "hsr/rng.hpp"
#include "hsr/variance_reg.hpp"

namespace hsr {

enum class Method { Erm, Vbr, Hsr };

inline constexpr std::array<Method, 3> kAllMethods{Method::Erm, Method::Vbr, Method::Hsr};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Erm: return "ERM";
        case Method::Vbr: return "VBR";
        case Method::Hsr: return "HSR";
    }
    return "?";
}

// Plain empirical risk minimization; ties break to the lowest index.
inline std::size_t erm_solve(const ColumnStats& stats) {
    const auto it = std::min_element(stats.mean.begin(), stats.mean.end());
    return static_cast<std::size_t>(it - stats.mean.begin());
}

inline std::size_t erm_solve(const LossTable& table) { return erm_solve(compute_column_stats(table)); }

struct VbrResult {
    std::size_t chosen{0};
    double scale{0.0};  // coefficient on sqrt(V_n) in the solved objective
};

// Variance-based regularization with the union-bound scale
// lambda_n = sqrt(2 log(2K/delta) / n).
inline VbrResult vbr_solve(const ColumnStats& stats, Confidence conf) {
    const std::size_t n = stats.sample_count;
    if (n < 2) throw std::invalid_argument("vbr_solve: need n >= 2");
    const double nd = static_cast<double>(n);
    const double lambda = std::sqrt(2.0 * checked_log(2.0 * static_cast<double>(stats.hypothesis_count()) / conf.delta) / nd);

    std::size_t best = 0;
    double best_objective = stats.mean[0] + lambda * std::sqrt(stats.variance[0]);
    for (std::size_t k = 1; k < stats.hypothesis_count(); ++k) {
        const double objective = stats.mean[k] + lambda * std::sqrt(stats.variance[k]);
        if (objective < best_objective) {
            best_objective = objective;
            best = k;
        }
    }
    return {best, lambda};
}

inline VbrResult vbr_solve(const LossTable& table, Confidence conf) {
    return vbr_solve(compute_column_stats(table), conf);
}

// One method's outcome on one (trial, n) cell. Optional fields stay empty for
// methods that do not produce them.
struct TrialRecord {
    std::uint64_t trial{0};
    std::size_t n{0};
    Method method{Method::Erm};
    std::size_t chosen{0};
    double gen_error{0.0};  // true risk excess of the chosen hypothesis
    double scale{0.0};      // coefficient on the regularizer: 0 / lambda_n / mu_f/sqrt(n)
    std::optional<std::size_t> g_size;
    std::optional<std::size_t> f_size;
    std::optional<double> bound_rhs;
    std::optional<bool> bound_violated;
};

// Runs every requested method on one shared sample (paired comparison).
inline std::vector<TrialRecord> run_trial_on_stats(const SyntheticProblem& problem, const ColumnStats& stats,
                                                   Confidence conf, std::span<const Method> methods,
                                                   bool diagnostics, std::uint64_t trial_index) {
    const std::size_t n = stats.sample_count;
    const auto [best_index, risk_min] = problem.true_optimum();

    std::vector<TrialRecord> records;
    records.reserve(methods.size());
    for (Method method : methods) {
        TrialRecord rec;
        rec.trial = trial_index;
        rec.n = n;
        rec.method = method;
        switch (method) {
            case Method::Erm: {
                rec.chosen = erm_solve(stats);
                rec.scale = 0.0;
                break;
            }
            case Method::Vbr: {
                const VbrResult vbr = vbr_solve(stats, conf);
                rec.chosen = vbr.chosen;
                rec.scale = vbr.scale;
                break;
            }
            case Method::Hsr: {
                const HsrResult hsr = run_hsr(stats, conf);
                rec.chosen = hsr.chosen;
                rec.scale = hsr.effective_scale;
                rec.g_size = hsr.g_set.size();
                rec.f_size = hsr.f_set.size();
                if (diagnostics) {
                    const BoundParams params = uniform_bound_finite(n, stats.hypothesis_count(), conf);
                    const double delta_n = regularizer_deviation_finite(n, stats.hypothesis_count(), conf);
                    const TheoryDiagnostics diag = theory_diagnostics(problem, params, delta_n, n, conf);
                    rec.bound_rhs = diag.bound_rhs;
                    rec.bound_violated = (problem.mean[rec.chosen] - risk_min) > diag.bound_rhs;
                }
                break;
            }
        }
        rec.gen_error = problem.mean[rec.chosen] - risk_min;
        records.push_back(std::move(rec));
    }
    return records;
}

// Draws one sample of size n from the given stream and runs all methods on it.
inline std::vector<TrialRecord> run_trial(const SyntheticProblem& problem, std::size_t n, Confidence conf,
                                          Rng& stream, std::span<const Method> methods, bool diagnostics,
                                          std::uint64_t trial_index) {
    if (n < 6) throw std::invalid_argument("run_trial: need n >= 6");
    const LossTable table = sample_losses(problem, n, stream);
    return run_trial_on_stats(problem, compute_column_stats(table), conf, methods, diagnostics, trial_index);
}

inline std::vector<TrialRecord> run_trial(const SyntheticProblem& problem, std::size_t n, Confidence conf,
                                          TrialSeed seed, std::span<const Method> methods, bool diagnostics) {
    Rng stream = make_stream(seed);
    return run_trial(problem, n, conf, stream, methods, diagnostics, seed.trial_index);
}

// Full sweep configuration; defaults mirror the reference synthetic setting.
struct ExperimentConfig {
    std::size_t K{500};
    double B{0.25};
    double delta{0.5};
    std::vector<std::size_t> n_values{20, 50, 100, 200, 300, 500, 1000, 1500, 2000};
    std::size_t trials{1000};
    std::uint64_t master_seed{1};
    std::vector<Method> methods{Method::Erm, Method::Vbr, Method::Hsr};
    bool diagnostics{false};
    bool reuse_prefix{false};
    std::string output_dir{"."};

    void validate() const {
        if (K < 1) throw std::invalid_argument("config: K must be >= 1");
        if (!(B > 0.0 && B <= 0.5)) throw std::invalid_argument("config: B must lie in (0, 1/2]");
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("config: delta must lie in (0, 1)");
        if (n_values.empty()) throw std::invalid_argument("config: n_values must be non-empty");
        for (std::size_t n : n_values)
            if (n < 6) throw std::invalid_argument("config: every n must be >= 6");
        if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
        if (methods.empty()) throw std::invalid_argument("config: methods must be non-empty");
    }
};

// Aggregate over trials for one (n, method) cell.
struct SummaryRow {
    std::size_t n{0};
    Method method{Method::Erm};
    std::size_t trials{0};
    double mean_gen_error{0.0};
    double stderr_gen_error{0.0};
    double mean_scale{0.0};
    std::optional<double> mean_f_size;
    std::optional<double> bound_violation_rate;
};

struct SweepResult {
    std::vector<TrialRecord> records;  // sorted by (trial, n, method)
    std::vector<SummaryRow> summary;   // sorted by (n, method)
};

namespace detail {

// Work done by one trial: fresh problem, then one sample per n (or one shared
// prefix table), every method on each. Writes into preassigned slots.
inline void run_one_trial(const ExperimentConfig& config, std::uint64_t trial_index,
                          std::span<TrialRecord> slots) {
    const Confidence conf(config.delta);
    Rng stream = make_stream({config.master_seed, trial_index});
    const SyntheticProblem problem = generate_problem(config.K, config.B, stream);

    std::size_t offset = 0;
    if (config.reuse_prefix) {
        const std::size_t max_n = *std::max_element(config.n_values.begin(), config.n_values.end());
        const LossTable table = sample_losses(problem, max_n, stream);
        for (std::size_t n : config.n_values) {
            const ColumnStats stats = compute_column_stats_prefix(table, n);
            auto records = run_trial_on_stats(problem, stats, conf, config.methods, config.diagnostics, trial_index);
            std::copy(records.begin(), records.end(), slots.begin() + offset);
            offset += records.size();
        }
    } else {
        for (std::size_t n : config.n_values) {
            auto records = run_trial(problem, n, conf, stream, config.methods, config.diagnostics, trial_index);
            std::copy(records.begin(), records.end(), slots.begin() + offset);
            offset += records.size();
        }
    }
}

}  // namespace detail

/**
 * Monte Carlo sweep: `trials` independent problem generations, each evaluated
 * at every sample size with all configured methods on shared samples.
 * Trials fan out over `jobs` workers (0 = hardware concurrency); each trial
 * owns its random stream and its output slots, and aggregation runs in trial
 * order afterwards, so results do not depend on scheduling.
 */
inline SweepResult run_sweep(const ExperimentConfig& config, unsigned jobs = 0,
                             void (*progress)(std::size_t done, std::size_t total) = nullptr) {
    config.validate();
    const std::size_t per_trial = config.n_values.size() * config.methods.size();

    SweepResult result;
    result.records.resize(config.trials * per_trial);

    unsigned workers = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.trials));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto work = [&] {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= config.trials) break;
            detail::run_one_trial(config, t,
                                  std::span<TrialRecord>(result.records).subspan(t * per_trial, per_trial));
            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress) progress(finished, config.trials);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // Aggregate in (n, method) cells, scanning trials in index order.
    const std::size_t methods_count = config.methods.size();
    for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
        for (std::size_t mi = 0; mi < methods_count; ++mi) {
            SummaryRow row;
            row.n = config.n_values[ni];
            row.method = config.methods[mi];
            row.trials = config.trials;

            double sum = 0.0, sum_sq = 0.0, scale_sum = 0.0, f_sum = 0.0;
            std::size_t f_count = 0, violation_count = 0, diag_count = 0;
            for (std::size_t t = 0; t < config.trials; ++t) {
                const TrialRecord& rec = result.records[t * per_trial + ni * methods_count + mi];
                sum += rec.gen_error;
                sum_sq += rec.gen_error * rec.gen_error;
                scale_sum += rec.scale;
                if (rec.f_size) {
                    f_sum += static_cast<double>(*rec.f_size);
                    ++f_count;
                }
                if (rec.bound_violated) {
                    ++diag_count;
                    if (*rec.bound_violated) ++violation_count;
                }
            }
            const double t_count = static_cast<double>(config.trials);
            row.mean_gen_error = sum / t_count;
            if (config.trials > 1) {
                const double var = std::max(0.0, (sum_sq - sum * sum / t_count) / (t_count - 1.0));
                row.stderr_gen_error = std::sqrt(var / t_count);
            }
            row.mean_scale = scale_sum / t_count;
            if (f_count > 0) row.mean_f_size = f_sum / static_cast<double>(f_count);
            if (diag_count > 0)
                row.bound_violation_rate = static_cast<double>(violation_count) / static_cast<double>(diag_count);
            result.summary.push_back(std::move(row));
        }
    }
    // Records come out in (trial, grid, config-method) order; re-sort both
    // views so an unsorted n grid or method list still yields the documented
    // (trial, n, method) and (n, method) orderings.
    std::sort(result.records.begin(), result.records.end(), [](const TrialRecord& a, const TrialRecord& b) {
        if (a.trial != b.trial) return a.trial < b.trial;
        if (a.n != b.n) return a.n < b.n;
        return static_cast<int>(a.method) < static_cast<int>(b.method);
    });
    std::sort(result.summary.begin(), result.summary.end(), [](const SummaryRow& a, const SummaryRow& b) {
        if (a.n != b.n) return a.n < b.n;
        return static_cast<int>(a.method) < static_cast<int>(b.method);
    });
    return result;
}

}  // namespace hsr
