#pragma once
#include <cassert>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hsr/core_model.hpp"

namespace hsr {

// Natural logarithm; every bound in this library budgets confidence in nats.
// Arguments are expected to exceed 1 wherever a bound formula calls this.
inline double checked_log(double x) {
    assert(x > 1.0);
    return std::log(x);
}

// Mean loss of one hypothesis over the sample.
inline double empirical_risk(std::span<const double> losses) {
    if (losses.empty()) throw std::invalid_argument("empirical_risk: empty column");
    double sum = 0.0;
    for (double v : losses) sum += v;
    return sum / static_cast<double>(losses.size());
}

/**
 * Unbiased (U-statistic) empirical variance of one hypothesis's losses,
 * i.e. the average of squared pairwise differences over n(n-1). Computed in
 * one O(n) pass via (sum, sum of squares); clamped at zero so that constant
 * columns cannot round to a negative value.
 */
inline double empirical_variance(std::span<const double> losses) {
    const std::size_t n = losses.size();
    if (n < 2) throw std::invalid_argument("empirical_variance: need n >= 2");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : losses) {
        sum += v;
        sum_sq += v * v;
    }
    const double nd = static_cast<double>(n);
    const double variance = (sum_sq - sum * sum / nd) / (nd - 1.0);
    return variance > 0.0 ? variance : 0.0;
}

// Per-hypothesis empirical mean and U-statistic variance, one pass per column.
struct ColumnStats {
    std::size_t sample_count{0};
    std::vector<double> mean;
    std::vector<double> variance;

    std::size_t hypothesis_count() const { return mean.size(); }
};

inline ColumnStats compute_column_stats(const LossTable& table) {
    const std::size_t K = table.hypothesis_count();
    ColumnStats stats;
    stats.sample_count = table.sample_count();
    stats.mean.resize(K);
    stats.variance.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const auto col = table.column(k);
        stats.mean[k] = empirical_risk(col);
        stats.variance[k] = empirical_variance(col);
    }
    return stats;
}

// Stats over the first `prefix` samples only (nested-sample sweeps).
inline ColumnStats compute_column_stats_prefix(const LossTable& table, std::size_t prefix) {
    const std::size_t K = table.hypothesis_count();
    ColumnStats stats;
    stats.sample_count = prefix;
    stats.mean.resize(K);
    stats.variance.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const auto col = table.column_prefix(k, prefix);
        stats.mean[k] = empirical_risk(col);
        stats.variance[k] = empirical_variance(col);
    }
    return stats;
}

/**
 * Guaranteed empirical regularizer: per-hypothesis sqrt of the empirical
 * variance together with the uniform deviation bound delta_n that holds for
 * all hypotheses simultaneously with high probability.
 */
struct RegularizerProfile {
    std::vector<double> r_n;  // sqrt(V_n) per hypothesis
    double delta_n{0.0};      // uniform deviation bound

    std::size_t hypothesis_count() const { return r_n.size(); }
};

// Deviation bound for the finite-space parameterization:
// sqrt(2 log(2Kn/delta) / (n-1)).
inline double regularizer_deviation_finite(std::size_t n, std::size_t hypothesis_count, Confidence conf) {
    if (n < 3) throw std::invalid_argument("regularizer_deviation_finite: need n >= 3");
    if (hypothesis_count < 1) throw std::invalid_argument("regularizer_deviation_finite: need K >= 1");
    const double nd = static_cast<double>(n);
    const double arg = 2.0 * static_cast<double>(hypothesis_count) * nd / conf.delta;
    return std::sqrt(2.0 * checked_log(arg) / (nd - 1.0));
}

inline RegularizerProfile regularizer_profile_finite(const ColumnStats& stats, Confidence conf) {
    RegularizerProfile profile;
    profile.r_n.resize(stats.hypothesis_count());
    for (std::size_t k = 0; k < stats.hypothesis_count(); ++k) profile.r_n[k] = std::sqrt(stats.variance[k]);
    profile.delta_n = regularizer_deviation_finite(stats.sample_count, stats.hypothesis_count(), conf);
    return profile;
}

inline RegularizerProfile regularizer_profile_finite(const LossTable& table, Confidence conf) {
    return regularizer_profile_finite(compute_column_stats(table), conf);
}

/**
 * Constants and oracles describing a bounded, Lipschitz-smooth continuous
 * hypothesis space. `covering` maps a radius to a covering number of the full
 * space (>= 1, non-increasing in the radius). `lipschitz_true_risk` is the
 * local Lipschitz constant of the true risk on the subset of interest; it is
 * unknown to any algorithm and only feeds diagnostics.
 */
struct ContinuousSpaceSpec {
    int dim{1};                                   // d
    double lipschitz_loss{0.0};                   // c_l
    double grad_bound{0.0};                       // p1*
    double hessian_bound{0.0};                    // p2*
    std::optional<double> lipschitz_true_risk{};  // c_{L*}(F)
    std::function<double(double)> covering;       // radius -> covering number
};

// Continuous-space deviation bound:
// sqrt(3 log(2n N(1/n)/delta) / n) + 4 sqrt(2) c_l / n.
inline double delta_n_continuous(std::size_t n, Confidence conf, const ContinuousSpaceSpec& space) {
    if (n < 6) throw std::invalid_argument("delta_n_continuous: need n >= 6");
    if (!space.covering) throw std::invalid_argument("delta_n_continuous: covering oracle missing");
    const double nd = static_cast<double>(n);
    const double cover = space.covering(1.0 / nd);
    const double arg = 2.0 * nd * cover / conf.delta;
    return std::sqrt(3.0 * checked_log(arg) / nd) + 4.0 * std::sqrt(2.0) * space.lipschitz_loss / nd;
}

}  // namespace hsr
