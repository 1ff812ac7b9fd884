#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hsr/core_model.hpp"
#include "hsr/variance_reg.hpp"

namespace hsr {

// Uniform bound (alpha, beta): with high probability, simultaneously for all
// hypotheses, |L*(h) - L(h)| <= alpha r*(h)/sqrt(n) + beta.
struct BoundParams {
    double alpha{0.0};
    double beta{0.0};
};

// Spatial uniform bound (mu, nu) for a subset: the same shape of inequality,
// but the coefficients shrink with the subset. nu is the Bennett residual
// paired with mu; the reduction algorithm itself never reads it.
struct SpatialParams {
    double mu{0.0};
    double nu{0.0};
};

// Explicit subset of a finite hypothesis space; indices kept sorted unique.
class HypothesisSubset {
public:
    HypothesisSubset() = default;

    explicit HypothesisSubset(std::vector<std::size_t> sorted_indices) : indices_(std::move(sorted_indices)) {
        for (std::size_t i = 1; i < indices_.size(); ++i)
            if (indices_[i - 1] >= indices_[i])
                throw std::invalid_argument("HypothesisSubset: indices must be sorted and unique");
    }

    static HypothesisSubset full(std::size_t hypothesis_count) {
        std::vector<std::size_t> all(hypothesis_count);
        for (std::size_t k = 0; k < hypothesis_count; ++k) all[k] = k;
        return HypothesisSubset(std::move(all));
    }

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::span<const std::size_t> indices() const { return indices_; }

    bool contains(std::size_t k) const { return std::binary_search(indices_.begin(), indices_.end(), k); }

private:
    std::vector<std::size_t> indices_;
};

// Finite-space uniform bound via Bennett's inequality and a union bound over
// all K hypotheses: alpha = sqrt(2 log(2Kn/delta)), beta = log(2Kn/delta)/(3n).
inline BoundParams uniform_bound_finite(std::size_t n, std::size_t hypothesis_count, Confidence conf) {
    if (n < 3) throw std::invalid_argument("uniform_bound_finite: need n >= 3");
    if (hypothesis_count < 1) throw std::invalid_argument("uniform_bound_finite: need K >= 1");
    const double nd = static_cast<double>(n);
    const double log_term = checked_log(2.0 * static_cast<double>(hypothesis_count) * nd / conf.delta);
    return {std::sqrt(2.0 * log_term), log_term / (3.0 * nd)};
}

// Finite-space spatial uniform bound for a subset of the given size:
// mu = sqrt(2 log(2n|F| / (delta (n-2)))) and its Bennett residual nu.
inline SpatialParams spatial_bound_finite(std::size_t n, std::size_t subset_size, Confidence conf) {
    if (n < 3) throw std::invalid_argument("spatial_bound_finite: need n >= 3");
    if (subset_size < 1) throw std::invalid_argument("spatial_bound_finite: empty subset");
    const double nd = static_cast<double>(n);
    const double log_term = checked_log(2.0 * nd * static_cast<double>(subset_size) / (conf.delta * (nd - 2.0)));
    return {std::sqrt(2.0 * log_term), log_term / (3.0 * nd)};
}

// Exact max of the empirical regularizer over a finite subset; the tightest
// valid regularization upper-bound (dominates the sup, monotone under
// inclusion).
inline double reg_upper_bound_finite(const RegularizerProfile& profile, const HypothesisSubset& subset) {
    if (subset.empty()) throw std::invalid_argument("reg_upper_bound_finite: empty subset");
    double best = 0.0;
    for (std::size_t k : subset.indices()) {
        if (k >= profile.r_n.size()) throw std::out_of_range("reg_upper_bound_finite: index outside profile");
        best = std::max(best, profile.r_n[k]);
    }
    return best;
}

// Trivial regularization upper-bound: losses in [0,1] force sqrt(V_n) <= 1.
constexpr double reg_upper_bound_trivial() { return 1.0; }

// Covering radius used by the continuous spatial bound:
// log^{1/4}(n/delta) / n^{1/4 + 1/d}.
inline double epsilon_n(std::size_t n, int dim, Confidence conf) {
    if (n < 2) throw std::invalid_argument("epsilon_n: need n >= 2");
    if (dim < 1) throw std::invalid_argument("epsilon_n: need dim >= 1");
    const double nd = static_cast<double>(n);
    const double log_term = checked_log(nd / conf.delta);
    return std::pow(log_term, 0.25) / std::pow(nd, 0.25 + 1.0 / static_cast<double>(dim));
}

/**
 * Upper bound on the covering number of a Euclidean ball (or box of the same
 * radius) in d dimensions: ceil((2 sqrt(d) radius / eps)^d), at least 1.
 * Saturates instead of overflowing.
 */
inline std::uint64_t covering_upper_bound_ball(int dim, double radius, double eps) {
    if (dim < 1) throw std::invalid_argument("covering_upper_bound_ball: need dim >= 1");
    if (radius < 0.0) throw std::invalid_argument("covering_upper_bound_ball: negative radius");
    if (!(eps > 0.0)) throw std::invalid_argument("covering_upper_bound_ball: eps must be positive");
    const double base = 2.0 * std::sqrt(static_cast<double>(dim)) * radius / eps;
    if (base <= 1.0) return 1;
    const double value = std::ceil(std::pow(base, static_cast<double>(dim)));
    if (value >= 9.2e18) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(value);
}

// All continuous-space bound coefficients evaluated at one (n, delta).
// nu is absent when the true-risk Lipschitz constant was not supplied.
struct ContinuousBounds {
    BoundParams uniform;        // alpha, beta over the full space
    double mu{0.0};             // spatial coefficient for the subset
    std::optional<double> nu;   // spatial residual; needs c_{L*}

    double nu_or_throw() const {
        if (!nu) throw std::logic_error("ContinuousBounds: nu requires the true-risk Lipschitz constant");
        return *nu;
    }
};

/**
 * Evaluates the continuous-space display formulas at sample size n:
 * alpha/beta from the covering number of the full space at radius 1/n, and
 * mu/nu for a subset whose covering number at radius epsilon_n is
 * `subset_covering`. All logs natural.
 */
inline ContinuousBounds continuous_bounds(std::size_t n, Confidence conf, const ContinuousSpaceSpec& space,
                                          double subset_covering) {
    if (n < 6) throw std::invalid_argument("continuous_bounds: need n >= 6");
    if (!space.covering) throw std::invalid_argument("continuous_bounds: covering oracle missing");
    if (subset_covering < 1.0) throw std::invalid_argument("continuous_bounds: covering number below 1");
    const double nd = static_cast<double>(n);
    const double d = static_cast<double>(space.dim);
    const double delta = conf.delta;

    ContinuousBounds out;
    const double full_cover = space.covering(1.0 / nd);
    const double log_full = checked_log(2.0 * nd * full_cover / delta);
    out.uniform.alpha = std::sqrt(2.0 * log_full);
    out.uniform.beta = (4.0 * space.lipschitz_loss + 1.0) * log_full / nd;

    out.mu = std::sqrt(2.0 * checked_log(2.0 * nd * subset_covering / ((nd - 3.0) * delta)));

    if (space.lipschitz_true_risk) {
        const double log_n_delta = checked_log(nd / delta);
        const double grad_term = std::sqrt(space.grad_bound * space.grad_bound * d * d +
                                           space.lipschitz_loss * space.lipschitz_loss);
        const double nu = 2.0 * *space.lipschitz_true_risk * std::pow(log_n_delta, 0.25) /
                              std::pow(nd, 0.25 + 1.0 / d) +
                          space.hessian_bound * std::sqrt(log_n_delta) / std::pow(nd, 0.5 + 2.0 / d) +
                          4.0 * grad_term * std::pow(checked_log(2.0 * d * nd * subset_covering / delta), 0.75) /
                              std::pow(nd, 0.75 + 1.0 / d) +
                          checked_log(4.0 * subset_covering / delta) / (3.0 * nd);
        out.nu = nu;
    }
    return out;
}

/**
 * Oracle-side diagnostics for the generalization guarantee, computable only
 * when true risks and variances are known (the synthetic setting). Builds the
 * true neighborhood sets around the optimum, the tightest true regularization
 * upper-bound over the wider one, and the guarantee's right-hand side.
 */
struct TheoryDiagnostics {
    double gbar_base{0.0};   // G-bar membership: L*(h) <= gbar_base + gbar_slope * r*(h)
    double gbar_slope{0.0};
    double fbar_threshold{0.0};
    HypothesisSubset g_bar;
    HypothesisSubset f_bar;
    double u_star_gbar{0.0};  // max r* over G-bar
    double r_star_min{0.0};   // min r* over the true argmin set
    double v_star_opt{0.0};   // true loss variance at that optimum
    SpatialParams spatial;    // (mu, nu) evaluated on |F-bar|
    double bound_rhs{0.0};    // 2 mu (r*_min + delta_n)/sqrt(n) + 2 nu

    double gbar_threshold(double r_star) const { return gbar_base + gbar_slope * r_star; }
};

inline TheoryDiagnostics theory_diagnostics(const SyntheticProblem& problem, BoundParams params, double delta_n,
                                            std::size_t n, Confidence conf) {
    const std::size_t K = problem.hypothesis_count();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const auto [best_index, risk_min] = problem.true_optimum();

    TheoryDiagnostics diag;
    diag.gbar_slope = 6.0 * params.alpha / sqrt_n;
    diag.gbar_base = risk_min + 11.0 * params.alpha * delta_n / sqrt_n + 7.0 * params.beta;

    std::vector<std::size_t> g_members;
    for (std::size_t k = 0; k < K; ++k) {
        const double r_star = problem.spread[k];
        if (problem.mean[k] <= diag.gbar_base + diag.gbar_slope * r_star) {
            g_members.push_back(k);
            diag.u_star_gbar = std::max(diag.u_star_gbar, r_star);
        }
    }
    diag.g_bar = HypothesisSubset(std::move(g_members));

    diag.fbar_threshold =
        risk_min + params.alpha * (5.0 * diag.u_star_gbar + 6.0 * delta_n) / sqrt_n + 7.0 * params.beta;
    std::vector<std::size_t> f_members;
    for (std::size_t k = 0; k < K; ++k)
        if (problem.mean[k] <= diag.fbar_threshold) f_members.push_back(k);
    diag.f_bar = HypothesisSubset(std::move(f_members));

    diag.r_star_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k)
        if (problem.mean[k] == risk_min) diag.r_star_min = std::min(diag.r_star_min, problem.spread[k]);
    diag.v_star_opt = diag.r_star_min * diag.r_star_min;

    diag.spatial = spatial_bound_finite(n, diag.f_bar.size(), conf);
    diag.bound_rhs = 2.0 * diag.spatial.mu * (diag.r_star_min + delta_n) / sqrt_n + 2.0 * diag.spatial.nu;
    return diag;
}

}  // namespace hsr
