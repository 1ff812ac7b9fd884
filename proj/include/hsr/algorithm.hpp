#pragma once
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsr/bounds.hpp"
#include "hsr/core_model.hpp"
#include "hsr/variance_reg.hpp"

namespace hsr {

// Full trace of one hypothesis-space-reduction run.
struct HsrResult {
    double optimum_value{0.0};    // value of the step-1 regularized objective
    std::size_t step1_argmin{0};  // its minimizer
    HypothesisSubset g_set;       // first reduction
    double u_g{0.0};              // regularization upper-bound over g_set
    HypothesisSubset f_set;       // second reduction
    double mu_f{0.0};             // spatial coefficient on f_set
    std::size_t chosen{0};        // final hypothesis
    double effective_scale{0.0};  // mu_f / sqrt(n): coefficient on r_n in the solved objective
};

struct Step1Result {
    double value{0.0};
    std::size_t argmin{0};
};

// Step 1: minimum of L(h) + (alpha/sqrt(n)) r_n(h) over the full space.
// Ties break to the lowest index.
inline Step1Result step1_optimum_value(std::span<const double> risks, const RegularizerProfile& profile,
                                       double alpha, std::size_t n) {
    if (risks.empty()) throw std::invalid_argument("step1_optimum_value: no hypotheses");
    const double coef = alpha / std::sqrt(static_cast<double>(n));
    Step1Result best{risks[0] + coef * profile.r_n[0], 0};
    for (std::size_t k = 1; k < risks.size(); ++k) {
        const double objective = risks[k] + coef * profile.r_n[k];
        if (objective < best.value) best = {objective, k};
    }
    return best;
}

// Step 2: keep hypotheses with
// L(h) <= v + (3 alpha r_n(h) + 7 alpha delta_n)/sqrt(n) + 5 beta,
// and return the exact max of r_n over the survivors. The step-1 minimizer
// always survives, so the set is never empty.
inline std::pair<HypothesisSubset, double> step2_reduce_G(std::span<const double> risks,
                                                          const RegularizerProfile& profile, BoundParams params,
                                                          double optimum_value, std::size_t n) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double offset = optimum_value + 7.0 * params.alpha * profile.delta_n / sqrt_n + 5.0 * params.beta;
    const double slope = 3.0 * params.alpha / sqrt_n;

    std::vector<std::size_t> members;
    double u_g = 0.0;
    for (std::size_t k = 0; k < risks.size(); ++k) {
        if (risks[k] <= offset + slope * profile.r_n[k]) {
            members.push_back(k);
            u_g = std::max(u_g, profile.r_n[k]);
        }
    }
    return {HypothesisSubset(std::move(members)), u_g};
}

// Step 3: the reduction proper. Keep hypotheses with
// L(h) <= v + (3 alpha u_g + 5 alpha delta_n)/sqrt(n) + 5 beta,
// and return the spatial coefficient for the surviving subset's size.
inline std::pair<HypothesisSubset, double> step3_reduce_F(std::span<const double> risks,
                                                          const RegularizerProfile& profile, BoundParams params,
                                                          double optimum_value, double u_g, std::size_t n,
                                                          Confidence conf) {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double threshold =
        optimum_value + (3.0 * params.alpha * u_g + 5.0 * params.alpha * profile.delta_n) / sqrt_n +
        5.0 * params.beta;

    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < risks.size(); ++k)
        if (risks[k] <= threshold) members.push_back(k);

    HypothesisSubset f_set(std::move(members));
    const double mu = spatial_bound_finite(n, f_set.size(), conf).mu;
    return {std::move(f_set), mu};
}

// Step 4: rerun the regularized minimization over the FULL space with the
// reduced scale mu_f/sqrt(n); the reduction only shrinks the coefficient.
inline std::size_t step4_final(std::span<const double> risks, const RegularizerProfile& profile, double mu_f,
                               std::size_t n) {
    if (risks.empty()) throw std::invalid_argument("step4_final: no hypotheses");
    const double coef = mu_f / std::sqrt(static_cast<double>(n));
    std::size_t best = 0;
    double best_objective = risks[0] + coef * profile.r_n[0];
    for (std::size_t k = 1; k < risks.size(); ++k) {
        const double objective = risks[k] + coef * profile.r_n[k];
        if (objective < best_objective) {
            best_objective = objective;
            best = k;
        }
    }
    return best;
}

/**
 * Hypothesis optimization with empirical hypothesis space reduction over a
 * finite space, using the finite-space parameterization (union-bounded
 * Bennett coefficients) at confidence delta. Deterministic given the stats.
 */
inline HsrResult run_hsr(const ColumnStats& stats, Confidence conf) {
    const std::size_t n = stats.sample_count;
    if (n < 3) throw std::invalid_argument("run_hsr: need n >= 3");

    const RegularizerProfile profile = regularizer_profile_finite(stats, conf);
    const BoundParams params = uniform_bound_finite(n, stats.hypothesis_count(), conf);

    HsrResult result;
    const Step1Result step1 = step1_optimum_value(stats.mean, profile, params.alpha, n);
    result.optimum_value = step1.value;
    result.step1_argmin = step1.argmin;

    auto [g_set, u_g] = step2_reduce_G(stats.mean, profile, params, step1.value, n);
    result.g_set = std::move(g_set);
    result.u_g = u_g;

    auto [f_set, mu_f] = step3_reduce_F(stats.mean, profile, params, step1.value, u_g, n, conf);
    result.f_set = std::move(f_set);
    result.mu_f = mu_f;

    result.chosen = step4_final(stats.mean, profile, mu_f, n);
    result.effective_scale = mu_f / std::sqrt(static_cast<double>(n));
    return result;
}

inline HsrResult run_hsr(const LossTable& table, Confidence conf) {
    return run_hsr(compute_column_stats(table), conf);
}

}  // namespace hsr
