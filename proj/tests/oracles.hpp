// Test-side oracles, written independently of the library implementations
// they check. The variance oracle follows the pairwise U-statistic definition
// directly; the reduction-step oracles re-derive each threshold and argmin
// from the raw formulas.
#pragma once
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hsr/variance_reg.hpp"

namespace oracle {

// Average squared pairwise difference over n(n-1): the defining O(n^2) form
// of the unbiased empirical variance.
inline double pairwise_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = values[i] - values[j];
            sum += d * d;
        }
    return sum / (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
}

inline double mean(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// Finite-space bound coefficients, written out once more from scratch.
struct FiniteBounds {
    double alpha, beta, delta_n;
};

inline FiniteBounds finite_bounds(std::size_t n, std::size_t K, double delta) {
    const double nd = static_cast<double>(n);
    const double Kd = static_cast<double>(K);
    FiniteBounds b{};
    b.alpha = std::sqrt(2.0 * std::log(2.0 * Kd * nd / delta));
    b.beta = std::log(2.0 * Kd * nd / delta) / (3.0 * nd);
    b.delta_n = std::sqrt(2.0 * std::log(2.0 * Kd * nd / delta) / (nd - 1.0));
    return b;
}

inline double spatial_mu(std::size_t n, std::size_t subset_size, double delta) {
    const double nd = static_cast<double>(n);
    return std::sqrt(2.0 * std::log(2.0 * nd * static_cast<double>(subset_size) / (delta * (nd - 2.0))));
}

// Step-by-step replay of the reduction algorithm on precomputed per-column
// means and sqrt-variances.
struct HsrReplay {
    double optimum_value;
    std::size_t step1_argmin;
    std::vector<bool> in_g;
    double u_g;
    std::vector<bool> in_f;
    std::size_t f_size;
    double mu_f;
    std::size_t chosen;
};

inline HsrReplay replay_hsr(std::span<const double> risks, std::span<const double> regs, std::size_t n,
                            std::size_t K, double delta) {
    const FiniteBounds b = finite_bounds(n, K, delta);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    HsrReplay replay{};
    replay.optimum_value = risks[0] + (b.alpha / sqrt_n) * regs[0];
    replay.step1_argmin = 0;
    for (std::size_t k = 1; k < K; ++k) {
        const double obj = risks[k] + (b.alpha / sqrt_n) * regs[k];
        if (obj < replay.optimum_value) {
            replay.optimum_value = obj;
            replay.step1_argmin = k;
        }
    }

    replay.in_g.assign(K, false);
    replay.u_g = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double threshold =
            replay.optimum_value + (3.0 * b.alpha * regs[k] + 7.0 * b.alpha * b.delta_n) / sqrt_n + 5.0 * b.beta;
        if (risks[k] <= threshold) {
            replay.in_g[k] = true;
            if (regs[k] > replay.u_g) replay.u_g = regs[k];
        }
    }

    replay.in_f.assign(K, false);
    replay.f_size = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const double threshold =
            replay.optimum_value + (3.0 * b.alpha * replay.u_g + 5.0 * b.alpha * b.delta_n) / sqrt_n + 5.0 * b.beta;
        if (risks[k] <= threshold) {
            replay.in_f[k] = true;
            ++replay.f_size;
        }
    }

    replay.mu_f = spatial_mu(n, replay.f_size, delta);
    replay.chosen = 0;
    double best = risks[0] + (replay.mu_f / sqrt_n) * regs[0];
    for (std::size_t k = 1; k < K; ++k) {
        const double obj = risks[k] + (replay.mu_f / sqrt_n) * regs[k];
        if (obj < best) {
            best = obj;
            replay.chosen = k;
        }
    }
    return replay;
}

// Exact covering count of a centered interval of the given radius by
// closed eps-balls (1-d): ceil(radius / eps) balls suffice and are needed.
inline std::size_t interval_covering(double radius, double eps) {
    if (radius <= 0.0) return 1;
    return static_cast<std::size_t>(std::ceil(radius / eps - 1e-12));
}

// Count of axis-aligned grid cells of side 2*eps/sqrt(d) needed to tile the
// bounding box of a radius-R ball; every cell fits inside one eps-ball, so
// this is a valid covering and its count lower-bounds nothing but upper
// bounds the minimal covering from a concrete construction.
inline std::size_t grid_covering(int dim, double radius, double eps) {
    if (radius <= 0.0) return 1;
    const double side = 2.0 * eps / std::sqrt(static_cast<double>(dim));
    const double cells_per_axis = std::ceil(2.0 * radius / side - 1e-12);
    double total = 1.0;
    for (int i = 0; i < dim; ++i) total *= cells_per_axis;
    return static_cast<std::size_t>(total);
}

}  // namespace oracle
