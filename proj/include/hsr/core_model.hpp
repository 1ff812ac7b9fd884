#pragma once
#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsr/rng.hpp"

namespace hsr {

// Confidence level for every high-probability statement in the library.
struct Confidence {
    double delta;

    explicit Confidence(double d) : delta(d) {
        if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("Confidence: delta must lie in (0, 1)");
    }
};

/**
 * Two-point-per-coordinate synthetic problem over the one-hot hypothesis
 * space. Coordinate k draws mean[k] + spread[k] or mean[k] - spread[k] with
 * equal probability, so hypothesis k has true risk mean[k] and true loss
 * variance spread[k]^2. Hypotheses are plain column indices 0..K-1.
 */
struct SyntheticProblem {
    double bound{0.25};          // B; means live in [B, 1-B], spreads in [0, B]
    std::vector<double> mean;    // per-hypothesis true risk
    std::vector<double> spread;  // per-hypothesis half-spread

    std::size_t hypothesis_count() const { return mean.size(); }

    double true_risk(std::size_t k) const {
        if (k >= mean.size()) throw std::out_of_range("true_risk: hypothesis index out of range");
        return mean[k];
    }

    // Variance of the two-point loss at mean +- spread: spread^2.
    double true_variance(std::size_t k) const {
        if (k >= spread.size()) throw std::out_of_range("true_variance: hypothesis index out of range");
        return spread[k] * spread[k];
    }

    // Best hypothesis and its risk; ties break to the lowest index.
    std::pair<std::size_t, double> true_optimum() const {
        const auto it = std::min_element(mean.begin(), mean.end());
        return {static_cast<std::size_t>(it - mean.begin()), *it};
    }
};

/**
 * n-by-K table of losses in [0, 1]; the sole input to every empirical
 * quantity. Stored column-major so that one hypothesis's losses are
 * contiguous.
 */
class LossTable {
public:
    LossTable(std::size_t n, std::size_t hypothesis_count)
        : n_(n), k_(hypothesis_count), values_(n * hypothesis_count, 0.0) {
        if (n < 2) throw std::invalid_argument("LossTable: need at least 2 samples");
        if (hypothesis_count < 1) throw std::invalid_argument("LossTable: need at least 1 hypothesis");
    }

    // Builds a table from column-major values, rejecting losses outside [0, 1].
    static LossTable from_values(std::size_t n, std::size_t hypothesis_count, std::vector<double> column_major) {
        LossTable table(n, hypothesis_count);
        if (column_major.size() != n * hypothesis_count)
            throw std::invalid_argument("LossTable: value count does not match dimensions");
        for (double v : column_major)
            if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("LossTable: loss outside [0, 1]");
        table.values_ = std::move(column_major);
        return table;
    }

    std::size_t sample_count() const { return n_; }
    std::size_t hypothesis_count() const { return k_; }

    double operator()(std::size_t i, std::size_t k) const { return values_[k * n_ + i]; }
    double& operator()(std::size_t i, std::size_t k) { return values_[k * n_ + i]; }

    std::span<const double> column(std::size_t k) const {
        if (k >= k_) throw std::out_of_range("LossTable: column index out of range");
        return {values_.data() + k * n_, n_};
    }

    // First `prefix` losses of one hypothesis; used for nested-sample sweeps.
    std::span<const double> column_prefix(std::size_t k, std::size_t prefix) const {
        if (k >= k_) throw std::out_of_range("LossTable: column index out of range");
        if (prefix > n_) throw std::out_of_range("LossTable: prefix longer than table");
        return {values_.data() + k * n_, prefix};
    }

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<double> values_;
};

/**
 * Draws a fresh problem: means uniform over [B, 1-B], spreads uniform over
 * [0, B], all independent. Means are drawn first, then spreads.
 */
inline SyntheticProblem generate_problem(std::size_t hypothesis_count, double bound, Rng& rng) {
    if (hypothesis_count < 1) throw std::invalid_argument("generate_problem: need at least 1 hypothesis");
    if (!(bound > 0.0 && bound <= 0.5)) throw std::invalid_argument("generate_problem: bound must lie in (0, 1/2]");

    SyntheticProblem problem;
    problem.bound = bound;
    problem.mean.resize(hypothesis_count);
    problem.spread.resize(hypothesis_count);
    for (auto& a : problem.mean) a = rng.uniform(bound, 1.0 - bound);
    for (auto& b : problem.spread) b = rng.uniform(0.0, bound);
    return problem;
}

/**
 * Draws n i.i.d. samples and returns their loss table. For the one-hot space
 * the loss of hypothesis k on a sample is the sample's k-th coordinate, so
 * the loss table and the sample table coincide. Entry (i, k) is
 * mean[k] +- spread[k] with equal probability; entries are drawn sample-major
 * (all coordinates of sample i before sample i+1).
 */
inline LossTable sample_losses(const SyntheticProblem& problem, std::size_t n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("sample_losses: need n >= 2 for empirical variance");
    const std::size_t K = problem.hypothesis_count();
    LossTable table(n, K);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < K; ++k) {
            const double a = problem.mean[k];
            const double b = problem.spread[k];
            table(i, k) = rng.coin() ? a + b : a - b;
        }
    }
    return table;
}

}  // namespace hsr
