#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "hsr/algorithm.hpp"
#include "hsr/core_model.hpp"
#include "hsr/experiment.hpp"
#include "hsr/rng.hpp"
#include "oracles.hpp"

using namespace hsr;

namespace {

ColumnStats random_stats(Rng& rng, std::size_t n, std::size_t K) {
    std::vector<double> values(n * K);
    for (auto& v : values) v = rng.uniform01();
    return compute_column_stats(LossTable::from_values(n, K, values));
}

}  // namespace

TEST_CASE("step1 on a singleton space") {
    RegularizerProfile profile;
    profile.r_n = {0.0};
    const std::vector<double> risks{0.2};
    const auto res = step1_optimum_value(risks, profile, 1.0, 4);
    CHECK(res.value == 0.2);
    CHECK(res.argmin == 0);
}

TEST_CASE("step1: regularization can flip the unregularized choice") {
    RegularizerProfile profile;
    profile.r_n = {0.0, 0.5};
    const std::vector<double> risks{0.3, 0.2};
    // objectives: 0.3 and 0.2 + (1/sqrt(4)) * 0.5 = 0.45
    const auto res = step1_optimum_value(risks, profile, 1.0, 4);
    CHECK(res.value == 0.3);
    CHECK(res.argmin == 0);

    // With the regularizer disabled the minimum is the plain risk minimum.
    const auto erm = step1_optimum_value(risks, profile, 0.0, 4);
    CHECK(erm.value == 0.2);
    CHECK(erm.argmin == 1);
}

TEST_CASE("step2 keeps the step-1 minimizer and matches a fresh recomputation") {
    Rng rng = make_stream({321, 0});
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t K = 10;
        const std::size_t n = 6 + static_cast<std::size_t>(rng.uniform01() * 100.0);
        const Confidence conf(0.5);
        const auto stats = random_stats(rng, n, K);
        const auto profile = regularizer_profile_finite(stats, conf);
        const auto params = uniform_bound_finite(n, K, conf);
        const auto step1 = step1_optimum_value(stats.mean, profile, params.alpha, n);
        const auto [g_set, u_g] = step2_reduce_G(stats.mean, profile, params, step1.value, n);

        REQUIRE_FALSE(g_set.empty());
        CHECK(g_set.contains(step1.argmin));

        const auto replay = oracle::replay_hsr(stats.mean, profile.r_n, n, K, 0.5);
        for (std::size_t k = 0; k < K; ++k) CHECK(g_set.contains(k) == replay.in_g[k]);
        CHECK(u_g == replay.u_g);
    }
}

TEST_CASE("step3 on a singleton space yields the singleton spatial coefficient") {
    const std::size_t n = 50;
    const Confidence conf(0.5);
    RegularizerProfile profile;
    profile.r_n = {0.1};
    profile.delta_n = 0.2;
    const std::vector<double> risks{0.4};
    const auto params = uniform_bound_finite(n, 1, conf);
    const auto step1 = step1_optimum_value(risks, profile, params.alpha, n);
    const auto [f_set, mu_f] = step3_reduce_F(risks, profile, params, step1.value, 0.1, n, conf);

    REQUIRE(f_set.size() == 1);
    CHECK(mu_f == std::sqrt(2.0 * std::log(2.0 * 50.0 / (0.5 * 48.0))));
}

TEST_CASE("step3 keeps everything on a constant table") {
    const std::size_t n = 20, K = 6;
    const Confidence conf(0.5);
    const auto table = LossTable::from_values(n, K, std::vector<double>(n * K, 0.42));
    const auto stats = compute_column_stats(table);
    const auto profile = regularizer_profile_finite(stats, conf);
    const auto params = uniform_bound_finite(n, K, conf);
    const auto step1 = step1_optimum_value(stats.mean, profile, params.alpha, n);
    const auto [g_set, u_g] = step2_reduce_G(stats.mean, profile, params, step1.value, n);
    const auto [f_set, mu_f] = step3_reduce_F(stats.mean, profile, params, step1.value, u_g, n, conf);

    CHECK(g_set.size() == K);
    CHECK(f_set.size() == K);
}

TEST_CASE("step3 membership matches a fresh recomputation") {
    Rng rng = make_stream({322, 0});
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t K = 2 + static_cast<std::size_t>(rng.uniform01() * 20.0);
        const std::size_t n = 6 + static_cast<std::size_t>(rng.uniform01() * 150.0);
        const Confidence conf(0.5);
        const auto stats = random_stats(rng, n, K);
        const auto profile = regularizer_profile_finite(stats, conf);
        const auto params = uniform_bound_finite(n, K, conf);
        const auto step1 = step1_optimum_value(stats.mean, profile, params.alpha, n);
        const auto [g_set, u_g] = step2_reduce_G(stats.mean, profile, params, step1.value, n);
        const auto [f_set, mu_f] = step3_reduce_F(stats.mean, profile, params, step1.value, u_g, n, conf);

        CHECK(f_set.contains(step1.argmin));

        const auto replay = oracle::replay_hsr(stats.mean, profile.r_n, n, K, 0.5);
        for (std::size_t k = 0; k < K; ++k) CHECK(f_set.contains(k) == replay.in_f[k]);
        CHECK(mu_f == oracle::spatial_mu(n, replay.f_size, 0.5));
    }
}

TEST_CASE("shrinking the deviation and beta terms never grows the reduced set") {
    Rng rng = make_stream({323, 0});
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t K = 12;
        const std::size_t n = 30;
        const Confidence conf(0.5);
        const auto stats = random_stats(rng, n, K);
        auto profile = regularizer_profile_finite(stats, conf);
        auto params = uniform_bound_finite(n, K, conf);
        const auto step1 = step1_optimum_value(stats.mean, profile, params.alpha, n);
        const auto [g_set, u_g] = step2_reduce_G(stats.mean, profile, params, step1.value, n);
        const auto [f_big, mu_big] = step3_reduce_F(stats.mean, profile, params, step1.value, u_g, n, conf);

        auto tight_profile = profile;
        tight_profile.delta_n *= 0.5;
        auto tight_params = params;
        tight_params.beta *= 0.5;
        const auto [f_small, mu_small] =
            step3_reduce_F(stats.mean, tight_profile, tight_params, step1.value, u_g, n, conf);

        CHECK(f_small.size() <= f_big.size());
        for (std::size_t k : f_small.indices()) CHECK(f_big.contains(k));
    }
}

TEST_CASE("step4 basics") {
    RegularizerProfile profile;
    profile.r_n = {0.4, 0.1};
    const std::vector<double> risks{0.20, 0.22};

    // Zero scale degenerates to plain risk minimization.
    CHECK(step4_final(risks, profile, 0.0, 100) == 0);
    // A large scale prefers the low-variance hypothesis.
    CHECK(step4_final(risks, profile, 5.0, 100) == 1);

    RegularizerProfile single;
    single.r_n = {0.3};
    CHECK(step4_final(std::vector<double>{0.9}, single, 3.0, 10) == 0);
}

TEST_CASE("run_hsr on a singleton space") {
    const auto table = LossTable::from_values(8, 1, std::vector<double>{0.1, 0.3, 0.2, 0.4, 0.1, 0.3, 0.2, 0.4});
    const auto result = run_hsr(table, Confidence(0.5));
    CHECK(result.chosen == 0);
    CHECK(result.g_set.size() == 1);
    CHECK(result.f_set.size() == 1);
    CHECK(result.effective_scale == result.mu_f / std::sqrt(8.0));
}

TEST_CASE("run_hsr degenerates to risk minimization without variance") {
    // Distinct constant columns: every regularizer is zero, so every step
    // reduces to comparing means.
    std::vector<double> values;
    const std::vector<double> means{0.5, 0.2, 0.8, 0.4};
    for (double m : means) values.insert(values.end(), 10, m);
    const auto table = LossTable::from_values(10, 4, values);
    const auto result = run_hsr(table, Confidence(0.5));
    CHECK(result.chosen == 1);
    CHECK(result.step1_argmin == 1);
}

TEST_CASE("run_hsr keeps the whole space when columns are identical") {
    const std::size_t n = 12, K = 5;
    const auto table = LossTable::from_values(n, K, std::vector<double>(n * K, 0.6));
    const auto result = run_hsr(table, Confidence(0.5));
    CHECK(result.chosen == 0);  // tie-break
    CHECK(result.f_set.size() == K);
}

TEST_CASE("run_hsr is deterministic") {
    Rng rng = make_stream({324, 0});
    const auto stats = random_stats(rng, 40, 8);
    const auto r1 = run_hsr(stats, Confidence(0.5));
    const auto r2 = run_hsr(stats, Confidence(0.5));
    CHECK(r1.optimum_value == r2.optimum_value);
    CHECK(r1.chosen == r2.chosen);
    CHECK(r1.g_set.size() == r2.g_set.size());
    CHECK(r1.f_set.size() == r2.f_set.size());
    CHECK(r1.mu_f == r2.mu_f);
}

TEST_CASE("run_hsr invariants on random instances") {
    Rng rng = make_stream({325, 0});
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t K = 1 + static_cast<std::size_t>(rng.uniform01() * 40.0);
        const std::size_t n = 6 + static_cast<std::size_t>(rng.uniform01() * 150.0);
        const Confidence conf(0.5);
        const auto stats = random_stats(rng, n, K);
        const auto result = run_hsr(stats, conf);
        const auto params = uniform_bound_finite(n, K, conf);

        REQUIRE_FALSE(result.g_set.empty());
        REQUIRE_FALSE(result.f_set.empty());
        CHECK(result.g_set.contains(result.step1_argmin));
        CHECK(result.f_set.contains(result.step1_argmin));
        CHECK(result.mu_f <= params.alpha);
        CHECK(result.chosen < K);

        const auto replay = oracle::replay_hsr(stats.mean, regularizer_profile_finite(stats, conf).r_n, n, K, 0.5);
        CHECK(result.optimum_value == replay.optimum_value);
        CHECK(result.step1_argmin == replay.step1_argmin);
        CHECK(result.chosen == replay.chosen);
    }
}

TEST_CASE("run_hsr rejects tiny samples") {
    const auto table = LossTable::from_values(2, 2, {0.1, 0.2, 0.3, 0.4});
    CHECK_THROWS_AS(run_hsr(table, Confidence(0.5)), std::invalid_argument);
}

TEST_CASE("reduction beats the fixed union-bound scale at large n") {
    // One end-to-end synthetic run: by n = 2000 the reduced subset is small
    // enough that the effective scale drops below the fixed VBR scale.
    Rng stream = make_stream({20240601, 0});
    const auto problem = generate_problem(500, 0.25, stream);
    const auto table = sample_losses(problem, 2000, stream);
    const auto result = run_hsr(table, Confidence(0.5));

    const double lambda = std::sqrt(2.0 * std::log(2.0 * 500.0 / 0.5) / 2000.0);
    CHECK(result.effective_scale < lambda);
    CHECK(result.f_set.size() < 500);
}
