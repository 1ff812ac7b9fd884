#include <catch2/catch.hpp>

#include <cmath>
#include <set>

#include "hsr/core_model.hpp"
#include "hsr/rng.hpp"
#include "hsr/variance_reg.hpp"

using namespace hsr;

namespace {

// Variance of a two-outcome variable taking lo/hi with equal mass.
double two_outcome_variance(double a, double b) {
    const double lo = a - b, hi = a + b;
    const double m = 0.5 * (lo + hi);
    return 0.5 * ((lo - m) * (lo - m) + (hi - m) * (hi - m));
}

}  // namespace

TEST_CASE("trial streams replay bit-identically and are order-independent") {
    Rng first = make_stream({99, 3});
    Rng second = make_stream({99, 3});
    for (int i = 0; i < 100; ++i) REQUIRE(first() == second());

    // Drawing from one stream must not perturb another.
    Rng a0 = make_stream({99, 0});
    const double expected = a0.uniform01();
    Rng b = make_stream({99, 1});
    (void)b.uniform01();
    Rng a1 = make_stream({99, 0});
    REQUIRE(a1.uniform01() == expected);

    // Different trial indices give different draws.
    Rng c = make_stream({99, 4});
    Rng d = make_stream({99, 5});
    CHECK(c() != d());
}

TEST_CASE("generate_problem: degenerate interval forces the mean") {
    Rng rng = make_stream({42, 0});
    const auto problem = generate_problem(1, 0.5, rng);
    CHECK(problem.mean[0] == 0.5);
    CHECK(problem.spread[0] >= 0.0);
    CHECK(problem.spread[0] <= 0.5);
}

TEST_CASE("generate_problem: reference setting keeps parameters in range") {
    Rng rng = make_stream({7, 11});
    const auto problem = generate_problem(500, 0.25, rng);
    REQUIRE(problem.hypothesis_count() == 500);
    for (double a : problem.mean) {
        CHECK(a >= 0.25);
        CHECK(a <= 0.75);
    }
    for (double b : problem.spread) {
        CHECK(b >= 0.0);
        CHECK(b <= 0.25);
    }
}

TEST_CASE("generate_problem: bit-identical on replay") {
    Rng rng1 = make_stream({123, 5});
    Rng rng2 = make_stream({123, 5});
    const auto p1 = generate_problem(3, 0.25, rng1);
    const auto p2 = generate_problem(3, 0.25, rng2);
    REQUIRE(p1.mean == p2.mean);
    REQUIRE(p1.spread == p2.spread);

    Rng rng3 = make_stream({123, 6});
    const auto p3 = generate_problem(3, 0.25, rng3);
    CHECK(p1.mean != p3.mean);
}

TEST_CASE("generate_problem: parameter validation") {
    Rng rng = make_stream({1, 0});
    CHECK_THROWS_AS(generate_problem(0, 0.25, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_problem(5, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_problem(5, 0.6, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_problem(5, -0.1, rng), std::invalid_argument);
}

TEST_CASE("sample_losses: zero spread gives constant columns") {
    SyntheticProblem problem;
    problem.bound = 0.25;
    problem.mean = {0.3, 0.6, 0.45};
    problem.spread = {0.0, 0.0, 0.0};
    Rng rng = make_stream({5, 0});
    const auto table = sample_losses(problem, 16, rng);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 16; ++i) CHECK(table(i, k) == problem.mean[k]);
}

TEST_CASE("sample_losses: two-point support") {
    SyntheticProblem problem;
    problem.bound = 0.25;
    problem.mean = {0.5};
    problem.spread = {0.25};
    Rng rng = make_stream({9, 2});
    const auto table = sample_losses(problem, 4, rng);
    for (std::size_t i = 0; i < 4; ++i) {
        const double v = table(i, 0);
        CHECK((v == 0.25 || v == 0.75));
    }
}

TEST_CASE("sample_losses: needs two samples") {
    SyntheticProblem problem;
    problem.mean = {0.5};
    problem.spread = {0.1};
    Rng rng = make_stream({1, 1});
    CHECK_THROWS_AS(sample_losses(problem, 1, rng), std::invalid_argument);
}

TEST_CASE("sample_losses: column means concentrate at the true risks") {
    // |mean - a| <= 3 b / sqrt(n) is a two-sided 3-sigma event, so over many
    // seeded column-trials it should hold in at least 99% of cases.
    const std::size_t n = 10000;
    std::size_t hits = 0, total = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng stream = make_stream({2024, t});
        const auto problem = generate_problem(4, 0.25, stream);
        const auto table = sample_losses(problem, n, stream);
        for (std::size_t k = 0; k < 4; ++k) {
            const double m = empirical_risk(table.column(k));
            const double tol = 3.0 * problem.spread[k] / std::sqrt(static_cast<double>(n));
            if (std::abs(m - problem.mean[k]) <= tol) ++hits;
            ++total;
        }
    }
    CHECK(static_cast<double>(hits) / static_cast<double>(total) >= 0.99);
}

TEST_CASE("losses always lie in [0, 1]") {
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng stream = make_stream({77, t});
        const double bound = 0.05 + 0.45 * stream.uniform01();
        const auto problem = generate_problem(8, bound, stream);
        const auto table = sample_losses(problem, 64, stream);
        for (std::size_t k = 0; k < 8; ++k)
            for (std::size_t i = 0; i < 64; ++i) {
                REQUIRE(table(i, k) >= 0.0);
                REQUIRE(table(i, k) <= 1.0);
            }
    }
}

TEST_CASE("true_risk reads the mean parameter") {
    SyntheticProblem problem;
    problem.mean = {0.3, 0.5};
    problem.spread = {0.1, 0.1};
    CHECK(problem.true_risk(0) == 0.3);
    CHECK(problem.true_risk(1) == 0.5);
    CHECK_THROWS_AS(problem.true_risk(2), std::out_of_range);

    const auto [best, risk] = problem.true_optimum();
    CHECK(best == 0);
    CHECK(risk == 0.3);
}

TEST_CASE("true_optimum breaks ties to the lowest index") {
    SyntheticProblem problem;
    problem.mean = {0.4, 0.4};
    problem.spread = {0.2, 0.1};
    CHECK(problem.true_optimum().first == 0);
}

TEST_CASE("true_variance is the squared half-spread") {
    SyntheticProblem problem;
    problem.mean = {0.5, 0.5, 0.5};
    problem.spread = {0.0, 0.25, 0.1};
    CHECK(problem.true_variance(0) == 0.0);
    CHECK(problem.true_variance(1) == Approx(two_outcome_variance(0.5, 0.25)).epsilon(1e-15));
    CHECK(problem.true_variance(1) == Approx(0.0625).epsilon(1e-15));
    CHECK(problem.true_variance(2) == Approx(two_outcome_variance(0.5, 0.1)).epsilon(1e-15));
    CHECK(problem.true_variance(2) == Approx(0.01).epsilon(1e-15));
    CHECK_THROWS_AS(problem.true_variance(3), std::out_of_range);
}

TEST_CASE("Monte Carlo moments at n = 10^4 within five sigma") {
    const std::size_t n = 10000;
    Rng stream = make_stream({31337, 0});
    const auto problem = generate_problem(6, 0.25, stream);
    const auto table = sample_losses(problem, n, stream);
    for (std::size_t k = 0; k < 6; ++k) {
        const double b = problem.spread[k];
        const double m = empirical_risk(table.column(k));
        const double v = empirical_variance(table.column(k));
        const double sigma_mean = b / std::sqrt(static_cast<double>(n));
        const double sigma_var = std::sqrt(2.0) * b * b / static_cast<double>(n);
        CHECK(std::abs(m - problem.mean[k]) <= 5.0 * sigma_mean + 1e-12);
        CHECK(std::abs(v - b * b) <= 5.0 * sigma_var + 1e-12);
    }
}

TEST_CASE("LossTable::from_values validates dimensions and range") {
    CHECK_THROWS_AS(LossTable::from_values(2, 2, {0.1, 0.2, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(LossTable::from_values(2, 1, {0.1, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(LossTable::from_values(2, 1, {-0.1, 0.2}), std::invalid_argument);
    const auto table = LossTable::from_values(2, 2, {0.1, 0.2, 0.3, 0.4});
    CHECK(table(0, 0) == 0.1);
    CHECK(table(1, 0) == 0.2);
    CHECK(table(0, 1) == 0.3);
    CHECK(table(1, 1) == 0.4);
}

TEST_CASE("Confidence rejects out-of-range delta") {
    CHECK_THROWS_AS(Confidence(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(-0.5), std::invalid_argument);
    CHECK(Confidence(0.5).delta == 0.5);
}
