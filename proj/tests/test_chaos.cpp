// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hermwave/chaos.hpp"
#include "hermwave/suites.hpp"

using namespace hermwave;

TEST_CASE("hermite values and recurrence") {
    CHECK(hermite(0, 3.7) == 1.0);
    CHECK(hermite(1, 3.7) == 3.7);
    CHECK(hermite(2, 1.0) == 0.0);
    CHECK(hermite(3, 2.0) == 2.0);
    // H_4(x) = x^4 - 6 x^2 + 3
    CHECK(hermite(4, 1.5) == Catch::Approx(std::pow(1.5, 4) - 6 * 2.25 + 3));
}

TEST_CASE("pair partitions") {
    CHECK(pair_partitions({1, 2}, 1).size() == 1);
    CHECK(pair_partitions({1, 2, 3}, 1).size() == 3);
    CHECK(pair_partitions({1, 2, 3, 4}, 2).size() == 3);
    CHECK(pair_partition_count(6, 2) == 45);
    CHECK_THROWS_AS(pair_partitions({1, 2, 3}, 2), config_error);
    // every partition covers the ground set exactly
    for (const auto& p : pair_partitions({1, 2, 3, 4, 5}, 2)) {
        std::vector<int> all = p.singletons;
        for (auto [a, b] : p.pairs) {
            all.push_back(a);
            all.push_back(b);
        }
        std::sort(all.begin(), all.end());
        CHECK(all == std::vector<int>{1, 2, 3, 4, 5});
    }
}

TEST_CASE("multiset keys and correlation rule") {
    CHECK(correlation({0, 1}, {2, 3}, {1, 0}, {3, 2}) == 1.0);
    CHECK(correlation({2, 2}, {1, 1}, {2, 2}, {1, 1}) == 2.0);
    CHECK(correlation({0, 1}, {2, 3}, {0, 1}, {2, 4}) == 0.0);
    CHECK(correlation({1, 2, 3}, {0, 0, 0}, {3, 2, 1}, {0, 0, 0}) == 1.0);
    CHECK(correlation({3, 3, 3}, {1, 1, 1}, {3, 3, 3}, {1, 1, 1}) == 6.0);
}

TEST_CASE("mu: multiplicity structure and the partition route") {
    GaussianField f(9);
    // d = 1: plain variate
    CHECK(mu(f, 2, {5}) == f.phi(2, 5));
    // repeated indices give Hermite powers
    const double g = f.phi(2, 5);
    CHECK(mu(f, 2, {5, 5, 5}) == Catch::Approx(g * g * g - 3.0 * g));
    // route agreement on mixed cases
    for (auto k : std::vector<std::vector<std::int64_t>>{
             {0, 0}, {1, 2}, {3, 3, 3}, {1, 1, 2, 2}, {0, 1, 0, 2}}) {
        const double a = mu(f, 0, k);
        const double b = mu_partition_route(f, 0, k);
        CHECK(a == Catch::Approx(b).margin(1e-12));
    }
}

TEST_CASE("epsilon: permutation invariance and distinct-index product") {
    GaussianField f(10);
    CHECK(epsilon(f, {1, 2}, {3, 4}) ==
          Catch::Approx(f.psi(1, 3) * f.psi(2, 4)).epsilon(1e-15));
    CHECK(epsilon(f, {1, 2, 5}, {3, 4, 0}) == epsilon(f, {5, 1, 2}, {0, 3, 4}));
}

TEST_CASE("sigma routes and budget guards") {
    GaussianField f(11);
    CHECK_THROWS_AS(sigma_direct(f, 1, {0, 0, 0}, {0.9, 0.9, 0.9}, 4096),
                    budget_error);
    // small exact case: d = 2, tiny truncation, hand-expanded sum
    const std::vector<double> h{0.8, 0.85};
    const std::int64_t P = 2;
    auto g1 = gamma_coeffs(0.3, P);
    auto g2 = gamma_coeffs(0.35, P);
    double want = 0.0;
    for (std::int64_t p1 = 0; p1 <= P; ++p1)
        for (std::int64_t p2 = 0; p2 <= P; ++p2)
            want += g1[p1] * g2[p2] * mu(f, 3, {4 - p1, -1 - p2});
    CHECK(sigma_direct(f, 3, {4, -1}, h, P) == Catch::Approx(want).epsilon(1e-14));
}

TEST_CASE("sigma moment oracle permanent") {
    // d = 2 by hand: perm = M00 M11 + M01 M10
    const std::vector<double> h{0.8, 0.85};
    const std::vector<std::int64_t> k{1, 2}, kp{0, 4};
    const double m00 = farima_covariance(0.3, 0.3, 1);
    const double m01 = farima_covariance(0.3, 0.35, -3);
    const double m10 = farima_covariance(0.35, 0.3, 2);
    const double m11 = farima_covariance(0.35, 0.35, -2);
    CHECK(sigma_moment_oracle(k, kp, h) ==
          Catch::Approx(m00 * m11 + m01 * m10).epsilon(1e-12));
}

TEST_CASE("combinatorics suite passes") {
    SuiteReport rep = combinatorics_suite();
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}

TEST_CASE("chaos routes suite passes (quick)") {
    SuiteReport rep = chaos_routes_suite(31337, true);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}
