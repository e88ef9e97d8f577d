// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hermwave/farima.hpp"
#include "hermwave/stats.hpp"
#include "hermwave/suites.hpp"

using namespace hermwave;

TEST_CASE("gamma coefficients: recurrence, pinned values, domain") {
    auto g = gamma_coeffs(0.3, 100);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == Catch::Approx(0.3).epsilon(1e-15));
    // ratio recurrence holds to machine precision as stored
    for (int p = 0; p < 100; ++p) {
        const double lhs = g[p + 1] * (double(p) + 1.0);
        const double rhs = g[p] * (double(p) + 0.3);
        CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(rhs));
    }
    // against the direct Gamma-function formula
    for (int p : {1, 2, 5, 20}) {
        const double direct = 0.3 * std::tgamma(p + 0.3) /
                              (std::tgamma(p + 1.0) * std::tgamma(1.3));
        CHECK(g[p] == Catch::Approx(direct).epsilon(1e-12));
    }
    CHECK(g[-4] == 0.0);  // negative indices defined as zero
    CHECK_THROWS_AS(gamma_coeffs(0.6, 4), config_error);
    // delta = 0 degenerates to the unit impulse
    auto g0 = gamma_coeffs(0.0, 8);
    for (int p = 1; p <= 8; ++p) CHECK(g0[p] == 0.0);
}

TEST_CASE("coefficient Fourier identity") {
    CHECK(gamma_fourier_identity_residual(0.25, 0) < 1e-8);
    CHECK(gamma_fourier_identity_residual(0.25, -3) < 1e-8);
    CHECK(gamma_fourier_identity_residual(0.45, 16) < 1e-6);
}

TEST_CASE("covariance: symmetry, negative exponents, closed form") {
    CHECK(farima_covariance(0.2, 0.35, 4) ==
          Catch::Approx(farima_covariance(0.35, 0.2, -4)).epsilon(1e-13));
    // closed form at equal exponents
    for (double d : {0.1, 0.3}) {
        for (std::int64_t lag : {0L, 1L, 9L})
            CHECK(farima_covariance(d, d, lag) ==
                  Catch::Approx(farima_covariance_closed_form(d, lag))
                      .epsilon(1e-11));
    }
    // negative-order branch stays consistent with the series route
    const double q = farima_covariance(-0.2, 0.3, 2);
    const double s = farima_covariance_series(-0.2, 0.3, 2);
    CHECK(q == Catch::Approx(s).margin(1e-6));
    // white-noise degenerate case: covariance reduces to a coefficient
    CHECK(farima_covariance(0.0, 0.3, -2) ==
          Catch::Approx(gamma_coeffs(0.3, 4)[2]).margin(1e-10));
}

TEST_CASE("sequence basics") {
    GaussianField f(5);
    // delta = 0 gives back the driving noise
    auto z = farima_sequence(f, 2, 0.0, -4, 4, 100);
    for (std::int64_t l = -4; l <= 4; ++l)
        CHECK(z[std::size_t(l + 4)] == f.phi(2, l));
    CHECK_THROWS_AS(farima_sequence(f, 2, 0.3, 0, 1, 100, 50), budget_error);
    CHECK_THROWS_AS(farima_sequence(f, 2, 0.3, 3, 1, 100), config_error);
}

TEST_CASE("farima suite passes (quick)") {
    SuiteReport rep = farima_suite(true);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}
