// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <random>

#include "hermwave/fft.hpp"
#include "hermwave/quadrature.hpp"

using namespace hermwave;

namespace {

std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double ang =
                sign * 2.0 * std::numbers::pi * double(k) * double(m) / double(n);
            s += x[m] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches a naive transform") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> nd;
    std::vector<cplx> x(256);
    for (auto& v : x) v = {nd(gen), nd(gen)};
    auto want = naive_dft(x, +1);
    auto got = x;
    fft_pow2(got, +1);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - want[i]));
    CHECK(worst < 1e-10);

    fft_pow2(got, -1);
    for (auto& v : got) v /= double(x.size());
    worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - x[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int n : {2, 5, 8, 16}) {
        const GaussRule& r = gauss_rule(n);
        // degree 2n-1 monomial over [-1, 1]
        const int deg = 2 * n - 1;
        double got = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i)
            got += r.w[i] * std::pow(r.x[i], deg - 1);  // even degree
        const double want = 2.0 / double(deg);          // deg-1 even
        CHECK(std::abs(got - want) < 1e-13);
        double wsum = 0.0;
        for (double w : r.w) wsum += w;
        CHECK(std::abs(wsum - 2.0) < 1e-14);
    }
}

TEST_CASE("folded singular integral reproduces closed forms") {
    // s = 0: (1/pi) Int_0^pi cos(A xi + B)
    const double got = folded_singular_cos_integral(0.0, 2.0, 0.3);
    const double want =
        (std::sin(2.0 * std::numbers::pi + 0.3) - std::sin(0.3)) /
        (2.0 * std::numbers::pi);
    CHECK(std::abs(got - want) < 1e-12);

    // Gamma(1-s) / Gamma(1-s/2)^2 = (1/2pi) Int_0^{2pi} (2 sin(xi/2))^{-s} dxi
    for (double s : {0.1, 0.5, 0.9}) {
        const double lhs = folded_singular_cos_integral(s, 0.0, 0.0);
        const double rhs = std::tgamma(1.0 - s) /
                           std::pow(std::tgamma(1.0 - 0.5 * s), 2);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("graded endpoint integral handles algebraic singularities") {
    // Int_0^1 x^a dx = 1/(a+1)
    for (double a : {-0.9, -0.5, -0.2}) {
        auto one = [](double) { return 1.0; };
        const double got = graded_endpoint_integral(one, 0.0, 1.0, a);
        CHECK(std::abs(got - 1.0 / (a + 1.0)) < 1e-10);
    }
    // Int_1^2 (x-1)^{-1/2} e^x dx against a reference split
    auto g = [](double x) { return std::exp(x); };
    const double got = graded_endpoint_integral(g, 1.0, 2.0, -0.5);
    // substitution u = sqrt(x-1): 2 Int_0^1 e^{1+u^2} du
    const double want = 2.0 * gauss_composite(
                                  [](double u) { return std::exp(1.0 + u * u); },
                                  0.0, 1.0, 8, 16);
    CHECK(std::abs(got - want) < 1e-10);
}
