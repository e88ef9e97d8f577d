// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_QUADRATURE_HPP
#define HERMWAVE_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hermwave {

/// Nodes and weights for n-point Gauss-Legendre on [-1, 1].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Newton iteration on P_n; machine-precision nodes without tabulated data.
inline GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

inline const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

/// Gauss-Legendre on [a, b].
template <typename F>
double gauss_panel(const F& f, double a, double b, const GaussRule& r) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

/// Composite Gauss-Legendre with fixed panel count.
template <typename F>
double gauss_composite(const F& f, double a, double b, int panels, int nodes) {
    const GaussRule& r = gauss_rule(nodes);
    double s = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        s += gauss_panel(f, pa, pb, r);
    }
    return s;
}

// (1/pi) * Integral_0^pi (2 sin(xi/2))^{-s} cos(A xi + B) dxi  with s < 1.
//
// The endpoint xi = 0 carries an algebraic singularity xi^{-s}. Geometric
// panels toward 0 handle it; the last sliver [0, a0] is integrated in closed
// form against the first-order expansion of the regular factor. Non-singular
// panels are split further when |A| makes the cosine oscillate.
inline double folded_singular_cos_integral(double s, double A, double B,
                                           int nodes = 16, int levels = 48) {
    if (s >= 1.0)
        throw std::domain_error("folded_singular_cos_integral: s must be < 1");
    const double pi = std::numbers::pi;
    const GaussRule& r = gauss_rule(nodes);

    auto f = [&](double xi) {
        return std::pow(2.0 * std::sin(0.5 * xi), -s) * std::cos(A * xi + B);
    };

    double total = 0.0;
    double hi = pi;
    for (int m = 0; m < levels; ++m) {
        const double lo = hi * 0.5;
        const int sub = 1 + int((hi - lo) * (std::abs(A) + 1.0) / 3.0);
        for (int q = 0; q < sub; ++q) {
            const double a = lo + (hi - lo) * q / sub;
            const double b = lo + (hi - lo) * (q + 1) / sub;
            total += gauss_panel(f, a, b, r);
        }
        hi = lo;
    }
    // Sliver [0, a0]: integrand = xi^{-s} * g(xi), g(xi) ~ g(0) + g'(0) xi.
    const double a0 = hi;
    const double g0 = std::cos(B);
    const double g1 = -A * std::sin(B);
    total += g0 * std::pow(a0, 1.0 - s) / (1.0 - s);
    total += g1 * std::pow(a0, 2.0 - s) / (2.0 - s);
    return total / pi;
}

// Integral_{s0}^{t} (x - s0)^{alpha} g(x) dx with alpha > -1, via geometric
// grading toward s0 plus a closed-form sliver.
template <typename G>
double graded_endpoint_integral(const G& g, double s0, double t, double alpha,
                                int nodes = 16, int levels = 46) {
    if (t <= s0) return 0.0;
    const GaussRule& r = gauss_rule(nodes);
    auto f = [&](double x) { return std::pow(x - s0, alpha) * g(x); };
    double total = 0.0;
    double hi = t;
    for (int m = 0; m < levels; ++m) {
        const double lo = s0 + (hi - s0) * 0.5;
        total += gauss_panel(f, lo, hi, r);
        hi = lo;
    }
    const double a0 = hi - s0;
    const double h = a0 * 1e-3;
    const double g0 = g(s0 + h);  // g may be unbounded only at other points
    const double gp = (g(s0 + 2.0 * h) - g0) / h;
    total += g0 * std::pow(a0, alpha + 1.0) / (alpha + 1.0);
    total += (gp * std::pow(a0, alpha + 2.0) / (alpha + 2.0));
    return total;
}

}  // namespace hermwave

#endif
