// SPDX-License-Identifier: Apache-2.0
//
// FARIMA(0, delta, 0) machinery: fractional-differencing coefficients, their
// Fourier-coefficient identity, exact covariances by singular quadrature, and
// seeded sequence evaluation.

#ifndef HERMWAVE_FARIMA_HPP
#define HERMWAVE_FARIMA_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "hermwave/errors.hpp"
#include "hermwave/quadrature.hpp"
#include "hermwave/random.hpp"

namespace hermwave {

// gamma_0 = 1, gamma_{p+1} = gamma_p (p + delta) / (p + 1); equivalently
// gamma_p = delta Gamma(p + delta) / (Gamma(p+1) Gamma(delta+1)), with
// gamma_p ~ a_delta p^{delta - 1}, a_delta = delta / Gamma(delta + 1).
struct GammaCoefficients {
    double delta = 0.0;
    std::vector<double> values;  // gamma_0 .. gamma_P
    double tail_constant = 0.0;  // a_delta

    double operator[](std::int64_t p) const {
        if (p < 0 || std::size_t(p) >= values.size()) return 0.0;
        return values[std::size_t(p)];
    }
    std::int64_t order() const { return std::int64_t(values.size()) - 1; }
};

inline GammaCoefficients gamma_coeffs(double delta, std::int64_t P) {
    if (!(std::abs(delta) < 0.5))
        throw config_error("gamma_coeffs: |delta| must be < 1/2");
    if (P < 0) throw config_error("gamma_coeffs: P must be >= 0");
    GammaCoefficients g;
    g.delta = delta;
    g.tail_constant = delta / std::tgamma(delta + 1.0);
    g.values.resize(std::size_t(P) + 1);
    g.values[0] = 1.0;
    for (std::int64_t p = 0; p < P; ++p)
        g.values[std::size_t(p + 1)] =
            g.values[std::size_t(p)] * (double(p) + delta) / (double(p) + 1.0);
    return g;
}

/// L2 mass of the dropped coefficients, sum_{p > P} gamma_p^2, by the
/// asymptotic envelope. Valid for delta < 1/2.
inline double gamma_tail_sq(double delta, double P) {
    if (delta == 0.0) return 0.0;
    const double a = delta / std::tgamma(delta + 1.0);
    return a * a * std::pow(P, 2.0 * delta - 1.0) / (1.0 - 2.0 * delta);
}

// ---------------------------------------------------------------------------
// Spectral identities
// ---------------------------------------------------------------------------

// Both the coefficient identity and the covariance integral reduce to
//   (1/pi) Int_0^pi (2 sin(xi/2))^{-s} cos(A xi + B) dxi
// after folding [0, 2 pi] about pi, done in folded_singular_cos_integral.

/// |quadrature of (1/2pi) Int_0^{2pi} e^{-i p xi} (1 - e^{i xi})^{-delta} dxi
///  - gamma_p^{(delta)}|.
inline double gamma_fourier_identity_residual(double delta, std::int64_t p,
                                              int quad_nodes = 16) {
    if (!(delta > 0.0 && delta < 0.5))
        throw config_error("identity residual: delta must be in (0, 1/2)");
    const double quad = folded_singular_cos_integral(
        delta, double(p) + 0.5 * delta, -0.5 * delta * std::numbers::pi,
        quad_nodes);
    double exact = 0.0;
    if (p >= 0) {
        exact = 1.0;
        for (std::int64_t q = 0; q < p; ++q)
            exact *= (double(q) + delta) / (double(q) + 1.0);
    }
    return std::abs(quad - exact);
}

/// E[Z_k^{(delta)} Z_{k'}^{(delta')}] with lag = k - k', i.e.
/// (1/2pi) Int_0^{2pi} e^{i lag xi} (1-e^{-i xi})^{-delta} (1-e^{i xi})^{-delta'} dxi.
inline double farima_covariance(double delta, double delta_p, std::int64_t lag,
                                int quad_nodes = 16) {
    if (!(std::abs(delta) < 0.5) || !(std::abs(delta_p) < 0.5))
        throw config_error("farima_covariance: |delta| must be < 1/2");
    const double s = delta + delta_p;
    if (s >= 1.0) throw config_error("farima_covariance: delta + delta' >= 1");
    const double A = double(lag) + 0.5 * (delta - delta_p);
    const double B = -0.5 * (delta - delta_p) * std::numbers::pi;
    return folded_singular_cos_integral(s, A, B, quad_nodes);
}

/// Memoized covariance lookup; the quadrature value depends only on
/// (delta, delta', lag), so replica loops share one evaluation.
inline double farima_covariance_cached(double delta, double delta_p,
                                       std::int64_t lag) {
    struct Key {
        double d1, d2;
        std::int64_t lag;
        auto operator<=>(const Key&) const = default;
    };
    static std::map<Key, double> cache;
    static std::mutex mu;
    const Key key{delta, delta_p, lag};
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double v = farima_covariance(delta, delta_p, lag);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, v);
    return v;
}

/// Series route: sum_p gamma_p^{(delta)} gamma_{p - lag}^{(delta')} up to P,
/// with an Euler-Maclaurin tail correction from the gamma asymptotics.
inline double farima_covariance_series(double delta, double delta_p,
                                       std::int64_t lag,
                                       std::int64_t P = 1000000) {
    if (lag < 0) return farima_covariance_series(delta_p, delta, -lag, P);
    // now lag >= 0: sum_{q >= 0} gamma_{q + lag}^{(delta)} gamma_q^{(delta')}
    double g1 = 1.0;  // gamma^{(delta)}_{q+lag}
    for (std::int64_t q = 0; q < lag; ++q)
        g1 *= (double(q) + delta) / (double(q) + 1.0);
    double g2 = 1.0;  // gamma^{(delta')}_q
    double s = 0.0;
    for (std::int64_t q = 0;; ++q) {
        s += g1 * g2;
        if (q == P) break;
        g1 *= (double(q + lag) + delta) / (double(q + lag) + 1.0);
        g2 *= (double(q) + delta_p) / (double(q) + 1.0);
    }
    if (delta == 0.0 || delta_p == 0.0) return s;  // finite sum dominates
    // tail: integral of a a' x^{d-1} (x+lag)^{d'-1} with first-order
    // corrections from Gamma-ratio asymptotics, from x0 = P + 1/2
    const double a1 = delta / std::tgamma(delta + 1.0);
    const double a2 = delta_p / std::tgamma(delta_p + 1.0);
    const double x0 = double(P) + 0.5;
    const double spow = delta + delta_p;
    const double corr = (delta - 1.0) * double(lag) +
                        0.5 * delta * (delta - 1.0) +
                        0.5 * delta_p * (delta_p - 1.0);
    double tail = std::pow(x0, spow - 1.0) / (1.0 - spow) +
                  corr * std::pow(x0, spow - 2.0) / (2.0 - spow);
    // the gamma^{(delta)} factor is evaluated at q + lag ~ x + lag
    tail = a1 * a2 * tail;
    return s + tail;
}

/// Closed form for the equal-exponent case (test oracle):
/// cov(delta, delta, lag) = Gamma(1-2 delta) Gamma(lag + delta)
///                          / (Gamma(delta) Gamma(lag + 1 - delta) Gamma(1 - delta)).
inline double farima_covariance_closed_form(double delta, std::int64_t lag) {
    const std::int64_t n = std::llabs(lag);
    double r = std::tgamma(1.0 - 2.0 * delta) /
               (std::tgamma(1.0 - delta) * std::tgamma(1.0 - delta));
    for (std::int64_t q = 0; q < n; ++q)
        r *= (double(q) + delta) / (double(q) + 1.0 - delta);
    return r;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// Z_l^{(delta)} = sum_{p=0}^{P} gamma_p g_{l-p} over the level-J scaling
/// field, for l in [l_lo, l_hi].
inline std::vector<double> farima_sequence(const GaussianField& field,
                                           std::int64_t level, double delta,
                                           std::int64_t l_lo, std::int64_t l_hi,
                                           std::int64_t P = 1 << 16,
                                           std::int64_t max_P = 1 << 24) {
    if (l_hi < l_lo) throw config_error("farima_sequence: empty range");
    if (P > max_P) throw budget_error("farima_sequence: P exceeds budget");
    const GammaCoefficients g = gamma_coeffs(delta, P);
    // one pass over the shared driving noise; every Z_l reads g_{l-p}
    const std::int64_t n = l_hi - l_lo + 1;
    std::vector<double> noise(std::size_t(n + P), {});
    for (std::int64_t i = 0; i < n + P; ++i)
        noise[std::size_t(i)] = field.phi(level, l_hi - i);
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t l = l_lo; l <= l_hi; ++l) {
        const std::int64_t base = l_hi - l;  // noise[base] = g_l
        double s = 0.0;
        for (std::int64_t p = 0; p <= P; ++p)
            s += g.values[std::size_t(p)] * noise[std::size_t(base + p)];
        z[std::size_t(l - l_lo)] = s;
    }
    return z;
}

}  // namespace hermwave

#endif
