// SPDX-License-Identifier: Apache-2.0
//
// Meyer scaling function and mother wavelet, their fractional primitives and
// fractional scaling functions, all constructed from compactly supported
// Fourier transforms and tabulated on a uniform grid.
//
// Fourier convention throughout: F(f)(xi) = (2 pi)^{-1/2} Int e^{-i xi x} f(x) dx.
//
// The band taper is nu(x) = x^4 (35 - 84 x + 70 x^2 - 20 x^3), so
//   phi_hat(xi) = (2 pi)^{-1/2} cos((pi/2) nu(3|xi|/(2 pi) - 1))
// on the transition band 2 pi/3 <= |xi| <= 4 pi/3, flat below, zero above, and
//   psi_hat(xi) = e^{i xi/2} b(xi),
//   b(xi) = (2 pi)^{-1/2} sin((pi/2) nu(3|xi|/(2 pi) - 1))  on [2 pi/3, 4 pi/3]
//         = (2 pi)^{-1/2} cos((pi/2) nu(3|xi|/(4 pi) - 1))  on [4 pi/3, 8 pi/3].

#ifndef HERMWAVE_MEYER_HPP
#define HERMWAVE_MEYER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "hermwave/errors.hpp"
#include "hermwave/fft.hpp"
#include "hermwave/quadrature.hpp"

namespace hermwave {

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779;

// ---------------------------------------------------------------------------
// Fourier-domain profiles
// ---------------------------------------------------------------------------

namespace detail {

inline double meyer_taper(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * x * x * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

inline double sinc_half(double xi) {
    const double y = 0.5 * xi;
    if (std::abs(y) < 1e-8) return 1.0 - y * y / 6.0;
    return std::sin(y) / y;
}

}  // namespace detail

/// phi_hat: real, nonnegative, supported on [-4 pi/3, 4 pi/3].
inline double meyer_scaling_fourier_real(double xi) {
    const double a = std::abs(xi);
    const double pi = std::numbers::pi;
    if (a <= 2.0 * pi / 3.0) return inv_sqrt_2pi;
    if (a >= 4.0 * pi / 3.0) return 0.0;
    const double t = detail::meyer_taper(3.0 * a / (2.0 * pi) - 1.0);
    return inv_sqrt_2pi * std::cos(0.5 * std::numbers::pi * t);
}

inline std::complex<double> meyer_scaling_fourier(double xi) {
    return {meyer_scaling_fourier_real(xi), 0.0};
}

/// |psi_hat|: even envelope, supported on [2 pi/3, 8 pi/3] in |xi|.
inline double meyer_wavelet_envelope(double xi) {
    const double a = std::abs(xi);
    const double pi = std::numbers::pi;
    if (a <= 2.0 * pi / 3.0 || a >= 8.0 * pi / 3.0) return 0.0;
    if (a <= 4.0 * pi / 3.0) {
        const double t = detail::meyer_taper(3.0 * a / (2.0 * pi) - 1.0);
        return inv_sqrt_2pi * std::sin(0.5 * pi * t);
    }
    const double t = detail::meyer_taper(3.0 * a / (4.0 * pi) - 1.0);
    return inv_sqrt_2pi * std::cos(0.5 * pi * t);
}

inline std::complex<double> meyer_wavelet_fourier(double xi) {
    const double b = meyer_wavelet_envelope(xi);
    if (b == 0.0) return {0.0, 0.0};
    return std::polar(b, 0.5 * xi);
}

/// (i xi)^a on the principal branch: |xi|^a exp(i a (pi/2) sgn xi).
inline std::complex<double> i_xi_power(double xi, double a) {
    if (xi == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(xi), a);
    const double ph = a * 0.5 * std::numbers::pi * (xi > 0.0 ? 1.0 : -1.0);
    return std::polar(mag, ph);
}

/// Fractional primitive of order h - 1/2 of psi: psi_h_hat = (i xi)^{1/2-h} psi_hat.
inline std::complex<double> frac_primitive_wavelet_fourier(double xi, double h) {
    const double b = meyer_wavelet_envelope(xi);
    if (b == 0.0) return {0.0, 0.0};
    return i_xi_power(xi, 0.5 - h) * std::polar(b, 0.5 * xi);
}

// ((1 - e^{-i xi}) / (i xi))^delta = e^{-i delta xi / 2} (sin(xi/2)/(xi/2))^delta.
// The base is strictly positive on [-4 pi/3, 4 pi/3]; the limit at 0 is 1.
inline std::complex<double> delta_ratio_power(double xi, double delta) {
    const double base = detail::sinc_half(xi);
    return std::polar(std::pow(base, delta), -0.5 * delta * xi);
}

/// Fractional scaling function transform: delta_ratio_power * phi_hat.
inline std::complex<double> frac_scaling_fourier(double xi, double delta) {
    const double p = meyer_scaling_fourier_real(xi);
    if (p == 0.0) return {0.0, 0.0};
    return delta_ratio_power(xi, delta) * p;
}

// (1 - e^{i xi})^{-delta} on the principal branch, xi not a multiple of 2 pi:
// 1 - e^{i xi} = 2 sin(|xi|/2) exp(i sgn(xi) (|xi| - pi)/2) for |xi| in (0, 2 pi).
inline std::complex<double> one_minus_exp_power(double xi, double mdelta) {
    const double a = std::abs(xi);
    const double mag = std::pow(2.0 * std::sin(0.5 * a), mdelta);
    const double ph = mdelta * 0.5 * (a - std::numbers::pi) *
                      (xi > 0.0 ? 1.0 : -1.0);
    return std::polar(mag, ph);
}

// ---------------------------------------------------------------------------
// FourierProfile: sampled transform on a uniform grid covering the support
// ---------------------------------------------------------------------------

struct FourierProfile {
    double support = 0.0;  // transform vanishes for |xi| > support
    double dxi = 0.0;
    std::vector<double> xi;
    std::vector<std::complex<double>> values;  // at xi[i]
    const char* convention = "unitary, e^{-i xi x}";
};

inline FourierProfile sample_profile(
    const std::function<std::complex<double>(double)>& fhat, double support,
    double dxi) {
    FourierProfile p;
    p.support = support;
    p.dxi = dxi;
    const std::int64_t m_max = std::int64_t(std::ceil(support / dxi));
    p.xi.reserve(2 * m_max + 1);
    p.values.reserve(2 * m_max + 1);
    for (std::int64_t m = -m_max; m <= m_max; ++m) {
        const double x = m * dxi;
        p.xi.push_back(x);
        p.values.push_back(std::abs(x) > support ? std::complex<double>(0.0)
                                                 : fhat(x));
    }
    return p;
}

// ---------------------------------------------------------------------------
// FunctionTable
// ---------------------------------------------------------------------------

// Dense samples of a real function on [-half_width, half_width], step dx,
// with a certified polynomial tail bound |f(x)| <= tail_c (3+|x|)^{-tail_L}
// fitted on the outer 10% of the table. eval() returns 0 outside the table.
struct FunctionTable {
    double half_width = 0.0;
    double dx = 0.0;
    std::vector<double> samples;
    double tail_L = 0.0;
    double tail_c = 0.0;
    int interpolation_order = 3;
    double interp_error_bound = 0.0;
    std::vector<double> cumulative;  // Int_{-R}^{x_i} f, same grid

    std::size_t size() const { return samples.size(); }
    double x_of(std::size_t i) const { return -half_width + double(i) * dx; }

    double eval(double x) const { return interp(samples, x); }

    /// Derivative of the cubic interpolant (used by slow-scale Taylor paths).
    double eval_deriv(double x) const {
        if (std::abs(x) >= half_width) return 0.0;
        const double u = (x + half_width) / dx;
        std::int64_t i = std::int64_t(std::floor(u));
        const std::int64_t n = std::int64_t(samples.size());
        i = std::clamp<std::int64_t>(i, 1, n - 3);
        const double t = u - double(i);
        const double s0 = samples[i - 1], s1 = samples[i], s2 = samples[i + 1],
                     s3 = samples[i + 2];
        // d/dt of the 4-point Lagrange cubic, then chain rule by 1/dx
        const double a = -s0 / 6 + s1 / 2 - s2 / 2 + s3 / 6;
        const double b = s0 / 2 - s1 + s2 / 2;
        const double c = -s0 / 3 - s1 / 2 + s2 - s3 / 6;
        return (3 * a * t * t + 2 * b * t + c) / dx;
    }

    /// Int_{-inf}^{x} f (the omitted tails are covered by the tail bound).
    double eval_cumulative(double x) const {
        if (x <= -half_width) return 0.0;
        if (x >= half_width) return cumulative.back();
        return interp(cumulative, x);
    }

    double integral() const { return cumulative.back(); }

    /// Total variation proxy: Int |f|, handy for error budgets.
    double abs_mass() const {
        double s = 0.0;
        for (double v : samples) s += std::abs(v);
        return s * dx;
    }

  private:
    // 4-point Lagrange cubic: exact at nodes and for cubic polynomials
    double interp(const std::vector<double>& ys, double x) const {
        if (std::abs(x) >= half_width) return 0.0;
        const double u = (x + half_width) / dx;
        std::int64_t i = std::int64_t(std::floor(u));
        const std::int64_t n = std::int64_t(ys.size());
        i = std::clamp<std::int64_t>(i, 1, n - 3);
        const double t = u - double(i);
        const double s0 = ys[i - 1], s1 = ys[i], s2 = ys[i + 1], s3 = ys[i + 2];
        const double a = -s0 / 6 + s1 / 2 - s2 / 2 + s3 / 6;
        const double b = s0 / 2 - s1 + s2 / 2;
        const double c = -s0 / 3 - s1 / 2 + s2 - s3 / 6;
        return s1 + t * (c + t * (b + t * a));
    }
};

namespace detail {

inline void build_cumulative(FunctionTable& t) {
    const std::size_t n = t.samples.size();
    t.cumulative.assign(n, 0.0);
    if (n < 4) return;
    // 4th-order cumulative rule; trapezoid on the two boundary cells where the
    // wide stencil does not fit (samples there are already tail-small).
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double inc;
        if (i == 0 || i + 2 >= n) {
            inc = 0.5 * t.dx * (t.samples[i] + t.samples[i + 1]);
        } else {
            inc = t.dx / 24.0 *
                  (-t.samples[i - 1] + 13.0 * t.samples[i] +
                   13.0 * t.samples[i + 1] - t.samples[i + 2]);
        }
        t.cumulative[i + 1] = t.cumulative[i] + inc;
    }
}

inline void record_interp_bound(FunctionTable& t) {
    double m4 = 0.0;
    for (std::size_t i = 2; i + 2 < t.samples.size(); ++i) {
        const double d4 = t.samples[i - 2] - 4 * t.samples[i - 1] +
                          6 * t.samples[i] - 4 * t.samples[i + 1] +
                          t.samples[i + 2];
        m4 = std::max(m4, std::abs(d4));
    }
    t.interp_error_bound = 0.024 * m4;
}

inline void fit_tail(FunctionTable& t, double target_L) {
    const std::size_t n = t.samples.size();
    const std::size_t outer = std::max<std::size_t>(n / 10, 4);
    double c = 0.0;
    for (std::size_t m = 0; m < outer; ++m) {
        for (std::size_t i : {m, n - 1 - m}) {
            const double x = t.x_of(i);
            c = std::max(c, std::abs(t.samples[i]) *
                                std::pow(3.0 + std::abs(x), target_L));
        }
    }
    t.tail_L = target_L;
    t.tail_c = c;
}

}  // namespace detail

/// Checks the recorded (L, c) bound on the outer 10% of the table.
inline bool tail_certificate_holds(const FunctionTable& t) {
    const std::size_t n = t.samples.size();
    const std::size_t outer = std::max<std::size_t>(n / 10, 4);
    for (std::size_t m = 0; m < outer; ++m) {
        for (std::size_t i : {m, n - 1 - m}) {
            const double x = t.x_of(i);
            const double bound =
                t.tail_c * std::pow(3.0 + std::abs(x), -t.tail_L) +
                1e-300;
            if (std::abs(t.samples[i]) > bound * (1.0 + 1e-12)) return false;
        }
    }
    return std::isfinite(t.tail_c);
}

// ---------------------------------------------------------------------------
// Synthesis: inverse transform of a compactly supported profile
// ---------------------------------------------------------------------------

struct TableSpec {
    double half_width = 32.0;
    double dx = 0x1p-8;
    // Periodization length of the trapezoid/FFT synthesis. With
    // period = 16384 the frequency step gives > 2^14 nodes across the band
    // and the wrap-around images sit ~16000 away from the table.
    double period = 16384.0;
    double tail_L = 8.0;
};

inline FunctionTable synthesize_table(
    const std::function<std::complex<double>(double)>& fhat, double support,
    const TableSpec& spec) {
    const double pi = std::numbers::pi;
    if (support > pi / spec.dx)
        throw resolution_error(
            "table dx too coarse for the transform support (Nyquist)");
    const std::size_t n_fft = std::size_t(std::llround(spec.period / spec.dx));
    if ((n_fft & (n_fft - 1)) != 0)
        throw resolution_error("period/dx must be a power of two");

    const double dxi = 2.0 * pi / spec.period;
    const std::int64_t m_max = std::int64_t(std::floor(support / dxi));

    std::vector<cplx> buf(n_fft, cplx(0.0, 0.0));
    for (std::int64_t m = -m_max; m <= m_max; ++m) {
        const double xi = m * dxi;
        const cplx v = fhat(xi);
        const std::size_t idx = std::size_t((m + std::int64_t(n_fft)) %
                                            std::int64_t(n_fft));
        buf[idx] = v;
    }
    fft_pow2(buf, +1);

    FunctionTable t;
    t.half_width = spec.half_width;
    t.dx = spec.dx;
    const std::int64_t half_n = std::int64_t(std::llround(spec.half_width / spec.dx));
    t.samples.resize(2 * half_n + 1);
    const double scale = inv_sqrt_2pi * dxi;
    double max_im = 0.0, max_re = 0.0;
    for (std::int64_t i = -half_n; i <= half_n; ++i) {
        const std::size_t idx = std::size_t((i + std::int64_t(n_fft)) %
                                            std::int64_t(n_fft));
        t.samples[std::size_t(i + half_n)] = scale * buf[idx].real();
        max_im = std::max(max_im, std::abs(buf[idx].imag()));
        max_re = std::max(max_re, std::abs(buf[idx].real()));
    }
    if (max_im > 1e-9 * std::max(max_re, 1.0))
        throw resolution_error("synthesized table has a non-real part; "
                               "profile is not Hermitian-symmetric");
    detail::build_cumulative(t);
    detail::record_interp_bound(t);
    detail::fit_tail(t, spec.tail_L);
    return t;
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

inline FunctionTable build_scaling_table(const TableSpec& spec = {}) {
    return synthesize_table([](double xi) { return meyer_scaling_fourier(xi); },
                            4.0 * std::numbers::pi / 3.0, spec);
}

inline FunctionTable build_wavelet_table(const TableSpec& spec = {}) {
    return synthesize_table([](double xi) { return meyer_wavelet_fourier(xi); },
                            8.0 * std::numbers::pi / 3.0, spec);
}

/// psi_h table; h may be any real since psi_hat vanishes near 0.
inline FunctionTable build_fractional_primitive(double h,
                                                const TableSpec& spec = {}) {
    return synthesize_table(
        [h](double xi) { return frac_primitive_wavelet_fourier(xi, h); },
        8.0 * std::numbers::pi / 3.0, spec);
}

/// Fractional scaling function table for any real delta.
inline FunctionTable build_fractional_scaling(double delta,
                                              const TableSpec& spec = {}) {
    return synthesize_table(
        [delta](double xi) { return frac_scaling_fourier(xi, delta); },
        4.0 * std::numbers::pi / 3.0, spec);
}

// Phi^{(-delta)} = sum_p gamma_p^{(delta)} phi(. + p), tabulated on
// [-out_half_width, out_half_width] from a wider source phi table. The terms
// reaching past the source table pair a gamma value with the phi tail; their
// estimated mass must stay below tol. Slowly decaying to the left by
// construction, so the tail gets a measured (L, c) fit instead of the
// fast-decay certificate.
inline FunctionTable build_phi_minus_delta(const FunctionTable& phi,
                                           double delta,
                                           double out_half_width = 32.0,
                                           double tol = 1e-8,
                                           int max_terms = 1 << 20) {
    if (!(delta > 0.0 && delta < 0.5))
        throw config_error("build_phi_minus_delta: delta must be in (0, 1/2)");
    if (out_half_width > phi.half_width)
        throw config_error("build_phi_minus_delta: source table too narrow");
    const int p_needed =
        int(std::ceil(out_half_width + phi.half_width)) + 1;
    if (p_needed > max_terms)
        throw budget_error("build_phi_minus_delta: series budget exhausted");

    std::vector<double> gamma(std::size_t(p_needed) + 1);
    gamma[0] = 1.0;
    for (int p = 0; p < p_needed; ++p)
        gamma[std::size_t(p) + 1] =
            gamma[std::size_t(p)] * (double(p) + delta) / (double(p) + 1.0);

    // dropped terms start at p = R_src - R_out; bound them by the certified
    // phi tail integral times the largest gamma they can meet
    const int p_drop = std::max(1, int(phi.half_width - out_half_width));
    const double phi_tail_mass =
        phi.tail_c * std::pow(3.0 + phi.half_width, 1.0 - phi.tail_L) /
        std::max(phi.tail_L - 1.0, 1.0);
    const double tail_est = gamma[std::size_t(std::min(p_drop, p_needed))] *
                            phi_tail_mass;
    if (tail_est > tol)
        throw budget_error("build_phi_minus_delta: requested tolerance "
                           "unreachable with allowed series length");

    FunctionTable t;
    t.half_width = out_half_width;
    t.dx = phi.dx;
    const std::int64_t half_n =
        std::int64_t(std::llround(out_half_width / phi.dx));
    t.samples.assign(std::size_t(2 * half_n + 1), 0.0);
    const std::int64_t per_unit = std::int64_t(std::llround(1.0 / phi.dx));
    const std::int64_t offset =
        std::int64_t(std::llround((phi.half_width - out_half_width) / phi.dx));
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        double s = 0.0;
        // phi(x + p) is a pure index shift because 1/dx is an integer
        for (int p = 0; p <= p_needed; ++p) {
            const std::size_t j = std::size_t(offset) + i +
                                  std::size_t(p) * std::size_t(per_unit);
            if (j >= phi.samples.size()) break;
            s += gamma[std::size_t(p)] * phi.samples[j];
        }
        t.samples[i] = s;
    }
    detail::build_cumulative(t);
    detail::record_interp_bound(t);
    // measured decay: envelope slope between two outer windows
    const std::size_t n = t.samples.size();
    auto window_max = [&](double lo, double hi) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ax = std::abs(t.x_of(i));
            if (ax >= lo && ax <= hi) m = std::max(m, std::abs(t.samples[i]));
        }
        return m;
    };
    const double R = t.half_width;
    const double m_far = window_max(0.9 * R, R) + 1e-300;
    const double m_mid = window_max(0.55 * R, 0.65 * R) + 1e-300;
    double L = std::log(m_mid / m_far) /
               std::log((3.0 + 0.95 * R) / (3.0 + 0.6 * R));
    L = std::clamp(L, 0.0, 16.0);
    t.tail_L = L;
    detail::fit_tail(t, L);
    return t;
}

/// Direct Fourier-route evaluation of Phi^{(-delta)} at one point
/// (cross-check oracle for the series construction).
inline double phi_minus_delta_fourier_route(double x, double delta) {
    const double S = 4.0 * std::numbers::pi / 3.0;
    // integrand: (1 - e^{i xi})^{-delta} phi_hat(xi) e^{i x xi}; the real part
    // is even in xi up to conjugation, so integrate |xi| in (0, S] and double.
    auto g = [&](double xi) {
        const std::complex<double> v =
            one_minus_exp_power(xi, -delta) * meyer_scaling_fourier_real(xi) *
            std::polar(1.0, x * xi);
        return v.real();
    };
    // algebraic singularity |xi|^{-delta} at 0, one side at a time
    double total = 0.0;
    const GaussRule& r = gauss_rule(16);
    for (int side = 0; side < 2; ++side) {
        const double sgn = (side == 0) ? 1.0 : -1.0;
        auto h = [&](double u) { return g(sgn * u); };
        double hi = S;
        for (int m = 0; m < 46; ++m) {
            const double lo = 0.5 * hi;
            const int sub = 1 + int((hi - lo) * (std::abs(x) + 4.0) / 3.0);
            for (int q = 0; q < sub; ++q)
                total += gauss_panel(h, lo + (hi - lo) * q / sub,
                                     lo + (hi - lo) * (q + 1) / sub, r);
            hi = lo;
        }
        // sliver: h(u) ~ u^{-delta} * c0
        const double probe = 0.5 * hi;
        const double c0 = h(probe) * std::pow(probe, delta);
        total += c0 * std::pow(hi, 1.0 - delta) / (1.0 - delta);
    }
    return inv_sqrt_2pi * total;
}

// ---------------------------------------------------------------------------
// Binary and CSV table I/O (binary round-trips bit-exactly)
// ---------------------------------------------------------------------------

inline void dump_table_binary(const FunctionTable& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for write: " + path);
    const char magic[8] = {'H', 'W', 'T', 'B', '0', '0', '0', '1'};
    os.write(magic, 8);
    auto put_d = [&](double v) { os.write(reinterpret_cast<const char*>(&v), 8); };
    auto put_u = [&](std::uint64_t v) {
        os.write(reinterpret_cast<const char*>(&v), 8);
    };
    put_d(t.half_width);
    put_d(t.dx);
    put_d(t.tail_L);
    put_d(t.tail_c);
    put_u(std::uint64_t(t.interpolation_order));
    put_d(t.interp_error_bound);
    put_u(t.samples.size());
    os.write(reinterpret_cast<const char*>(t.samples.data()),
             std::streamsize(t.samples.size() * 8));
    if (!os) throw config_error("write failed: " + path);
}

inline FunctionTable load_table_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open for read: " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, "HWTB0001", 8) != 0)
        throw config_error("bad table file: " + path);
    FunctionTable t;
    auto get_d = [&](double& v) { is.read(reinterpret_cast<char*>(&v), 8); };
    std::uint64_t u = 0;
    get_d(t.half_width);
    get_d(t.dx);
    get_d(t.tail_L);
    get_d(t.tail_c);
    is.read(reinterpret_cast<char*>(&u), 8);
    t.interpolation_order = int(u);
    get_d(t.interp_error_bound);
    is.read(reinterpret_cast<char*>(&u), 8);
    t.samples.resize(u);
    is.read(reinterpret_cast<char*>(t.samples.data()), std::streamsize(u * 8));
    if (!is) throw config_error("truncated table file: " + path);
    detail::build_cumulative(t);
    return t;
}

inline void dump_table_csv(const FunctionTable& t, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw config_error("cannot open for write: " + path);
    char line[256];
    os << "R,dx,L,c,interpolation_order\n";
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%d\n",
                  t.half_width, t.dx, t.tail_L, t.tail_c,
                  t.interpolation_order);
    os << line;
    os << "x,value\n";
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", t.x_of(i),
                      t.samples[i]);
        os << line;
    }
}

// ---------------------------------------------------------------------------
// Table cache (per process, plus optional on-disk cache via HERMWAVE_CACHE)
// ---------------------------------------------------------------------------

enum class TableKind { scaling, wavelet, frac_primitive, frac_scaling, phi_minus };

inline std::shared_ptr<const FunctionTable> get_table(TableKind kind,
                                                      double param = 0.0,
                                                      const TableSpec& spec = {}) {
    struct Key {
        int kind;
        std::uint64_t param_bits, hw_bits, dx_bits, period_bits;
        auto operator<=>(const Key&) const = default;
    };
    auto bits = [](double v) {
        std::uint64_t b;
        std::memcpy(&b, &v, 8);
        return b;
    };
    const Key key{int(kind), bits(param), bits(spec.half_width), bits(spec.dx),
                  bits(spec.period)};

    static std::map<Key, std::shared_ptr<const FunctionTable>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    std::string disk_path;
    if (const char* dir = std::getenv("HERMWAVE_CACHE")) {
        char name[160];
        std::snprintf(name, sizeof name,
                      "hw1_k%d_p%016llx_r%016llx_d%016llx_l%016llx.tbl",
                      int(kind), (unsigned long long)bits(param),
                      (unsigned long long)bits(spec.half_width),
                      (unsigned long long)bits(spec.dx),
                      (unsigned long long)bits(spec.period));
        disk_path = std::string(dir) + "/" + name;
        std::error_code ec;
        if (std::filesystem::exists(disk_path, ec)) {
            auto t = std::make_shared<FunctionTable>(load_table_binary(disk_path));
            std::lock_guard<std::mutex> lk(mu);
            cache[key] = t;
            return t;
        }
    }

    std::shared_ptr<FunctionTable> t;
    switch (kind) {
        case TableKind::scaling:
            t = std::make_shared<FunctionTable>(build_scaling_table(spec));
            break;
        case TableKind::wavelet:
            t = std::make_shared<FunctionTable>(build_wavelet_table(spec));
            break;
        case TableKind::frac_primitive:
            t = std::make_shared<FunctionTable>(
                build_fractional_primitive(param, spec));
            break;
        case TableKind::frac_scaling:
            t = std::make_shared<FunctionTable>(
                build_fractional_scaling(param, spec));
            break;
        case TableKind::phi_minus: {
            TableSpec wide = spec;
            wide.half_width = std::max(4.0 * spec.half_width, 128.0);
            auto phi = get_table(TableKind::scaling, 0.0, wide);
            t = std::make_shared<FunctionTable>(
                build_phi_minus_delta(*phi, param, spec.half_width));
            break;
        }
    }
    if (!disk_path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(
            std::filesystem::path(disk_path).parent_path(), ec);
        try {
            dump_table_binary(*t, disk_path + ".tmp");
            std::filesystem::rename(disk_path + ".tmp", disk_path, ec);
        } catch (...) {
            // cache writes are best-effort
        }
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[key] = t;
    return t;
}

}  // namespace hermwave

#endif
