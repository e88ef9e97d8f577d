// SPDX-License-Identifier: Apache-2.0
//
// Sample-path assembly for generalized Hermite processes of order d:
//   - scaling-function (approximation) paths at a dyadic level J, directly or
//     through the Abel-transformed random-walk form,
//   - truncated full wavelet-series paths over the dyadic index boxes
//     S_N^+ / S_N^-,
//   - the d = 1 Gaussian specialization driven by FARIMA random walks,
//   - level-set detail increments X_{J+1} - X_J used by rate measurements.

#ifndef HERMWAVE_PROCESS_HPP
#define HERMWAVE_PROCESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "hermwave/chaos.hpp"
#include "hermwave/errors.hpp"
#include "hermwave/farima.hpp"
#include "hermwave/meyer.hpp"
#include "hermwave/parallel.hpp"
#include "hermwave/quadrature.hpp"
#include "hermwave/random.hpp"

namespace hermwave {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Hurst vectors
// ---------------------------------------------------------------------------

// Admissible parameter: every h_l in (1/2, 1) and sum h_l > d - 1/2. The
// derived exponent H = sum h_l - d + 1 then lies in (1/2, 1).
struct HurstVector {
    std::vector<double> h;

    int order() const { return int(h.size()); }
    double sum() const {
        double s = 0.0;
        for (double v : h) s += v;
        return s;
    }
    double self_similarity() const { return sum() - double(order()) + 1.0; }

    void validate() const {
        if (h.empty()) throw config_error("hurst vector must be non-empty");
        for (double v : h)
            if (!(v > 0.5 && v < 1.0))
                throw config_error(
                    "inadmissible hurst vector: every component must lie in "
                    "(1/2, 1) and their sum must exceed d - 1/2");
        if (!(sum() > double(order()) - 0.5))
            throw config_error(
                "inadmissible hurst vector: every component must lie in "
                "(1/2, 1) and their sum must exceed d - 1/2");
    }
};

inline double self_similarity_exponent(const HurstVector& h) {
    h.validate();
    return h.self_similarity();
}

// ---------------------------------------------------------------------------
// Sample paths
// ---------------------------------------------------------------------------

struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
    json meta;
};

inline std::vector<double> uniform_grid(double T, int grid_n) {
    std::vector<double> t(std::size_t(grid_n) + 1);
    for (int i = 0; i <= grid_n; ++i) t[std::size_t(i)] = T * double(i) / grid_n;
    return t;
}

inline double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// ---------------------------------------------------------------------------
// Kernel oracle
// ---------------------------------------------------------------------------

// K_h^{(d)}(t, x) = (prod_l Gamma(h_l - 1/2))^{-1} Int_0^t prod_l (s-x_l)_+^{h_l-3/2} ds.
// Only the largest x_l can sit inside the integration range, so the mesh is
// graded toward it. Ties at the maximum make the integral diverge.
inline double kernel_oracle(const HurstVector& hv, double t,
                            const std::vector<double>& x, int nodes = 16) {
    hv.validate();
    const int d = hv.order();
    if (int(x.size()) != d) throw config_error("kernel_oracle: |x| != d");
    if (t <= 0.0) return 0.0;

    int arg_max = 0;
    for (int l = 1; l < d; ++l)
        if (x[std::size_t(l)] > x[std::size_t(arg_max)]) arg_max = l;
    const double s0 = x[std::size_t(arg_max)];
    if (s0 >= t) return 0.0;
    for (int l = 0; l < d; ++l)
        if (l != arg_max && x[std::size_t(l)] == s0)
            throw config_error("kernel_oracle: tied maxima diverge");

    double pref = 1.0;
    for (double hl : hv.h) pref /= std::tgamma(hl - 0.5);

    auto rest = [&](double s) {
        double p = 1.0;
        for (int l = 0; l < d; ++l) {
            if (l == arg_max) continue;
            p *= std::pow(s - x[std::size_t(l)], hv.h[std::size_t(l)] - 1.5);
        }
        return p;
    };
    const double alpha = hv.h[std::size_t(arg_max)] - 1.5;
    if (s0 >= 0.0)
        return pref * graded_endpoint_integral(rest, s0, t, alpha, nodes);
    // singularity below the range: integrand smooth on [0, t]
    auto f = [&](double s) {
        return std::pow(s - s0, alpha) * rest(s);
    };
    return pref * gauss_composite(f, 0.0, t, 64, nodes);
}

// ---------------------------------------------------------------------------
// Quadrature policy for path assembly
// ---------------------------------------------------------------------------

// Panels are sized against the sum of the axis scales: a product of d
// band-limited factors oscillates with the sum of their bandwidths, and
// 12-node Gauss on one combined unit keeps the phase error near 1e-10.
struct QuadPolicy {
    double panel_units = 1.0;        // panel length, combined-scale units
    int nodes = 12;                  // GL nodes per panel
    double coarse_threshold = 1.0 / 64;  // 2^{jmax} T below: per-cell 2 nodes
    double linear_threshold = 0x1p-12;   // 2^{jmax} T below: global linear fit
    double budget_ops = 4e10;
};

namespace detail {

// Adds  w * Int_{cell_i} F(u) du  into inc[i] for every grid cell of [0, T]
// that meets [u_lo, u_hi]; F is smooth with features no finer than
// `unit_scale` in u (panels are sized against it).
template <typename F>
void accumulate_cells(const F& f, double w, double u_lo, double u_hi, double T,
                      int grid_n, double unit_scale, const QuadPolicy& q,
                      std::vector<double>& inc) {
    u_lo = std::max(u_lo, 0.0);
    u_hi = std::min(u_hi, T);
    if (u_hi <= u_lo) return;
    const double cell = T / grid_n;
    const int i_lo = std::max(0, int(std::floor(u_lo / cell)));
    const int i_hi = std::min(grid_n - 1, int(std::floor(u_hi / cell * (1.0 - 1e-15))));
    const GaussRule& r = gauss_rule(q.nodes);
    for (int i = i_lo; i <= i_hi; ++i) {
        const double a = std::max(u_lo, i * cell);
        const double b = std::min(u_hi, (i + 1) * cell);
        if (b <= a) continue;
        const int sub = std::max(1, int(std::ceil((b - a) * unit_scale / q.panel_units)));
        double s = 0.0;
        for (int p = 0; p < sub; ++p)
            s += gauss_panel(f, a + (b - a) * p / sub, a + (b - a) * (p + 1) / sub, r);
        inc[std::size_t(i)] += w * s;
    }
}

inline std::vector<double> cumulative_from_cells(const std::vector<double>& inc,
                                                 int grid_n) {
    std::vector<double> out(std::size_t(grid_n) + 1, 0.0);
    for (int i = 0; i < grid_n; ++i)
        out[std::size_t(i + 1)] = out[std::size_t(i)] + inc[std::size_t(i)];
    return out;
}

// Generalized FARIMA window: per-axis FARIMA values on [lo, hi] plus exact
// covariances for the in-window lags, combined by the pair-partition formula.
struct SigmaEngine {
    std::int64_t lo = 0, hi = 0;
    int d = 0;
    std::int64_t max_lag = 0;
    std::vector<std::vector<double>> z;    // per axis
    std::vector<std::vector<double>> cov;  // per (a,b), index lag + max_lag

    SigmaEngine(const GaussianField& field, std::int64_t level,
                const HurstVector& hv, std::int64_t lo_, std::int64_t hi_,
                std::int64_t max_lag_, std::int64_t P)
        : lo(lo_), hi(hi_), d(hv.order()), max_lag(max_lag_) {
        if (d > kMaxPartitionOrder)
            throw budget_error("sigma window: order capped at 6 by the "
                               "partition route");
        z.reserve(std::size_t(d));
        for (int a = 0; a < d; ++a)
            z.push_back(farima_sequence(field, level, hv.h[std::size_t(a)] - 0.5,
                                        lo, hi, P));
        cov.assign(std::size_t(d * d), {});
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                auto& c = cov[std::size_t(a * d + b)];
                c.resize(std::size_t(2 * max_lag + 1));
                for (std::int64_t l = -max_lag; l <= max_lag; ++l)
                    c[std::size_t(l + max_lag)] = farima_covariance_cached(
                        hv.h[std::size_t(a)] - 0.5, hv.h[std::size_t(b)] - 0.5, l);
            }
    }

    double zval(int axis, std::int64_t k) const {
        return z[std::size_t(axis)][std::size_t(k - lo)];
    }
    double covval(int a, int b, std::int64_t lag) const {
        return cov[std::size_t(a * d + b)][std::size_t(lag + max_lag)];
    }

    double sigma(const std::vector<std::int64_t>& k) const {
        static const std::vector<std::vector<PairPartition>>& parts_cache =
            all_partitions();
        const auto& parts = parts_cache[std::size_t(d)];
        double total = 0.0;
        for (const PairPartition& part : parts) {
            double term = (part.pairs.size() % 2 == 0) ? 1.0 : -1.0;
            for (const auto& [a, b] : part.pairs)
                term *= covval(a, b, k[std::size_t(a)] - k[std::size_t(b)]);
            for (int s : part.singletons) term *= zval(s, k[std::size_t(s)]);
            total += term;
        }
        return total;
    }

    static const std::vector<std::vector<PairPartition>>& all_partitions() {
        static const std::vector<std::vector<PairPartition>> cache = [] {
            std::vector<std::vector<PairPartition>> c(kMaxPartitionOrder + 1);
            for (int n = 1; n <= kMaxPartitionOrder; ++n) {
                std::vector<int> ground(std::size_t(n), {});
                for (int i = 0; i < n; ++i) ground[std::size_t(i)] = i;
                for (int m = 0; 2 * m <= n; ++m) {
                    auto ps = pair_partitions(ground, m);
                    c[std::size_t(n)].insert(c[std::size_t(n)].end(), ps.begin(),
                                             ps.end());
                }
            }
            return c;
        }();
        return cache;
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Approximation path (direct window sum)
// ---------------------------------------------------------------------------

struct ApproxParams {
    int J = 5;
    double T = 1.0;
    int grid_n = 256;
    int band_B = 16;                  // relative-offset band |k_l - k_1| <= B
    std::int64_t q_lo = 0, q_hi = -1; // k_1 range; default covers [-B, 2^J T + B]
    std::int64_t P = 1 << 16;         // FARIMA truncation
    QuadPolicy quad;

    void fill_defaults(double /*T_unused*/) {
        if (q_hi < q_lo) {
            q_lo = -band_B;
            q_hi = std::int64_t(std::ceil(std::ldexp(T, J))) + band_B;
        }
    }
};

// X_{h,J}(t) = 2^{-J(sum h - d)} sum_k sigma_{J,k} Int_0^t prod_l
// PhiDelta^{(h_l-1/2)}(2^J u - k_l) du  over the window
// {k : k_1 in [q_lo, q_hi], |k_l - k_1| <= B}.
inline SamplePath approx_path(const GaussianField& field, const HurstVector& hv,
                              ApproxParams prm) {
    hv.validate();
    if (prm.band_B < 1) throw config_error("approx_path: band B must be >= 1");
    if (prm.grid_n < 1) throw config_error("approx_path: grid_n must be >= 1");
    prm.fill_defaults(prm.T);
    const int d = hv.order();
    const double scale = std::ldexp(1.0, prm.J);

    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : hv.h)
        tab.push_back(get_table(TableKind::frac_scaling, hl - 0.5));
    const double R = tab[0]->half_width;

    detail::SigmaEngine sig(field, prm.J, hv, prm.q_lo - prm.band_B,
                            prm.q_hi + prm.band_B, 2 * prm.band_B, prm.P);

    const std::int64_t n_q = prm.q_hi - prm.q_lo + 1;
    std::int64_t n_band = 1;
    for (int l = 1; l < d; ++l) {
        n_band *= (2 * std::int64_t(prm.band_B) + 1);
        if (n_band > std::int64_t(1) << 40)
            throw budget_error("approx_path: band window too large");
    }
    if (double(n_q) * double(n_band) * 64.0 * double(prm.grid_n) >
        prm.quad.budget_ops)
        throw budget_error("approx_path: window exceeds operation budget");

    const int d_off = d - 1;
    auto path_of_shell = [&](bool outer_only) {
        std::vector<std::vector<double>> chunk_inc(
            64, std::vector<double>());
        for_chunks(std::size_t(n_q), 64, [&](std::size_t c, std::size_t qb,
                                             std::size_t qe) {
            std::vector<double> inc(std::size_t(prm.grid_n), 0.0);
            std::vector<std::int64_t> k(std::size_t(d), {});
            std::vector<std::int64_t> n_off(std::size_t(d_off), -prm.band_B);
            for (std::size_t qi = qb; qi < qe; ++qi) {
                const std::int64_t k1 = prm.q_lo + std::int64_t(qi);
                k[0] = k1;
                // odometer over the offset band
                std::fill(n_off.begin(), n_off.end(), -std::int64_t(prm.band_B));
                for (;;) {
                    std::int64_t max_abs_off = 0;
                    for (int l = 0; l < d_off; ++l) {
                        k[std::size_t(l + 1)] = k1 + n_off[std::size_t(l)];
                        max_abs_off =
                            std::max<std::int64_t>(max_abs_off, std::llabs(n_off[std::size_t(l)]));
                    }
                    if (!outer_only || max_abs_off == prm.band_B) {
                        // support of the integrand in u
                        double v_lo = -1e300, v_hi = 1e300;
                        for (int l = 0; l < d; ++l) {
                            v_lo = std::max(v_lo, double(k[std::size_t(l)]) - R);
                            v_hi = std::min(v_hi, double(k[std::size_t(l)]) + R);
                        }
                        if (v_hi > v_lo) {
                            const double s = sig.sigma(k);
                            auto f = [&](double u) {
                                double p = 1.0;
                                for (int l = 0; l < d; ++l)
                                    p *= tab[std::size_t(l)]->eval(
                                        scale * u - double(k[std::size_t(l)]));
                                return p;
                            };
                            detail::accumulate_cells(
                                f, s, v_lo / scale, v_hi / scale, prm.T,
                                prm.grid_n, scale * double(d), prm.quad, inc);
                        }
                    }
                    // advance offsets
                    int ax = d_off - 1;
                    while (ax >= 0 && n_off[std::size_t(ax)] == prm.band_B) {
                        n_off[std::size_t(ax)] = -prm.band_B;
                        --ax;
                    }
                    if (ax < 0) break;
                    ++n_off[std::size_t(ax)];
                }
            }
            chunk_inc[c] = std::move(inc);
        });
        std::vector<double> inc(std::size_t(prm.grid_n), 0.0);
        for (const auto& ci : chunk_inc)
            for (std::size_t i = 0; i < ci.size(); ++i) inc[i] += ci[i];
        return detail::cumulative_from_cells(inc, prm.grid_n);
    };

    const double pref = std::pow(2.0, -double(prm.J) * (hv.sum() - double(d)));
    SamplePath out;
    out.times = uniform_grid(prm.T, prm.grid_n);
    out.values = path_of_shell(false);
    for (double& v : out.values) v *= pref;

    // band-adequacy check: contribution of the outermost offset shell
    double shell_sup = 0.0;
    if (d > 1) {
        auto shell = path_of_shell(true);
        for (double& v : shell) v *= pref;
        shell_sup = sup_norm(shell);
    }
    const double path_sup = sup_norm(out.values);
    const bool band_warning =
        d > 1 && path_sup > 0.0 && shell_sup > 1e-3 * path_sup;

    out.meta = {
        {"representation", "approx-J"},
        {"seed", field.seed()},
        {"h", hv.h},
        {"d", d},
        {"J", prm.J},
        {"T", prm.T},
        {"grid_n", prm.grid_n},
        {"band_B", prm.band_B},
        {"q_lo", prm.q_lo},
        {"q_hi", prm.q_hi},
        {"P", prm.P},
        {"sigma_route", "farima-partition"},
        {"band_shell_sup", shell_sup},
        {"band_warning", band_warning},
    };
    return out;
}

// ---------------------------------------------------------------------------
// Abel-transformed approximation path
// ---------------------------------------------------------------------------

namespace detail {

// Cumulative integral of prod_l PhiDelta^{(h_l - 1/2)}(v - n_{l-1}) on a fine
// v-grid (n_0 = 0); the window integral over [y-1, y] is a two-point lookup.
struct TiltedWindowTable {
    double v0 = 0.0, dv = 0.0;
    std::vector<double> cum;

    double cumulative(double v) const {
        if (cum.empty()) return 0.0;
        const double last = cum.back();
        if (v <= v0) return 0.0;
        const double u = (v - v0) / dv;
        if (u >= double(cum.size() - 1)) return last;
        std::int64_t i = std::int64_t(std::floor(u));
        i = std::clamp<std::int64_t>(i, 1, std::int64_t(cum.size()) - 3);
        const double t = u - double(i);
        const double s0 = cum[std::size_t(i - 1)], s1 = cum[std::size_t(i)],
                     s2 = cum[std::size_t(i + 1)], s3 = cum[std::size_t(i + 2)];
        return s1 + 0.5 * t * (s2 - s0 +
                               t * (2 * s0 - 5 * s1 + 4 * s2 - s3 +
                                    t * (3 * (s1 - s2) + s3 - s0)));
    }

    /// Int_{y-1}^{y} prod(v) dv
    double window(double y) const { return cumulative(y) - cumulative(y - 1.0); }
};

inline TiltedWindowTable build_tilted_window(
    const std::vector<std::shared_ptr<const FunctionTable>>& tab,
    const std::vector<std::int64_t>& n_off) {
    const double R = tab[0]->half_width;
    double v_lo = -R, v_hi = R;
    for (std::size_t l = 0; l < n_off.size(); ++l) {
        v_lo = std::max(v_lo, double(n_off[l]) - R);
        v_hi = std::min(v_hi, double(n_off[l]) + R);
    }
    TiltedWindowTable w;
    if (v_hi <= v_lo) return w;
    w.dv = 1.0 / 16.0;
    w.v0 = v_lo - w.dv;
    const std::size_t cells = std::size_t(std::ceil((v_hi - v_lo) / w.dv)) + 2;
    w.cum.assign(cells + 1, 0.0);
    const GaussRule& r = gauss_rule(6);
    auto f = [&](double v) {
        double p = tab[0]->eval(v);
        for (std::size_t l = 0; l < n_off.size(); ++l)
            p *= tab[l + 1]->eval(v - double(n_off[l]));
        return p;
    };
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = w.v0 + double(i) * w.dv;
        w.cum[i + 1] = w.cum[i] + gauss_panel(f, a, a + w.dv, r);
    }
    return w;
}

}  // namespace detail

// Same window as approx_path, reorganized through the Abel transform:
// X(t) = 2^{-J(sum h + 1 - d)} sum_n sum_q S_{J,q,n} (W_n(2^J t - q) - W_n(-q)),
// where S_{J,q,n} are partial sums of sigma along the diagonal k = (p, p + n)
// and W_n integrates the tilted product over a unit window.
inline SamplePath abel_path(const GaussianField& field, const HurstVector& hv,
                            ApproxParams prm) {
    hv.validate();
    prm.fill_defaults(prm.T);
    const int d = hv.order();
    const double scale = std::ldexp(1.0, prm.J);

    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : hv.h)
        tab.push_back(get_table(TableKind::frac_scaling, hl - 0.5));

    detail::SigmaEngine sig(field, prm.J, hv, prm.q_lo - prm.band_B,
                            prm.q_hi + prm.band_B, 2 * prm.band_B, prm.P);

    SamplePath out;
    out.times = uniform_grid(prm.T, prm.grid_n);
    out.values.assign(out.times.size(), 0.0);

    const int d_off = d - 1;
    std::vector<std::int64_t> n_off(std::size_t(d_off), -prm.band_B);
    std::vector<std::int64_t> k(std::size_t(d), {});
    for (;;) {
        detail::TiltedWindowTable w = detail::build_tilted_window(tab, n_off);
        if (!w.cum.empty()) {
            // random-walk partial sums S(q), S(0) = 0
            const std::int64_t q_lo = prm.q_lo, q_hi = prm.q_hi;
            std::vector<double> S(std::size_t(q_hi - q_lo + 1), 0.0);
            auto sigma_at = [&](std::int64_t p) {
                k[0] = p;
                for (int l = 0; l < d_off; ++l)
                    k[std::size_t(l + 1)] = p + n_off[std::size_t(l)];
                return sig.sigma(k);
            };
            if (q_hi > 0) {
                double acc = 0.0;
                for (std::int64_t q = 1; q <= q_hi; ++q) {
                    acc += sigma_at(q);
                    if (q >= q_lo) S[std::size_t(q - q_lo)] = acc;
                }
            }
            if (q_lo < 0) {
                double acc = 0.0;
                for (std::int64_t q = 0; q >= q_lo + 1; --q) {
                    acc -= sigma_at(q);
                    if (q - 1 <= q_hi) S[std::size_t(q - 1 - q_lo)] = acc;
                }
            }
            for (std::size_t i = 0; i < out.times.size(); ++i) {
                const double y = scale * out.times[i];
                double s = 0.0;
                for (std::int64_t q = q_lo; q <= q_hi; ++q)
                    s += S[std::size_t(q - q_lo)] *
                         (w.window(y - double(q)) - w.window(-double(q)));
                out.values[i] += s;
            }
        }
        int ax = d_off - 1;
        while (ax >= 0 && n_off[std::size_t(ax)] == prm.band_B) {
            n_off[std::size_t(ax)] = -prm.band_B;
            --ax;
        }
        if (ax < 0) break;
        ++n_off[std::size_t(ax)];
    }

    const double pref =
        std::pow(2.0, -double(prm.J) * (hv.sum() + 1.0 - double(d)));
    for (double& v : out.values) v *= pref;
    out.meta = {
        {"representation", "abel-J"},  {"seed", field.seed()},
        {"h", hv.h},                   {"d", d},
        {"J", prm.J},                  {"T", prm.T},
        {"grid_n", prm.grid_n},        {"band_B", prm.band_B},
        {"q_lo", prm.q_lo},            {"q_hi", prm.q_hi},
        {"P", prm.P},                  {"sigma_route", "farima-partition"},
    };
    return out;
}

// ---------------------------------------------------------------------------
// FBM path (d = 1 low-frequency part)
// ---------------------------------------------------------------------------

struct FbmParams {
    int J = 6;
    double T = 1.0;
    int grid_n = 256;
    std::int64_t P = 1 << 16;
};

// B_{h,J}(t) = sum_k 2^{-J h} S_{J,k} (PhiDelta^{(h+1/2)}(2^J t - k)
//                                      - PhiDelta^{(h+1/2)}(-k)),
// with S_{J,k} the running sums of the FARIMA(0, h-1/2, 0) sequence.
inline SamplePath fbm_path(const GaussianField& field, double h, FbmParams prm) {
    if (!(h > 0.5 && h < 1.0))
        throw config_error("fbm_path: h must lie in (1/2, 1)");
    auto tab = get_table(TableKind::frac_scaling, h + 0.5);
    const double R = tab->half_width;
    const double scale = std::ldexp(1.0, prm.J);
    const std::int64_t k_lo = -std::int64_t(std::ceil(R)) - 1;
    const std::int64_t k_hi =
        std::int64_t(std::ceil(scale * prm.T + R)) + 1;

    const std::vector<double> z =
        farima_sequence(field, prm.J, h - 0.5, k_lo, k_hi, prm.P);
    std::vector<double> S(z.size(), 0.0);
    {
        double acc = 0.0;
        for (std::int64_t q = 1; q <= k_hi; ++q) {
            acc += z[std::size_t(q - k_lo)];
            S[std::size_t(q - k_lo)] = acc;
        }
        acc = 0.0;
        for (std::int64_t q = 0; q > k_lo; --q) {
            acc -= z[std::size_t(q - k_lo)];
            S[std::size_t(q - 1 - k_lo)] = acc;
        }
    }

    SamplePath out;
    out.times = uniform_grid(prm.T, prm.grid_n);
    out.values.assign(out.times.size(), 0.0);
    const double pref = std::pow(2.0, -double(prm.J) * h);
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        const double y = scale * out.times[i];
        double s = 0.0;
        for (std::int64_t kk = k_lo; kk <= k_hi; ++kk)
            s += S[std::size_t(kk - k_lo)] *
                 (tab->eval(y - double(kk)) - tab->eval(-double(kk)));
        out.values[i] = pref * s;
    }
    out.meta = {
        {"representation", "fbm-J"}, {"seed", field.seed()},
        {"h", std::vector<double>{h}}, {"d", 1},
        {"J", prm.J},                {"T", prm.T},
        {"grid_n", prm.grid_n},      {"P", prm.P},
        {"k_lo", k_lo},              {"k_hi", k_hi},
    };
    return out;
}

/// High-frequency remainder of the d = 1 representation over scales
/// J <= j <= j_hi, evaluated at the given times.
inline std::vector<double> fbm_detail_part(const GaussianField& field, double h,
                                           int J, int j_hi,
                                           const std::vector<double>& times) {
    auto tab = get_table(TableKind::frac_primitive, h + 1.0);
    const double R = tab->half_width;
    std::vector<double> out(times.size(), 0.0);
    double t_max = 0.0;
    for (double t : times) t_max = std::max(t_max, t);
    for (int j = J; j <= j_hi; ++j) {
        const double scale = std::ldexp(1.0, j);
        const double pref = std::pow(2.0, -double(j) * h);
        const std::int64_t k_lo = -std::int64_t(std::ceil(R)) - 1;
        const std::int64_t k_hi = std::int64_t(std::ceil(scale * t_max + R)) + 1;
        for (std::int64_t kk = k_lo; kk <= k_hi; ++kk) {
            const double g = field.psi(j, kk);
            const double base = tab->eval(-double(kk));
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double v = tab->eval(scale * times[i] - double(kk));
                if (v != 0.0 || base != 0.0)
                    out[i] += pref * g * (v - base);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Detail coefficients
// ---------------------------------------------------------------------------

/// K^{(d,h)}_{j,k}(t) = 2^{sum_l j_l (1 - h_l)} Int_0^t prod_l
/// psi_{h_l}(2^{j_l} s - k_l) ds.
inline double detail_coefficient(const HurstVector& hv,
                                 const std::vector<std::int64_t>& j,
                                 const std::vector<std::int64_t>& k, double t,
                                 const QuadPolicy& q = {}) {
    hv.validate();
    const int d = hv.order();
    if (int(j.size()) != d || int(k.size()) != d)
        throw config_error("detail_coefficient: |j|, |k| must equal d");
    if (t <= 0.0) return 0.0;
    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : hv.h)
        tab.push_back(get_table(TableKind::frac_primitive, hl));
    const double R = tab[0]->half_width;

    double s_lo = 0.0, s_hi = t, pref = 1.0, scale_sum = 0.0;
    for (int l = 0; l < d; ++l) {
        const double sc = std::ldexp(1.0, int(j[std::size_t(l)]));
        s_lo = std::max(s_lo, (double(k[std::size_t(l)]) - R) / sc);
        s_hi = std::min(s_hi, (double(k[std::size_t(l)]) + R) / sc);
        pref *= std::pow(2.0, double(j[std::size_t(l)]) *
                                  (1.0 - hv.h[std::size_t(l)]));
        scale_sum += sc;
    }
    if (s_hi <= s_lo) return 0.0;
    auto f = [&](double s) {
        double p = 1.0;
        for (int l = 0; l < d; ++l)
            p *= tab[std::size_t(l)]->eval(
                std::ldexp(1.0, int(j[std::size_t(l)])) * s -
                double(k[std::size_t(l)]));
        return p;
    };
    const int panels = std::max(
        1, int(std::ceil((s_hi - s_lo) * std::max(scale_sum, 1.0) /
                         q.panel_units)));
    return pref * gauss_composite(f, s_lo, s_hi, panels, q.nodes);
}

}  // namespace hermwave

#endif
