// SPDX-License-Identifier: Apache-2.0
//
// Wavelet-series path assembly. Sums of the form
//   sum_{j in set} 2^{sum_l j_l (1 - h_l)} sum_k eps_{j,k}
//       Int_0^t prod_l psi_{h_l}(2^{j_l} s - k_l) ds
// are evaluated by grouping axes that share a scale: within one scale the
// k-sum of a Hermite-multiplicity product against per-axis weights collapses
// to a pair-partition combination of plain dot products (the same identity
// that rewrites the chaotic variables themselves), and distinct scales
// factorize. This turns the k-box sums into O(window) work per quadrature
// node instead of O(window^d).

#ifndef HERMWAVE_SERIES_HPP
#define HERMWAVE_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "hermwave/process.hpp"

namespace hermwave {

namespace detail {

/// Per-scale cache of the wavelet-field variates used by one path build.
class PsiFieldCache {
  public:
    explicit PsiFieldCache(const GaussianField& f) : field_(f) {}

    /// Pointer arithmetic view: g(level, k) = data[k - base].
    const double* ensure(std::int64_t level, std::int64_t lo, std::int64_t hi,
                         std::int64_t& base) {
        auto& e = levels_[level];
        if (e.values.empty() || lo < e.base ||
            hi >= e.base + std::int64_t(e.values.size())) {
            const std::int64_t nlo = e.values.empty() ? lo : std::min(lo, e.base);
            const std::int64_t nhi =
                e.values.empty()
                    ? hi
                    : std::max(hi, e.base + std::int64_t(e.values.size()) - 1);
            Entry ne;
            ne.base = nlo;
            ne.values.resize(std::size_t(nhi - nlo + 1));
            for (std::int64_t k = nlo; k <= nhi; ++k)
                ne.values[std::size_t(k - nlo)] = field_.psi(level, k);
            e = std::move(ne);
        }
        base = e.base;
        return e.values.data();
    }

  private:
    struct Entry {
        std::int64_t base = 0;
        std::vector<double> values;
    };
    const GaussianField& field_;
    std::map<std::int64_t, Entry> levels_;
};

struct SeriesStats {
    std::uint64_t tuples_full = 0;
    std::uint64_t tuples_coarse = 0;
    std::uint64_t tuples_linear = 0;
    std::uint64_t tuples_empty_support = 0;
    double index_count = 0.0;  // #(j,k) pairs covered, including implied zeros
};

// One scale-group evaluation context for a fixed j-tuple.
struct ScaleGroup {
    std::int64_t level = 0;
    double scale = 1.0;
    std::vector<int> axes;
    const double* g = nullptr;  // variates, index k - g_base
    std::int64_t g_base = 0;
    std::int64_t box_lo = 0, box_hi = 0;
};

// Evaluates sum_{k in box} eps * prod_a table_a(scale * s - k_a) at one s.
inline double eval_group_sum(
    const ScaleGroup& grp,
    const std::vector<std::shared_ptr<const FunctionTable>>& tab, double s,
    std::vector<double>& scratch) {
    const double R = tab[std::size_t(grp.axes[0])]->half_width;
    const double c = grp.scale * s;
    const std::int64_t w_lo =
        std::max(grp.box_lo, std::int64_t(std::ceil(c - R)));
    const std::int64_t w_hi =
        std::min(grp.box_hi, std::int64_t(std::floor(c + R)));
    if (w_hi < w_lo) return 0.0;
    const std::size_t nw = std::size_t(w_hi - w_lo + 1);
    const std::size_t na = grp.axes.size();
    scratch.assign(na * nw, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
        const FunctionTable& t = *tab[std::size_t(grp.axes[a])];
        for (std::size_t i = 0; i < nw; ++i)
            scratch[a * nw + i] = t.eval(c - double(w_lo + std::int64_t(i)));
    }
    const double* g = grp.g + (w_lo - grp.g_base);

    if (na == 1) {
        double u = 0.0;
        for (std::size_t i = 0; i < nw; ++i) u += g[i] * scratch[i];
        return u;
    }
    // dots u_a = <g, v_a>, c_ab = <v_a, v_b>; combine by pair partitions
    std::vector<double> u(na, 0.0), cab(na * na, 0.0);
    for (std::size_t a = 0; a < na; ++a) {
        double ua = 0.0;
        const double* va = &scratch[a * nw];
        for (std::size_t i = 0; i < nw; ++i) ua += g[i] * va[i];
        u[a] = ua;
        for (std::size_t b = a + 1; b < na; ++b) {
            const double* vb = &scratch[b * nw];
            double cc = 0.0;
            for (std::size_t i = 0; i < nw; ++i) cc += va[i] * vb[i];
            cab[a * na + b] = cab[b * na + a] = cc;
        }
    }
    const auto& parts = SigmaEngine::all_partitions()[na];
    double total = 0.0;
    for (const PairPartition& part : parts) {
        double term = (part.pairs.size() % 2 == 0) ? 1.0 : -1.0;
        for (const auto& [a, b] : part.pairs)
            term *= cab[std::size_t(a) * na + std::size_t(b)];
        for (int sgl : part.singletons) term *= u[std::size_t(sgl)];
        total += term;
    }
    return total;
}

// Full contracted contribution of one j-tuple: adds the per-cell increments
// of w(j) * Int prod-of-group-sums, or a global linear fit when every scale
// is far below the grid resolution.
inline void add_scale_tuple(const HurstVector& hv,
                            const std::vector<std::int64_t>& j,
                            std::int64_t box_lo, std::int64_t box_hi,
                            const std::vector<std::shared_ptr<const FunctionTable>>& tab,
                            PsiFieldCache& cache, double T, int grid_n,
                            const QuadPolicy& q, std::vector<double>& inc,
                            double& lin_acc, double& quad_acc,
                            SeriesStats& stats) {
    const int d = hv.order();
    double pref = 1.0;
    for (int l = 0; l < d; ++l)
        pref *= std::pow(2.0, double(j[std::size_t(l)]) *
                                  (1.0 - hv.h[std::size_t(l)]));

    // group axes sharing a scale
    std::vector<ScaleGroup> groups;
    for (int l = 0; l < d; ++l) {
        ScaleGroup* grp = nullptr;
        for (auto& g : groups)
            if (g.level == j[std::size_t(l)]) grp = &g;
        if (!grp) {
            groups.push_back({});
            grp = &groups.back();
            grp->level = j[std::size_t(l)];
            grp->scale = std::ldexp(1.0, int(j[std::size_t(l)]));
            grp->box_lo = box_lo;
            grp->box_hi = box_hi;
        }
        grp->axes.push_back(l);
    }

    // s-support: every group window must be non-empty somewhere in [0, T]
    double s_lo = 0.0, s_hi = T, s_max = 0.0, s_sum = 0.0;
    for (auto& g : groups) {
        const double R = tab[std::size_t(g.axes[0])]->half_width;
        s_lo = std::max(s_lo, (double(g.box_lo) - R) / g.scale);
        s_hi = std::min(s_hi, (double(g.box_hi) + R) / g.scale);
        s_max = std::max(s_max, g.scale);
        s_sum += g.scale * double(g.axes.size());
    }
    if (s_hi <= s_lo) {
        ++stats.tuples_empty_support;
        return;
    }
    for (auto& g : groups) {
        const double R = tab[std::size_t(g.axes[0])]->half_width;
        const std::int64_t lo = std::max(
            g.box_lo, std::int64_t(std::floor(g.scale * s_lo - R)) - 1);
        const std::int64_t hi = std::min(
            g.box_hi, std::int64_t(std::ceil(g.scale * s_hi + R)) + 1);
        g.g = cache.ensure(g.level, lo, hi, g.g_base);
    }

    thread_local std::vector<double> scratch;
    auto integrand = [&](double s) {
        double p = 1.0;
        for (const auto& g : groups) {
            p *= eval_group_sum(g, tab, s, scratch);
            if (p == 0.0) return 0.0;
        }
        return p;
    };

    const double x = s_max * T;
    if (x <= q.linear_threshold) {
        // all scales far below the grid: integrand is affine to O(x^2)
        ++stats.tuples_linear;
        const double s1 = T * 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
        const double s2 = T * 0.5 * (1.0 + 1.0 / std::sqrt(3.0));
        const double i1 = integrand(s1), i2 = integrand(s2);
        const double beta = (i2 - i1) / (s2 - s1);
        const double alpha = i1 - beta * s1;
        lin_acc += pref * alpha;
        quad_acc += pref * beta;
        return;
    }

    const double cell = T / grid_n;
    const int i_lo = std::max(0, int(std::floor(s_lo / cell)));
    const int i_hi = std::min(grid_n - 1, int(std::floor(s_hi / cell * (1.0 - 1e-15))));
    if (x <= q.coarse_threshold) {
        ++stats.tuples_coarse;
        const GaussRule& r2 = gauss_rule(2);
        for (int i = i_lo; i <= i_hi; ++i) {
            const double a = std::max(s_lo, i * cell);
            const double b = std::min(s_hi, (i + 1) * cell);
            if (b <= a) continue;
            inc[std::size_t(i)] += pref * gauss_panel(integrand, a, b, r2);
        }
        return;
    }

    ++stats.tuples_full;
    const GaussRule& r = gauss_rule(q.nodes);
    for (int i = i_lo; i <= i_hi; ++i) {
        const double a = std::max(s_lo, i * cell);
        const double b = std::min(s_hi, (i + 1) * cell);
        if (b <= a) continue;
        const int sub =
            std::max(1, int(std::ceil((b - a) * s_sum / q.panel_units)));
        double s = 0.0;
        for (int p = 0; p < sub; ++p)
            s += gauss_panel(integrand, a + (b - a) * p / sub,
                             a + (b - a) * (p + 1) / sub, r);
        inc[std::size_t(i)] += pref * s;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Truncated full-series path over the index boxes S_N^+ / S_N^-
// ---------------------------------------------------------------------------

struct FullSeriesParams {
    int N = 3;
    double T = 2.5;  // must exceed 2
    int grid_n = 160;
    double b = 1.0, b_prime = 1.0, g = 1.0;
    QuadPolicy quad;
};

// X~_N(t) = sum_{(j,k) in S_N^+ u S_N^-} eps_{j,k} K_{j,k}(t) with
//   S_N^+ : -2^{N b}  <= min j,  0 <= max j < N,  |k_l| <= 2^{N+1} T,
//   S_N^- : -2^{N b'} <= min j <= max j < 0,      |k_l| <= 2^{N g}.
inline SamplePath fullseries_path(const GaussianField& field,
                                  const HurstVector& hv, FullSeriesParams prm) {
    hv.validate();
    if (!(prm.T > 2.0))
        throw config_error("fullseries_path: T must exceed 2");
    if (prm.N < 1) throw config_error("fullseries_path: N must be >= 1");
    if (!(prm.b > 0.0 && prm.b_prime > 0.0 && prm.g > 0.0))
        throw config_error("fullseries_path: b, b', g must be positive");
    const int d = hv.order();

    const std::int64_t j_floor_plus =
        -std::int64_t(std::floor(std::pow(2.0, double(prm.N) * prm.b)));
    const std::int64_t j_floor_minus =
        -std::int64_t(std::floor(std::pow(2.0, double(prm.N) * prm.b_prime)));
    const std::int64_t j_floor = std::min(j_floor_plus, j_floor_minus);
    const std::int64_t j_top = prm.N - 1;
    const std::int64_t box_plus =
        std::int64_t(std::floor(std::ldexp(prm.T, prm.N + 1)));
    const std::int64_t box_minus =
        std::int64_t(std::floor(std::pow(2.0, double(prm.N) * prm.g)));

    const std::int64_t span = j_top - j_floor + 1;
    double tuple_count = 1.0;
    for (int l = 0; l < d; ++l) tuple_count *= double(span);
    if (tuple_count > 1e8)
        throw budget_error("fullseries_path: scale-tuple count exceeds budget");

    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : hv.h)
        tab.push_back(get_table(TableKind::frac_primitive, hl));

    const std::size_t n_tuples = std::size_t(tuple_count);
    const std::size_t n_chunks = 64;
    struct ChunkOut {
        std::vector<double> inc;
        double lin = 0.0, qua = 0.0;
        detail::SeriesStats stats;
    };
    std::vector<ChunkOut> chunks(n_chunks);

    for_chunks(n_tuples, n_chunks, [&](std::size_t c, std::size_t tb,
                                       std::size_t te) {
        ChunkOut& out = chunks[c];
        out.inc.assign(std::size_t(prm.grid_n), 0.0);
        detail::PsiFieldCache cache(field);
        std::vector<std::int64_t> j(std::size_t(d), {});
        for (std::size_t idx = tb; idx < te; ++idx) {
            std::size_t rem = idx;
            std::int64_t jmax = j_floor, jmin = j_top;
            for (int l = 0; l < d; ++l) {
                j[std::size_t(l)] = j_floor + std::int64_t(rem % std::size_t(span));
                rem /= std::size_t(span);
                jmax = std::max(jmax, j[std::size_t(l)]);
                jmin = std::min(jmin, j[std::size_t(l)]);
            }
            std::int64_t box;
            if (jmax >= 0) {
                if (jmin < j_floor_plus) continue;
                box = box_plus;
            } else {
                if (jmin < j_floor_minus) continue;
                box = box_minus;
            }
            double kc = 1.0;
            for (int l = 0; l < d; ++l) kc *= double(2 * box + 1);
            out.stats.index_count += kc;
            detail::add_scale_tuple(hv, j, -box, box, tab, cache, prm.T,
                                    prm.grid_n, prm.quad, out.inc, out.lin,
                                    out.qua, out.stats);
        }
    });

    std::vector<double> inc(std::size_t(prm.grid_n), 0.0);
    double lin = 0.0, qua = 0.0;
    detail::SeriesStats stats;
    for (const auto& ch : chunks) {
        for (std::size_t i = 0; i < ch.inc.size(); ++i) inc[i] += ch.inc[i];
        lin += ch.lin;
        qua += ch.qua;
        stats.tuples_full += ch.stats.tuples_full;
        stats.tuples_coarse += ch.stats.tuples_coarse;
        stats.tuples_linear += ch.stats.tuples_linear;
        stats.tuples_empty_support += ch.stats.tuples_empty_support;
        stats.index_count += ch.stats.index_count;
    }

    SamplePath out;
    out.times = uniform_grid(prm.T, prm.grid_n);
    out.values = detail::cumulative_from_cells(inc, prm.grid_n);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += lin * out.times[i] +
                         0.5 * qua * out.times[i] * out.times[i];

    out.meta = {
        {"representation", "fullseries-N"},
        {"seed", field.seed()},
        {"h", hv.h},
        {"d", d},
        {"N", prm.N},
        {"T", prm.T},
        {"grid_n", prm.grid_n},
        {"b", prm.b},
        {"b_prime", prm.b_prime},
        {"g", prm.g},
        {"index_count", stats.index_count},
        {"tuples_full", stats.tuples_full},
        {"tuples_coarse", stats.tuples_coarse},
        {"tuples_linear", stats.tuples_linear},
        {"tuples_empty_support", stats.tuples_empty_support},
        {"coarse_threshold", prm.quad.coarse_threshold},
        {"linear_threshold", prm.quad.linear_threshold},
    };
    return out;
}

// ---------------------------------------------------------------------------
// Level-set detail increment X_{J+1} - X_J
// ---------------------------------------------------------------------------

// The difference of consecutive approximation levels expands exactly over the
// scale tuples with max_l j_l = J (all levels share one wavelet field, which
// is what couples the approximations across J). Scales below j_floor are
// dropped; their weight decays like 2^{j_floor (1 - max h)}.
inline SamplePath detail_increment_path(const GaussianField& field,
                                        const HurstVector& hv, int J, double T,
                                        int grid_n,
                                        std::int64_t j_floor = -256,
                                        const QuadPolicy& quad = {}) {
    hv.validate();
    const int d = hv.order();
    if (j_floor > J) throw config_error("detail_increment_path: j_floor > J");

    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : hv.h)
        tab.push_back(get_table(TableKind::frac_primitive, hl));

    const std::int64_t span = std::int64_t(J) - j_floor + 1;
    double tuple_count = 1.0;
    for (int l = 0; l < d; ++l) tuple_count *= double(span);
    if (tuple_count > 1e8)
        throw budget_error("detail_increment_path: tuple count exceeds budget");
    const std::int64_t kbox = std::int64_t(4) << 60;  // effectively unbounded

    const std::size_t n_tuples = std::size_t(tuple_count);
    const std::size_t n_chunks = 64;
    struct ChunkOut {
        std::vector<double> inc;
        double lin = 0.0, qua = 0.0;
        detail::SeriesStats stats;
    };
    std::vector<ChunkOut> chunks(n_chunks);

    for_chunks(n_tuples, n_chunks, [&](std::size_t c, std::size_t tb,
                                       std::size_t te) {
        ChunkOut& out = chunks[c];
        out.inc.assign(std::size_t(grid_n), 0.0);
        detail::PsiFieldCache cache(field);
        std::vector<std::int64_t> j(std::size_t(d), {});
        for (std::size_t idx = tb; idx < te; ++idx) {
            std::size_t rem = idx;
            std::int64_t jmax = j_floor;
            for (int l = 0; l < d; ++l) {
                j[std::size_t(l)] =
                    j_floor + std::int64_t(rem % std::size_t(span));
                rem /= std::size_t(span);
                jmax = std::max(jmax, j[std::size_t(l)]);
            }
            if (jmax != J) continue;  // level set only
            detail::add_scale_tuple(hv, j, -kbox, kbox, tab, cache, T, grid_n,
                                    quad, out.inc, out.lin, out.qua, out.stats);
        }
    });

    std::vector<double> inc(std::size_t(grid_n), 0.0);
    double lin = 0.0, qua = 0.0;
    for (const auto& ch : chunks) {
        for (std::size_t i = 0; i < ch.inc.size(); ++i) inc[i] += ch.inc[i];
        lin += ch.lin;
        qua += ch.qua;
    }
    SamplePath out;
    out.times = uniform_grid(T, grid_n);
    out.values = detail::cumulative_from_cells(inc, grid_n);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] += lin * out.times[i] +
                         0.5 * qua * out.times[i] * out.times[i];
    out.meta = {
        {"representation", "detail-increment"},
        {"seed", field.seed()},
        {"h", hv.h},
        {"d", d},
        {"J", J},
        {"T", T},
        {"grid_n", grid_n},
        {"j_floor", j_floor},
    };
    return out;
}

}  // namespace hermwave

#endif
