// SPDX-License-Identifier: Apache-2.0
//
// Wiener-chaos building blocks: probabilists' Hermite polynomials, pair
// partitions, and the chaotic random variables mu_{J,k}, eps_{j,k} and
// sigma_{J,k} together with their correlation structure.

#ifndef HERMWAVE_CHAOS_HPP
#define HERMWAVE_CHAOS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hermwave/errors.hpp"
#include "hermwave/farima.hpp"
#include "hermwave/random.hpp"

namespace hermwave {

inline constexpr int kMaxPartitionOrder = 6;  // enumeration routes cap

/// Probabilists' Hermite polynomial H_n(x), three-term recurrence.
inline double hermite(int n, double x) {
    if (n < 0) throw config_error("hermite: n must be >= 0");
    double h0 = 1.0;
    if (n == 0) return h0;
    double h1 = x;
    for (int m = 1; m < n; ++m) {
        const double h2 = x * h1 - double(m) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// ---------------------------------------------------------------------------
// Pair partitions
// ---------------------------------------------------------------------------

/// A partition of a finite index set into unordered pairs plus singletons.
struct PairPartition {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singletons;
};

namespace detail {

inline void enumerate_pairings(std::vector<int>& rest, int pairs_left,
                               PairPartition& cur,
                               std::vector<PairPartition>& out) {
    if (pairs_left == 0) {
        PairPartition p = cur;
        p.singletons.insert(p.singletons.end(), rest.begin(), rest.end());
        std::sort(p.singletons.begin(), p.singletons.end());
        out.push_back(std::move(p));
        return;
    }
    if (int(rest.size()) < 2 * pairs_left) return;
    // always pair the smallest remaining element: no duplicates possible
    const int a = rest.front();
    std::vector<int> rest2(rest.begin() + 1, rest.end());
    for (std::size_t i = 0; i < rest2.size(); ++i) {
        const int b = rest2[i];
        std::vector<int> rest3;
        rest3.reserve(rest2.size() - 1);
        for (std::size_t j = 0; j < rest2.size(); ++j)
            if (j != i) rest3.push_back(rest2[j]);
        cur.pairs.emplace_back(a, b);
        enumerate_pairings(rest3, pairs_left - 1, cur, out);
        cur.pairs.pop_back();
    }
    // or leave it as a singleton, provided enough elements remain
    if (int(rest2.size()) >= 2 * pairs_left) {
        cur.singletons.push_back(a);
        enumerate_pairings(rest2, pairs_left, cur, out);
        cur.singletons.pop_back();
    }
}

}  // namespace detail

/// All partitions of `set` with exactly m unordered pairs, rest singletons.
inline std::vector<PairPartition> pair_partitions(std::vector<int> set, int m) {
    std::sort(set.begin(), set.end());
    if (m < 0 || 2 * m > int(set.size()))
        throw config_error("pair_partitions: m out of range");
    std::vector<PairPartition> out;
    PairPartition cur;
    detail::enumerate_pairings(set, m, cur, out);
    return out;
}

/// #P_m^{(n)} = n! / (2^m m! (n-2m)!).
inline std::uint64_t pair_partition_count(int n, int m) {
    if (m < 0 || 2 * m > n) throw config_error("pair_partition_count: m out of range");
    // n! / (n-2m)! = product of 2m descending factors
    std::uint64_t num = 1;
    for (int i = 0; i < 2 * m; ++i) num *= std::uint64_t(n - i);
    std::uint64_t den = 1;
    for (int i = 1; i <= m; ++i) den *= 2ull * std::uint64_t(i);
    return num / den;
}

/// a_m^{(n)}: the unsigned Hermite coefficient, equal to #P_m^{(n)}.
inline std::uint64_t hermite_partition_coeff(int n, int m) {
    return pair_partition_count(n, m);
}

// ---------------------------------------------------------------------------
// Multiset structure of a multi-index
// ---------------------------------------------------------------------------

// Canonical encoding of the multiset {(j_l, k_l)} with multiplicities; two
// index tuples produce equal keys iff one is a permutation of the other.
struct MultisetKey {
    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, int>> entries;

    bool operator==(const MultisetKey& o) const { return entries == o.entries; }

    static MultisetKey of(const std::vector<std::int64_t>& j,
                          const std::vector<std::int64_t>& k) {
        std::vector<std::pair<std::int64_t, std::int64_t>> v(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) v[i] = {j[i], k[i]};
        std::sort(v.begin(), v.end());
        MultisetKey key;
        for (std::size_t i = 0; i < v.size();) {
            std::size_t r = i;
            while (r < v.size() && v[r] == v[i]) ++r;
            key.entries.push_back({v[i], int(r - i)});
            i = r;
        }
        return key;
    }
};

/// E[eps_{j,k} eps_{r,s}]: product of multiplicity factorials when the two
/// multisets coincide, zero otherwise.
inline double correlation(const std::vector<std::int64_t>& j,
                          const std::vector<std::int64_t>& k,
                          const std::vector<std::int64_t>& r,
                          const std::vector<std::int64_t>& s) {
    const MultisetKey a = MultisetKey::of(j, k);
    const MultisetKey b = MultisetKey::of(r, s);
    if (!(a == b)) return 0.0;
    double prod = 1.0;
    for (const auto& e : a.entries) {
        for (int m = 2; m <= e.second; ++m) prod *= double(m);
    }
    return prod;
}

// ---------------------------------------------------------------------------
// Chaotic random variables
// ---------------------------------------------------------------------------

namespace detail {

/// Product over the multiset structure of H_{mult}(g(entry)).
template <typename GetG>
double hermite_product(std::vector<std::pair<std::int64_t, std::int64_t>> idx,
                       const GetG& g) {
    std::sort(idx.begin(), idx.end());
    double prod = 1.0;
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t r = i;
        while (r < idx.size() && idx[r] == idx[i]) ++r;
        prod *= hermite(int(r - i), g(idx[i].first, idx[i].second));
        i = r;
    }
    return prod;
}

}  // namespace detail

/// mu_{J,k} = prod_l H_{n_l}(g^phi_{J,ktilde_l}) over the multiplicities of k.
inline double mu(const GaussianField& field, std::int64_t level,
                 const std::vector<std::int64_t>& k) {
    std::vector<std::pair<std::int64_t, std::int64_t>> idx(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) idx[i] = {level, k[i]};
    return detail::hermite_product(
        idx, [&](std::int64_t, std::int64_t kk) { return field.phi(level, kk); });
}

/// eps_{j,k} = prod_l H_{n_l}(g^psi_{jtilde_l,ktilde_l}).
inline double epsilon(const GaussianField& field,
                      const std::vector<std::int64_t>& j,
                      const std::vector<std::int64_t>& k) {
    if (j.size() != k.size()) throw config_error("epsilon: |j| != |k|");
    std::vector<std::pair<std::int64_t, std::int64_t>> idx(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) idx[i] = {j[i], k[i]};
    return detail::hermite_product(idx, [&](std::int64_t jj, std::int64_t kk) {
        return field.psi(jj, kk);
    });
}

// Partition-sum route for mu (oracle): sum over P_m^{(d)} of
// (-1)^m prod E[g g] prod g, with E[g_a g_b] = 1 iff the indices coincide.
inline double mu_partition_route(const GaussianField& field, std::int64_t level,
                                 const std::vector<std::int64_t>& k) {
    const int d = int(k.size());
    if (d > kMaxPartitionOrder)
        throw config_error("mu_partition_route: order capped at 6");
    std::vector<int> ground(d);
    for (int i = 0; i < d; ++i) ground[i] = i;
    double total = 0.0;
    for (int m = 0; 2 * m <= d; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (const PairPartition& part : pair_partitions(ground, m)) {
            double term = 1.0;
            for (const auto& [a, b] : part.pairs)
                term *= (k[std::size_t(a)] == k[std::size_t(b)]) ? 1.0 : 0.0;
            if (term == 0.0) continue;
            for (int s : part.singletons) term *= field.phi(level, k[std::size_t(s)]);
            total += sign * term;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Generalized FARIMA values sigma_{J,k}
// ---------------------------------------------------------------------------

/// Route (a): truncated d-fold sum over p in [0, P]^d of
/// (prod_l gamma_{p_l}^{(h_l - 1/2)}) mu_{J, k - p}.
inline double sigma_direct(const GaussianField& field, std::int64_t level,
                           const std::vector<std::int64_t>& k,
                           const std::vector<double>& h, std::int64_t P,
                           double budget_ops = 4e9) {
    const int d = int(k.size());
    if (int(h.size()) != d) throw config_error("sigma_direct: |h| != |k|");
    if (std::pow(double(P) + 1.0, d) > budget_ops)
        throw budget_error("sigma_direct: P^d exceeds budget");
    std::vector<GammaCoefficients> gam;
    gam.reserve(std::size_t(d));
    for (double hl : h) gam.push_back(gamma_coeffs(hl - 0.5, P));

    std::vector<std::int64_t> p(std::size_t(d), 0);
    std::vector<std::int64_t> kp(k);
    double total = 0.0;
    // odometer over [0,P]^d with incremental gamma products
    std::vector<double> partial(std::size_t(d) + 1, 1.0);
    int axis = 0;
    for (;;) {
        for (; axis < d; ++axis) {
            partial[std::size_t(axis) + 1] =
                partial[std::size_t(axis)] *
                gam[std::size_t(axis)].values[std::size_t(p[std::size_t(axis)])];
            kp[std::size_t(axis)] = k[std::size_t(axis)] - p[std::size_t(axis)];
        }
        total += partial[std::size_t(d)] * mu(field, level, kp);
        // advance odometer
        axis = d - 1;
        while (axis >= 0 && p[std::size_t(axis)] == P) {
            p[std::size_t(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        ++p[std::size_t(axis)];
    }
    return total;
}

// Route (b): partition sum with FARIMA values for singletons and exact
// covariances for pairs,
//   sigma = sum_m (-1)^m sum_{P in P_m^{(d)}} prod E[Z Z] prod Z.
// The Z factors share the level-J scaling field; covariances come from the
// spectral quadrature, so route (b) truncates only inside each Z.
inline double sigma_farima_route(const GaussianField& field, std::int64_t level,
                                 const std::vector<std::int64_t>& k,
                                 const std::vector<double>& h,
                                 std::int64_t P = 1 << 16) {
    const int d = int(k.size());
    if (int(h.size()) != d) throw config_error("sigma_farima_route: |h| != |k|");
    if (d > kMaxPartitionOrder)
        throw config_error("sigma_farima_route: order capped at 6");
    std::vector<double> z(std::size_t(d), {});
    for (int l = 0; l < d; ++l)
        z[std::size_t(l)] = farima_sequence(field, level, h[std::size_t(l)] - 0.5,
                                            k[std::size_t(l)], k[std::size_t(l)],
                                            P)[0];
    std::vector<int> ground(std::size_t(d), {});
    for (int i = 0; i < d; ++i) ground[std::size_t(i)] = i;
    double total = 0.0;
    for (int m = 0; 2 * m <= d; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (const PairPartition& part : pair_partitions(ground, m)) {
            double term = 1.0;
            for (const auto& [a, b] : part.pairs)
                term *= farima_covariance_cached(
                    h[std::size_t(a)] - 0.5, h[std::size_t(b)] - 0.5,
                    k[std::size_t(a)] - k[std::size_t(b)]);
            for (int s : part.singletons) term *= z[std::size_t(s)];
            total += sign * term;
        }
    }
    return total;
}

/// Combined-truncation tolerance estimate for the route (a) vs (b) gap:
/// both routes drop gamma tails beyond P on each axis.
inline double sigma_route_tolerance(const std::vector<double>& h,
                                    std::int64_t P) {
    double tol = 0.0;
    for (double hl : h) tol += std::sqrt(gamma_tail_sq(hl - 0.5, double(P)));
    return tol;
}

/// E[sigma_{J,k} sigma_{J,k'}]: permanent of the FARIMA covariance matrix
/// M_{ab} = E[Z^{(delta_a)}_{k_a} Z^{(delta_b)}_{k'_b}] (moment oracle).
inline double sigma_moment_oracle(const std::vector<std::int64_t>& k,
                                  const std::vector<std::int64_t>& kp,
                                  const std::vector<double>& h) {
    const int d = int(k.size());
    if (d > 8) throw config_error("sigma_moment_oracle: order too large");
    std::vector<double> M(std::size_t(d * d), {});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            M[std::size_t(a * d + b)] = farima_covariance_cached(
                h[std::size_t(a)] - 0.5, h[std::size_t(b)] - 0.5,
                k[std::size_t(a)] - kp[std::size_t(b)]);
    // permanent over all permutations (d <= 8)
    std::vector<int> perm(std::size_t(d), {});
    for (int i = 0; i < d; ++i) perm[std::size_t(i)] = i;
    double total = 0.0;
    do {
        double prod = 1.0;
        for (int a = 0; a < d; ++a) prod *= M[std::size_t(a * d + perm[std::size_t(a)])];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace hermwave

#endif
