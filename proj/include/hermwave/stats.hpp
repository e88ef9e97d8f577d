// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_STATS_HPP
#define HERMWAVE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "hermwave/errors.hpp"

namespace hermwave {

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / double(v.size() - 1);
}

/// Standard error of the sample mean.
inline double standard_error(const std::vector<double>& v) {
    return std::sqrt(sample_variance(v) / double(v.size()));
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_se = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x,
                            const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw config_error("linear_fit: need at least two points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (n > 2 && sxx > 0.0) f.slope_se = std::sqrt(ss_res / double(n - 2) / sxx);
    return f;
}

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic formula).
inline double ks_two_sample_pvalue(std::vector<double> a,
                                   std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = a.size(), m = b.size();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n && j < m) {
        const double x = std::min(a[i], b[j]);
        while (i < n && a[i] <= x) ++i;
        while (j < m && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / double(n) - double(j) / double(m)));
    }
    const double ne = std::sqrt(double(n) * double(m) / double(n + m));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * double(k) * double(k) * lambda * lambda);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace hermwave

#endif
