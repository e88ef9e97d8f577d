// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "hermwave/suites.hpp"
#include "hermwave/validation.hpp"

using namespace hermwave;

TEST_CASE("csv serialization round-trips doubles") {
    const std::vector<double> t{0.0, 1.0 / 3.0, 0.1 + 0.2};
    const std::vector<double> v{-1.234567890123456789e-7, 3.0, 0.0};
    const std::string csv = csv_two_columns("t", "value", t, v);
    CHECK(csv.rfind("t,value\n", 0) == 0);
    // parse back and compare bitwise
    std::size_t pos = csv.find('\n') + 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::size_t comma = csv.find(',', pos);
        const std::size_t eol = csv.find('\n', pos);
        CHECK(std::stod(csv.substr(pos, comma - pos)) == t[i]);
        CHECK(std::stod(csv.substr(comma + 1, eol - comma - 1)) == v[i]);
        pos = eol + 1;
    }
}

TEST_CASE("rate fit recovers a synthetic slope") {
    // errors = level^{d/2} 2^{slope * level} with d = 2
    std::vector<double> levels{2, 3, 4, 5, 6, 7};
    std::vector<double> errors;
    for (double L : levels) errors.push_back(L * std::pow(2.0, -0.45 * L));
    RateReport r = detail::fit_rate(levels, errors, 2, -0.5, 0.15, true, 1);
    CHECK(r.fitted_slope == Catch::Approx(-0.45).margin(1e-9));
    CHECK(r.r_squared == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.strict_band_pass);
    CHECK(r.pass);
    // steeper than theory: accepted, strict band fails
    RateReport r2 = detail::fit_rate(levels, errors, 2, -0.1, 0.15, true, 1);
    CHECK(r2.pass);
    CHECK_FALSE(r2.strict_band_pass);
    // slower than theory + tol: rejected
    RateReport r3 = detail::fit_rate(levels, errors, 2, -0.8, 0.15, true, 1);
    CHECK_FALSE(r3.pass);
    CHECK_THROWS_AS(detail::fit_rate({1, 2, 3}, {1, 1, 1}, 1, 0, 0.1, true, 1),
                    config_error);
}

TEST_CASE("ks two-sample p-value sanity") {
    std::vector<double> a, b, c;
    GaussianField f(4);
    for (int i = 0; i < 500; ++i) {
        a.push_back(f.normal(1, i, 0));
        b.push_back(f.normal(2, i, 0));
        c.push_back(2.0 * f.normal(3, i, 0));
    }
    CHECK(ks_two_sample_pvalue(a, b) > 0.01);   // same law
    CHECK(ks_two_sample_pvalue(a, c) < 1e-4);   // different scale
}

TEST_CASE("linear fit basics") {
    LinearFit f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f.slope == Catch::Approx(2.0));
    CHECK(f.intercept == Catch::Approx(1.0));
    CHECK(f.r_squared == Catch::Approx(1.0));
    CHECK_THROWS_AS(linear_fit({1}, {1}), config_error);
}

TEST_CASE("selfsimilarity report shape") {
    json rep = selfsimilarity_test(4242, HurstVector{{0.7}}, 5, 24);
    CHECK(rep["asserted"].get<bool>());
    CHECK(rep["target_slope"].get<double>() == Catch::Approx(1.4));
    CHECK(rep.contains("measured_slope"));
}

TEST_CASE("fullseries consistency with the d = 1 assembly (distributional)") {
    // X~_N at d = 1 and the low+high frequency assembly both target the same
    // Gaussian marginal at t = 1; two-sample KS over independent replicas.
    const int n = 400;
    std::vector<double> xa(std::size_t(n), 0.0), xb(std::size_t(n), 0.0);
    HurstVector h{{0.7}};
    FullSeriesParams fs;
    fs.N = 4;
    fs.T = 2.25;
    fs.grid_n = 36;
    for_chunks(std::size_t(n), 16, [&](std::size_t, std::size_t rb, std::size_t re) {
        for (std::size_t r = rb; r < re; ++r) {
            GaussianField f1(derive_seed(60001, r));
            SamplePath p = fullseries_path(f1, h, fs);
            const int idx = int(std::llround(1.0 / fs.T * fs.grid_n));
            xa[r] = p.values[std::size_t(idx)];

            GaussianField f2(derive_seed(70002, r));
            FbmParams fp;
            fp.J = 4;
            fp.T = 1.0;
            fp.grid_n = 4;
            SamplePath lo = fbm_path(f2, 0.7, fp);
            const auto hi = fbm_detail_part(f2, 0.7, 4, 10, {1.0});
            xb[r] = lo.values.back() + hi[0];
        }
    });
    const double p = ks_two_sample_pvalue(xa, xb);
    INFO("KS p = " << p);
    CHECK(p > 0.01);
}

TEST_CASE("approx band shell diagnostic is recorded") {
    GaussianField f(31);
    HurstVector h{{0.8, 0.85}};
    ApproxParams ap;
    ap.J = 3;
    ap.T = 1.0;
    ap.grid_n = 24;
    ap.band_B = 10;
    SamplePath p = approx_path(f, h, ap);
    CHECK(p.meta.contains("band_warning"));
    CHECK(p.meta.contains("band_shell_sup"));
    CHECK_FALSE(p.meta["band_warning"].get<bool>());
}
