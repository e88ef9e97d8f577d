#include <chrono>
#include <cstdio>

#include "hermwave/series.hpp"
#include "hermwave/suites.hpp"
#include "hermwave/validation.hpp"

using namespace hermwave;

static double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int main(int argc, char** argv) {
    const int stage = argc > 1 ? std::atoi(argv[1]) : 0;
    setvbuf(stdout, nullptr, _IONBF, 0);

    if (stage == 0 || stage == 1) {
        // kernel oracle scaling
        HurstVector h2{{0.8, 0.85}};
        const double k1 = kernel_oracle(h2, 1.0, {0.3, -0.7});
        const double k2 = kernel_oracle(h2, 2.0, {0.6, -1.4});
        const double expo = h2.sum() - 1.5 * 2 + 1.0;
        std::printf("kernel scaling: ratio=%.10f want=%.10f rel=%.2e\n",
                    k2 / k1, std::pow(2.0, expo),
                    std::abs(k2 / k1 / std::pow(2.0, expo) - 1.0));

        GaussianField f(11);
        // d=1: fbm vs abel vs approx
        ApproxParams ap;
        ap.J = 5;
        ap.T = 1.0;
        ap.grid_n = 64;
        ap.P = 1 << 14;
        HurstVector h1{{0.7}};
        double t0 = now();
        SamplePath pa = approx_path(f, h1, ap);
        double t1 = now();
        SamplePath pb = abel_path(f, h1, ap);
        double t2 = now();
        FbmParams fp;
        fp.J = 5;
        fp.T = 1.0;
        fp.grid_n = 64;
        fp.P = 1 << 14;
        SamplePath pc = fbm_path(f, 0.7, fp);
        double t3 = now();
        double dab = 0.0, dbc = 0.0, sup = sup_norm(pa.values);
        for (std::size_t i = 0; i < pa.values.size(); ++i) {
            dab = std::max(dab, std::abs(pa.values[i] - pb.values[i]));
            dbc = std::max(dbc, std::abs(pb.values[i] - pc.values[i]));
        }
        std::printf("d=1: sup=%.4f approx-abel=%.2e abel-fbm=%.2e t=%.2f/%.2f/%.2f s\n",
                    sup, dab, dbc, t1 - t0, t2 - t1, t3 - t2);

        // d=2 approx vs abel
        ap.J = 4;
        ap.grid_n = 64;
        ap.band_B = 12;
        ap.q_lo = 0;
        ap.q_hi = -1;
        ap.fill_defaults(ap.T);
        t0 = now();
        SamplePath qa = approx_path(f, h2, ap);
        t1 = now();
        SamplePath qb = abel_path(f, h2, ap);
        t2 = now();
        double dq = 0.0;
        for (std::size_t i = 0; i < qa.values.size(); ++i)
            dq = std::max(dq, std::abs(qa.values[i] - qb.values[i]));
        std::printf("d=2: sup=%.4f approx-abel=%.2e t=%.2f/%.2f s warn=%d\n",
                    sup_norm(qa.values), dq, t1 - t0, t2 - t1,
                    int(qa.meta["band_warning"].get<bool>()));
        // band doubling
        ApproxParams ap32 = ap;
        ap32.band_B = 24;
        ap32.q_lo = 0; ap32.q_hi = -1; ap32.fill_defaults(ap.T);
        SamplePath qc = approx_path(f, h2, ap32);
        double dB = 0.0;
        for (std::size_t i = 0; i < qa.values.size(); ++i)
            dB = std::max(dB, std::abs(qa.values[i] - qc.values[i]));
        std::printf("d=2 band 12->24 change: %.2e rel %.2e\n", dB,
                    dB / sup_norm(qc.values));
    }

    if (stage == 0 || stage == 2) {
        GaussianField f(22);
        HurstVector h2{{0.8, 0.85}};
        // fullseries smoke + timing per N
        FullSeriesParams fs;
        fs.T = 2.25;
        fs.grid_n = 144;
        for (int N = 2; N <= 7; ++N) {
            fs.N = N;
            double t0 = now();
            SamplePath p = fullseries_path(f, h2, fs);
            double t1 = now();
            std::printf("fullseries d=2 N=%d: sup=%.4f  %.2f s  (full=%llu coarse=%llu lin=%llu empty=%llu)\n",
                        N, sup_norm(p.values), t1 - t0,
                        (unsigned long long)p.meta["tuples_full"].get<std::uint64_t>(),
                        (unsigned long long)p.meta["tuples_coarse"].get<std::uint64_t>(),
                        (unsigned long long)p.meta["tuples_linear"].get<std::uint64_t>(),
                        (unsigned long long)p.meta["tuples_empty_support"].get<std::uint64_t>());
        }
    }

    if (stage == 0 || stage == 3) {
        // detail increment slopes, d=1
        double t0 = now();
        RateReport r1 = rate_test(1234, HurstVector{{0.7}}, 2, 7, 16);
        std::printf("rate d=1: fitted=%.3f theory=%.3f R2=%.3f  (%.1f s)\n",
                    r1.fitted_slope, r1.theory_slope, r1.r_squared, now() - t0);
        for (std::size_t i = 0; i < r1.levels.size(); ++i)
            std::printf("  J=%g err=%.5e\n", r1.levels[i], r1.errors[i]);
    }
    if (stage == 0 || stage == 4) {
        double t0 = now();
        RateReport r2 = rate_test(1234, HurstVector{{0.8, 0.85}}, 2, 7, 16);
        std::printf("rate d=2: fitted=%.3f theory=%.3f R2=%.3f  (%.1f s)\n",
                    r2.fitted_slope, r2.theory_slope, r2.r_squared, now() - t0);
        for (std::size_t i = 0; i < r2.levels.size(); ++i)
            std::printf("  J=%g err=%.5e\n", r2.levels[i], r2.errors[i]);
    }
    if (stage == 5) {
        double t0 = now();
        RateReport r3 = fullseries_rate_test(1234, HurstVector{{0.8, 0.85}}, 2, 6, 8);
        std::printf("fsrate d=2: fitted=%.3f theory=%.3f R2=%.3f (%.1f s)\n", r3.fitted_slope, r3.theory_slope, r3.r_squared, now() - t0);
        for (std::size_t i = 0; i < r3.levels.size(); ++i) std::printf("  N=%g err=%.5e\n", r3.levels[i], r3.errors[i]);

    }

    if (stage == 6) {
        double t0 = now();
        json s1 = selfsimilarity_test(777, HurstVector{{0.7}}, 6, 400);
        std::printf("selfsim d=1: slope=%.3f target=%.3f se=%.3f (%.1f s)\n",
                    s1["measured_slope"].get<double>(), s1["target_slope"].get<double>(),
                    s1["slope_se"].get<double>(), now() - t0);
        t0 = now();
        json s2 = selfsimilarity_test(777, HurstVector{{0.8, 0.85}}, 5, 300);
        std::printf("selfsim d=2: slope=%.3f target=%.3f se=%.3f (%.1f s)\n",
                    s2["measured_slope"].get<double>(), s2["target_slope"].get<double>(),
                    s2["slope_se"].get<double>(), now() - t0);
        t0 = now();
        json s3 = selfsimilarity_test(777, HurstVector{{0.9, 0.9, 0.9}}, 4, 100);
        std::printf("selfsim d=3: slope=%.3f target=%.3f se=%.3f (%.1f s)\n",
                    s3["measured_slope"].get<double>(), s3["target_slope"].get<double>(),
                    s3["slope_se"].get<double>(), now() - t0);
    }
    if (stage == 7) {
        double t0 = now();
        CovarianceReport cr = fbm_covariance_test(555, 0.7, 6, 1.0, 2000);
        std::printf("fbm cov: c=%.4f maxres/se=%.2f diag_slope=%.3f (want %.3f) pass=%d (%.1f s)\n",
                    cr.fitted_c, cr.max_residual_over_se, cr.diag_loglog_slope,
                    cr.diag_slope_target, int(cr.pass), now() - t0);
    }
    return 0;
}
// extra stages appended: 6 selfsim, 7 fbm cov
