// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <numbers>

#include "hermwave/meyer.hpp"
#include "hermwave/suites.hpp"

using namespace hermwave;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("transform profile pinned values") {
    CHECK(meyer_scaling_fourier_real(5.0) == 0.0);
    CHECK(meyer_scaling_fourier_real(0.0) == Catch::Approx(inv_sqrt_2pi).epsilon(1e-14));
    CHECK(meyer_scaling_fourier_real(2.0 * pi / 3.0) ==
          Catch::Approx(inv_sqrt_2pi).epsilon(1e-14));
    CHECK(std::abs(meyer_wavelet_fourier(0.5)) == 0.0);
    CHECK(std::abs(meyer_wavelet_fourier(9.0)) == 0.0);
    CHECK(std::abs(meyer_wavelet_fourier(pi)) ==
          Catch::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-14));
    // Hermitian symmetry
    for (double xi : {0.3, 2.5, -4.0, 7.7}) {
        const auto a = meyer_wavelet_fourier(xi);
        const auto b = std::conj(meyer_wavelet_fourier(-xi));
        CHECK(std::abs(a - b) < 1e-15);
    }
}

TEST_CASE("inverse transform of phi_hat matches quadrature at a point") {
    // independent route: direct Gauss quadrature of the inverse transform
    auto phi = get_table(TableKind::scaling);
    for (double x : {0.0, 0.3, 1.7, -2.45}) {
        const double direct =
            inv_sqrt_2pi *
            gauss_composite(
                [&](double xi) {
                    return meyer_scaling_fourier_real(xi) * std::cos(x * xi);
                },
                -4.0 * pi / 3.0, 4.0 * pi / 3.0, 64, 16);
        CHECK(phi->eval(x) == Catch::Approx(direct).margin(5e-9));
    }
}

TEST_CASE("eval contract: nodes exact, outside zero, midpoint within bound") {
    auto phi = get_table(TableKind::scaling);
    CHECK(phi->eval(phi->x_of(1000)) == phi->samples[1000]);
    CHECK(phi->eval(phi->half_width + 1.0) == 0.0);
    auto psih = get_table(TableKind::frac_primitive, 0.7);
    CHECK(psih->eval(psih->half_width + 1.0) == 0.0);

    // refinement oracle: halve dx, compare midpoint interpolation
    TableSpec coarse{8.0, 0x1p-7, 4096.0, 8.0};
    TableSpec fine{8.0, 0x1p-8, 4096.0, 8.0};
    FunctionTable a = build_scaling_table(coarse);
    FunctionTable b = build_scaling_table(fine);
    double worst = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.0113)
        worst = std::max(worst, std::abs(a.eval(x) - b.eval(x)));
    CHECK(worst <= std::max(a.interp_error_bound, 1e-9));
}

TEST_CASE("fractional primitive tables") {
    auto psi = get_table(TableKind::wavelet);
    auto t = get_table(TableKind::frac_primitive, 0.7);
    CHECK(std::abs(t->integral()) < 1e-5);
    CHECK(t->tail_L == 8.0);
    CHECK(tail_certificate_holds(*t));
    // h = 1/2 multiplier is the identity
    auto t2 = get_table(TableKind::frac_primitive, 0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < psi->samples.size(); ++i)
        worst = std::max(worst, std::abs(t2->samples[i] - psi->samples[i]));
    CHECK(worst < 1e-12);
    // antiderivative identity: psi_{h+1} is the running integral of psi_h
    auto th = get_table(TableKind::frac_primitive, 0.7);
    auto th1 = get_table(TableKind::frac_primitive, 1.7);
    worst = 0.0;
    for (double x : {-9.0, -2.0, 0.0, 1.7, 6.3})
        worst = std::max(worst,
                         std::abs(th->eval_cumulative(x) - th1->eval(x)));
    CHECK(worst < 1e-6);
}

TEST_CASE("fractional scaling tables") {
    auto phi = get_table(TableKind::scaling);
    auto t = get_table(TableKind::frac_scaling, 1.0);
    CHECK(t->integral() == Catch::Approx(1.0).margin(1e-5));
    auto t0 = get_table(TableKind::frac_scaling, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi->samples.size(); ++i)
        worst = std::max(worst, std::abs(t0->samples[i] - phi->samples[i]));
    CHECK(worst < 1e-12);
    // negative order: measured tail constant recorded, table still built
    FunctionTable neg = build_fractional_scaling(-1.5);
    CHECK(std::isfinite(neg.tail_c));
    CHECK(neg.samples.size() == phi->samples.size());
}

TEST_CASE("resolution guard") {
    TableSpec bad;
    bad.dx = 1.0;  // Nyquist band pi < 8 pi / 3
    CHECK_THROWS_AS(build_wavelet_table(bad), resolution_error);
}

TEST_CASE("binary dump/load round-trips bit-exactly") {
    auto t = get_table(TableKind::frac_scaling, 0.3);
    const std::string path = "roundtrip_test.tbl";
    dump_table_binary(*t, path);
    FunctionTable back = load_table_binary(path);
    CHECK(back.samples == t->samples);
    CHECK(back.half_width == t->half_width);
    CHECK(back.dx == t->dx);
    CHECK(back.tail_L == t->tail_L);
    CHECK(back.tail_c == t->tail_c);
    CHECK(back.interpolation_order == t->interpolation_order);
    dump_table_binary(back, path + "2");
    CHECK(read_text_file(path) == read_text_file(path + "2"));
    std::filesystem::remove(path);
    std::filesystem::remove(path + "2");
    dump_table_csv(*t, "roundtrip_test.csv");
    const std::string csv = read_text_file("roundtrip_test.csv");
    CHECK(csv.rfind("R,dx,L,c,interpolation_order", 0) == 0);
    std::filesystem::remove("roundtrip_test.csv");
}

TEST_CASE("slow-tail companion budget guard") {
    auto phi = get_table(TableKind::scaling);  // narrow source
    CHECK_THROWS_AS(build_phi_minus_delta(*phi, 0.25, 32.0, 1e-13),
                    budget_error);
    CHECK_THROWS_AS(build_phi_minus_delta(*phi, 0.75), config_error);
}

TEST_CASE("meyer suite passes") {
    SuiteReport rep = meyer_suite(true);
    INFO(rep.to_text());
    CHECK(rep.all_pass());
}
