#include <chrono>
#include <cstdio>

#include "hermwave/meyer.hpp"

using namespace hermwave;

int main() {
    auto t0 = std::chrono::steady_clock::now();
    FunctionTable phi = build_scaling_table();
    auto t1 = std::chrono::steady_clock::now();
    std::printf("phi build: %.2f s, n=%zu\n",
                std::chrono::duration<double>(t1 - t0).count(), phi.size());

    FunctionTable psi = build_wavelet_table();
    auto t2 = std::chrono::steady_clock::now();
    std::printf("psi build: %.2f s\n",
                std::chrono::duration<double>(t2 - t1).count());

    std::printf("phi(0)=%.12f  phi integral=%.12f (expect 1)\n", phi.eval(0.0),
                phi.integral());
    std::printf("psi integral=%.3e (expect 0)\n", psi.integral());

    // orthonormality via grid dot products
    const std::int64_t shift = std::int64_t(std::llround(1.0 / phi.dx));
    for (int k = 0; k <= 5; ++k) {
        double s = 0.0;
        for (std::size_t i = std::size_t(k) * shift; i < phi.size(); ++i)
            s += phi.samples[i] * phi.samples[i - std::size_t(k) * shift];
        s *= phi.dx;
        std::printf("<phi,phi(.-%d)> = %+.3e\n", k, s - (k == 0 ? 1.0 : 0.0));
    }
    for (int k = 0; k <= 3; ++k) {
        double s = 0.0;
        // <phi, psi(.-k)>: same grid
        for (std::size_t i = std::size_t(k) * shift; i < psi.size() && i < phi.size(); ++i)
            s += phi.samples[i - std::size_t(k) * shift] * psi.samples[i];
        s *= phi.dx;
        std::printf("<phi,psi(.-%d)> = %+.3e\n", k, s);
    }

    std::printf("tail: phi c=%.3e (L=%g), psi c=%.3e\n", phi.tail_c, phi.tail_L,
                psi.tail_c);
    std::printf("phi(32-eps)=%.3e phi(20)=%.3e phi(10)=%.3e\n",
                phi.eval(31.99), phi.eval(20.0), phi.eval(10.0));

    // psi_h and Phi_Delta sanity
    FunctionTable psih = build_fractional_primitive(0.7);
    std::printf("psi_0.7 integral=%.3e (expect 0), tail c=%.3e\n",
                psih.integral(), psih.tail_c);
    FunctionTable pd = build_fractional_scaling(0.2);
    std::printf("PhiD_0.2 integral=%.12f (expect 1), tail c=%.3e\n",
                pd.integral(), pd.tail_c);

    // Phi^{-delta}: series vs fourier route
    FunctionTable phiw = build_scaling_table({128.0, 0x1p-8, 16384.0, 8.0});
    FunctionTable pm = build_phi_minus_delta(phiw, 0.25);
    for (double x : {-20.0, -5.0, -1.3, 0.0, 2.7, 10.0}) {
        double a = pm.eval(x);
        double b = phi_minus_delta_fourier_route(x, 0.25);
        std::printf("Phi^-0.25(%6.2f): series=%+.9f fourier=%+.9f diff=%.2e\n",
                    x, a, b, std::abs(a - b));
    }
    std::printf("Phi^-0.25 tail_L measured=%.2f\n", pm.tail_L);
    auto t3 = std::chrono::steady_clock::now();
    std::printf("total: %.2f s\n",
                std::chrono::duration<double>(t3 - t0).count());
    return 0;
}
