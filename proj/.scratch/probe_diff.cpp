#include <cstdio>

#include "hermwave/series.hpp"

using namespace hermwave;

int main() {
    GaussianField f(77);
    HurstVector h{{0.8, 0.85}};
    const double T = 2.25;
    const int grid_n = 24;
    auto times = uniform_grid(T, grid_n);

    std::vector<std::shared_ptr<const FunctionTable>> tab;
    for (double hl : h.h) tab.push_back(get_table(TableKind::frac_primitive, hl));

    for (std::vector<std::int64_t> j :
         {std::vector<std::int64_t>{0, 0}, {0, -1}, {-1, -2}, {-2, -2}}) {
        const std::int64_t box = (std::max(j[0], j[1]) >= 0) ? 9 : 2;
        // grouped route
        detail::PsiFieldCache cache(f);
        std::vector<double> inc(std::size_t(grid_n), 0.0);
        double lin = 0.0, qua = 0.0;
        detail::SeriesStats stats;
        QuadPolicy q;
        detail::add_scale_tuple(h, j, -box, box, tab, cache, T, grid_n, q, inc,
                                lin, qua, stats);
        auto vals = detail::cumulative_from_cells(inc, grid_n);
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] += lin * times[i] + 0.5 * qua * times[i] * times[i];

        // direct route
        std::vector<double> direct(vals.size(), 0.0);
        for (std::int64_t k1 = -box; k1 <= box; ++k1)
            for (std::int64_t k2 = -box; k2 <= box; ++k2) {
                const double eps = epsilon(f, j, {k1, k2});
                for (std::size_t i = 1; i < times.size(); ++i)
                    direct[i] +=
                        eps * detail_coefficient(h, j, {k1, k2}, times[i]);
            }
        double worst = 0.0;
        std::size_t at = 0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (std::abs(vals[i] - direct[i]) > worst) {
                worst = std::abs(vals[i] - direct[i]);
                at = i;
            }
        std::printf("j=(%lld,%lld): worst=%.3e at t=%.3f (grouped %.10f direct %.10f)\n",
                    (long long)j[0], (long long)j[1], worst, times[at], vals[at],
                    direct[at]);
    }
    return 0;
}
