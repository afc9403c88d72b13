// Times the serial and OpenMP time-grid kernels against each other on the
// band-gap propagator, which is where all the quadrature cost sits.

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
static double omp_get_wtime() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
static int omp_get_max_threads() { return 1; }
#endif

#include "vatom/timegrid.hpp"

int main() {
    using namespace vatom;

    const PbgParams p{0.1, -1.0};
    const ModeRoots roots = find_mode_roots(p);

    std::printf("threads available: %d\n", omp_get_max_threads());
    std::printf("%-10s %-10s %-12s %-12s %-8s\n", "t_max", "points", "serial [s]",
                "parallel [s]", "speedup");

    for (double t_max : {2.0, 5.0, 10.0}) {
        const TimeGrid grid{t_max, 0.01};

        const double s0 = omp_get_wtime();
        const auto serial = evaluate_grid(grid, p, roots, EvalMode::Serial);
        const double s1 = omp_get_wtime();
        const auto parallel = evaluate_grid(grid, p, roots, EvalMode::Parallel);
        const double s2 = omp_get_wtime();

        double max_diff = 0.0;
        for (std::size_t i = 0; i < serial.size(); ++i)
            max_diff = std::max(max_diff, (serial[i].m - parallel[i].m).cwiseAbs().maxCoeff());
        if (max_diff != 0.0)
            std::printf("warning: serial/parallel results differ by %.3e\n", max_diff);

        std::printf("%-10.1f %-10zu %-12.3f %-12.3f %-8.2f\n", t_max, serial.size(), s1 - s0,
                    s2 - s1, (s1 - s0) / std::max(s2 - s1, 1e-9));
    }
    return 0;
}
