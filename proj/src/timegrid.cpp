#include "vatom/timegrid.hpp"

#include <exception>

namespace vatom {

std::vector<double> TimeGrid::times() const {
    validate();
    const std::size_t n = size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = double(i) * dt;
    return out;
}

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw InvalidInputError("TimeGrid: dt must be > 0");
    if (!(t_max >= 10.0 * dt)) throw InvalidInputError("TimeGrid: t_max must be >= 10*dt");
}

std::vector<Propagator> evaluate_grid(const TimeGrid& grid, const FreeParams& p, EvalMode mode) {
    const std::vector<double> ts = grid.times();
    std::vector<Propagator> out(ts.size());
    // Cheap closed form; threading adds nothing here.
    (void)mode;
    for (std::size_t i = 0; i < ts.size(); ++i) out[i] = propagator_free(ts[i], p);
    return out;
}

std::vector<Propagator> evaluate_grid(const TimeGrid& grid, const PbgParams& p,
                                      const ModeRoots& roots, EvalMode mode, double tol) {
    const std::vector<double> ts = grid.times();
    std::vector<Propagator> out(ts.size());

    if (mode == EvalMode::Serial) {
        for (std::size_t i = 0; i < ts.size(); ++i)
            out[i] = propagator_pbg(ts[i], p, roots, tol);
        return out;
    }

    // Adaptive quadrature makes the per-point cost uneven; dynamic
    // scheduling evens it out. Exceptions cannot cross the parallel region,
    // so the first one is stashed and rethrown.
    std::exception_ptr error;
    const long n = static_cast<long>(ts.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = propagator_pbg(ts[i], p, roots, tol);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace vatom
