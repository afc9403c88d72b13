#pragma once

// Propagator evaluation over a uniform time grid. Every grid point is an
// independent computation, so the parallel kernel simply distributes the
// points over OpenMP threads; the serial path is kept as the reference the
// tests compare against (results are identical bit for bit, which also
// keeps CSV output deterministic). The benchmark tool times one against
// the other.

#include <vector>

#include "vatom/free_space.hpp"
#include "vatom/pbg.hpp"

namespace vatom {

struct TimeGrid {
    double t_max = 20.0;
    double dt = 0.01;

    std::size_t size() const { return static_cast<std::size_t>(t_max / dt) + 1; }
    std::vector<double> times() const;
    void validate() const;
};

enum class EvalMode { Serial, Parallel };

std::vector<Propagator> evaluate_grid(const TimeGrid& grid, const FreeParams& p,
                                      EvalMode mode = EvalMode::Parallel);

// PBG roots are found once and shared across the grid.
std::vector<Propagator> evaluate_grid(const TimeGrid& grid, const PbgParams& p,
                                      const ModeRoots& roots,
                                      EvalMode mode = EvalMode::Parallel,
                                      double tol = 1e-10);

} // namespace vatom
