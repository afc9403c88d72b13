#pragma once

// Closed-form amplitude propagator for the V-type atom in free space.
// The two excited-state amplitudes obey a linear system whose solution is a
// 2x2 matrix acting on the initial amplitudes; both columns are exact.

#include <Eigen/Dense>
#include <complex>

#include "vatom/errors.hpp"

namespace vatom {

// Linear map from initial upper-level amplitudes (c3, c2) to (A3(t), A2(t)).
struct Propagator {
    double t = 0.0;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
};

struct FreeParams {
    double gamma31 = 1.0; // decay rate of level 3 (half-width convention)
    double gamma21 = 1.0; // decay rate of level 2
    double omega32 = 0.5; // splitting between the upper levels

    std::complex<double> lambda() const {
        return {gamma31 - gamma21, omega32};
    }
    double gamma_bar() const; // sqrt(gamma31*gamma21)

    void validate() const;
};

// Exact propagator at time t >= 0. The implementation evaluates the
// normal-mode pair q_{1,2} = lambda/2 +- mu, mu = sqrt((lambda/2)^2 +
// gamma_bar^2), through cosh/sinh(mu t) so the confluent (q1 = q2) and
// decoupled (gamma_bar -> 0) limits come out of the same expression.
Propagator propagator_free(double t, const FreeParams& p);

} // namespace vatom
