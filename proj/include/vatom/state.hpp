#pragma once

// Initial-state preparation and the reduced 3x3 atomic density matrix with
// its exact derivatives with respect to the encoding angles. Basis order is
// (|a3>, |a2>, |a1>). Derivatives are exact through the linearity of the
// propagator in the initial upper-level amplitudes; finite differences only
// ever appear in tests.

#include <Eigen/Dense>
#include <complex>

#include "vatom/errors.hpp"
#include "vatom/free_space.hpp"

namespace vatom {

enum class StateKind {
    TwoLevel,  // cos(theta/2)|a3> + e^{i phi} sin(theta/2)|a2>
    QutritHSS, // (|a3> + e^{i phi}|a2> + |a1>)/sqrt(3), theta frozen
};

struct InitialAmplitudes {
    std::complex<double> c3{0.0, 0.0};
    std::complex<double> c2{0.0, 0.0};
    std::complex<double> c1{0.0, 0.0}; // time-constant, |a1,0> is uncoupled
    StateKind kind = StateKind::TwoLevel;
};

// Amplitude triple for (theta, phi); theta in [0, pi], phi in [0, 2 pi).
InitialAmplitudes initial_amplitudes(double theta, double phi, StateKind kind);

// d c / d theta and d c / d phi as amplitude-shaped triples.
struct AmplitudeDerivatives {
    InitialAmplitudes d_theta;
    InitialAmplitudes d_phi;
};
AmplitudeDerivatives amplitude_derivatives(double theta, double phi, StateKind kind);

struct DensityMatrix3 {
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();

    double trace_defect() const { return std::abs(rho.trace().real() - 1.0); }
    double hermiticity_defect() const { return (rho - rho.adjoint()).norm(); }
    double min_eigenvalue() const;
};

// rho(t) from the propagated amplitudes (A3, A2) = m * (c3, c2) and the
// constant ground amplitude c1.
DensityMatrix3 density_matrix(const Propagator& m, const InitialAmplitudes& c);

// d rho / d parameter by the product rule, with (dA3, dA2) = m * (dc3, dc2).
// Hermitian and traceless.
Eigen::Matrix3cd drho_dparam(const Propagator& m, const InitialAmplitudes& c,
                             const InitialAmplitudes& dc);

} // namespace vatom
