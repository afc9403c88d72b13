#include "vatom/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace vatom {

namespace {

using Complex = std::complex<double>;

constexpr double kInvSqrt3 = 0.57735026918962576451;

void check_angles(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= M_PI))
        throw InvalidInputError("initial_amplitudes: theta must be in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * M_PI))
        throw InvalidInputError("initial_amplitudes: phi must be in [0, 2 pi)");
}

} // namespace

InitialAmplitudes initial_amplitudes(double theta, double phi, StateKind kind) {
    check_angles(theta, phi);
    InitialAmplitudes c;
    c.kind = kind;
    const Complex phase = std::exp(Complex(0.0, phi));
    if (kind == StateKind::TwoLevel) {
        c.c3 = std::cos(0.5 * theta);
        c.c2 = phase * std::sin(0.5 * theta);
        c.c1 = 0.0;
    } else {
        c.c3 = kInvSqrt3;
        c.c2 = phase * kInvSqrt3;
        c.c1 = kInvSqrt3;
    }
    return c;
}

AmplitudeDerivatives amplitude_derivatives(double theta, double phi, StateKind kind) {
    check_angles(theta, phi);
    const Complex phase = std::exp(Complex(0.0, phi));
    AmplitudeDerivatives d;
    d.d_theta.kind = d.d_phi.kind = kind;
    if (kind == StateKind::TwoLevel) {
        d.d_theta.c3 = -0.5 * std::sin(0.5 * theta);
        d.d_theta.c2 = 0.5 * phase * std::cos(0.5 * theta);
        d.d_phi.c2 = Complex(0.0, 1.0) * phase * std::sin(0.5 * theta);
    } else {
        // theta is frozen by the preparation; only the relative phase moves.
        d.d_phi.c2 = Complex(0.0, 1.0) * phase * kInvSqrt3;
    }
    return d;
}

double DensityMatrix3::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(0.5 * (rho + rho.adjoint()));
    return solver.eigenvalues().minCoeff();
}

DensityMatrix3 density_matrix(const Propagator& m, const InitialAmplitudes& c) {
    const Eigen::Vector2cd a = m.m * Eigen::Vector2cd(c.c3, c.c2);
    const Complex a3 = a(0), a2 = a(1);

    DensityMatrix3 out;
    out.rho(0, 0) = std::norm(a3);
    out.rho(1, 1) = std::norm(a2);
    out.rho(0, 1) = a3 * std::conj(a2);
    out.rho(1, 0) = std::conj(out.rho(0, 1));
    out.rho(0, 2) = a3 * std::conj(c.c1);
    out.rho(2, 0) = std::conj(out.rho(0, 2));
    out.rho(1, 2) = a2 * std::conj(c.c1);
    out.rho(2, 1) = std::conj(out.rho(1, 2));
    out.rho(2, 2) = 1.0 - out.rho(0, 0).real() - out.rho(1, 1).real();
    return out;
}

Eigen::Matrix3cd drho_dparam(const Propagator& m, const InitialAmplitudes& c,
                             const InitialAmplitudes& dc) {
    const Eigen::Vector2cd a = m.m * Eigen::Vector2cd(c.c3, c.c2);
    const Eigen::Vector2cd da = m.m * Eigen::Vector2cd(dc.c3, dc.c2);
    const Complex a3 = a(0), a2 = a(1), da3 = da(0), da2 = da(1);

    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    d(0, 0) = 2.0 * std::real(da3 * std::conj(a3));
    d(1, 1) = 2.0 * std::real(da2 * std::conj(a2));
    d(0, 1) = da3 * std::conj(a2) + a3 * std::conj(da2);
    d(1, 0) = std::conj(d(0, 1));
    d(0, 2) = da3 * std::conj(c.c1) + a3 * std::conj(dc.c1);
    d(2, 0) = std::conj(d(0, 2));
    d(1, 2) = da2 * std::conj(c.c1) + a2 * std::conj(dc.c1);
    d(2, 1) = std::conj(d(1, 2));
    d(2, 2) = -d(0, 0) - d(1, 1);
    return d;
}

} // namespace vatom
