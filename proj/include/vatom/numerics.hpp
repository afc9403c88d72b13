#pragma once

// Shared numerical kernels: complex polynomial roots, adaptive quadrature on
// [0, inf), 3x3 Hermitian eigendecomposition, finite differences on a grid.
// Everything here is a pure function; safe to call concurrently.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "vatom/errors.hpp"

namespace vatom {

using Complex = std::complex<double>;

// Polynomial with complex coefficients, ascending degree order.
struct ComplexPolynomial {
    std::vector<Complex> coefficients;

    // Degree after trimming negligible leading coefficients.
    int degree() const;
    Complex eval(Complex z) const;
    Complex eval_derivative(Complex z) const;
};

// Roots with multiplicity, via companion-matrix eigenvalues plus one Newton
// polish per root. Degree must be in [1, 16].
std::vector<Complex> solve_polynomial(const ComplexPolynomial& p);

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    long evaluations = 0;
};

inline constexpr double kDefaultQuadTol = 1e-9;

// Integral of f over (0, inf) for integrands that decay at least like
// x^(-3/2) and are allowed an integrable x^(+-1/2) factor at the origin.
// Internally substitutes u = sqrt(x) (absorbs the half-power endpoint
// behaviour), runs adaptive Gauss-Kronrod 7/15 panels on [0, X] with
// X = max(30, 30/decay_rate), and maps the remaining tail onto a finite
// interval instead of truncating it. decay_rate is the e^(-decay_rate*x)
// damping of the integrand (0 for pure power-law decay).
QuadratureResult integrate_semi_infinite(const std::function<Complex(double)>& f,
                                         double decay_rate, double tol = kDefaultQuadTol);

// Same scheme for integrands that produce several components sharing the
// evaluation points; the adaptive refinement is driven by the worst
// component. Used where a matrix of integrals shares one denominator.
template <std::size_t N>
struct QuadratureResultN {
    std::array<Complex, N> value{};
    double error_estimate = 0.0;
    long evaluations = 0;
};

QuadratureResultN<3> integrate_semi_infinite3(
    const std::function<std::array<Complex, 3>(double)>& f, double decay_rate,
    double tol = kDefaultQuadTol);

struct EigenSystem3 {
    Eigen::Vector3d eigenvalues;   // ascending
    Eigen::Matrix3cd eigenvectors; // unitary, columns
};

inline constexpr double kHermitianDefectTol = 1e-10;

// Eigendecomposition of a 3x3 Hermitian matrix. The input is symmetrized
// internally; a Hermiticity defect above kHermitianDefectTol (relative to
// the matrix norm) is rejected.
EigenSystem3 eigh3(const Eigen::Matrix3cd& h);

// Second-order first derivative of a uniformly sampled series: central
// differences in the interior, one-sided three-point stencils at the ends.
std::vector<double> derivative_on_grid(const std::vector<double>& values, double dt);

} // namespace vatom
