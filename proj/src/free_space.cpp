#include "vatom/free_space.hpp"

#include <cmath>

namespace vatom {

namespace {

using Complex = std::complex<double>;

// sinh(z)/z, stable near z = 0.
Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
    }
    return std::sinh(z) / z;
}

} // namespace

double FreeParams::gamma_bar() const { return std::sqrt(gamma31 * gamma21); }

void FreeParams::validate() const {
    if (!(gamma31 > 0.0)) throw InvalidInputError("FreeParams: gamma31 must be > 0");
    if (gamma21 < 0.0) throw InvalidInputError("FreeParams: gamma21 must be >= 0");
}

Propagator propagator_free(double t, const FreeParams& p) {
    p.validate();
    if (t < 0.0) throw InvalidInputError("propagator_free: t must be >= 0");

    const Complex half_lambda = 0.5 * p.lambda();
    const double gbar = p.gamma_bar();
    const Complex mu = std::sqrt(half_lambda * half_lambda + gbar * gbar);

    // exp(A t) for A = [[0, -gbar], [-gbar, lambda]] via its characteristic
    // pair q^2 - lambda q - gbar^2 = 0.
    const Complex ch = std::cosh(mu * t);
    const Complex sh_over_mu = t * sinhc(mu * t); // sinh(mu t)/mu
    const Complex e_half = std::exp(half_lambda * t);

    const Complex row1 = std::exp(Complex(-p.gamma31 * t, 0.0)) * e_half;
    const Complex row2 = std::exp(Complex(-p.gamma31 * t, -p.omega32 * t)) * e_half;

    Propagator out;
    out.t = t;
    out.m(0, 0) = row1 * (ch - half_lambda * sh_over_mu);
    out.m(0, 1) = row1 * (-gbar * sh_over_mu);
    out.m(1, 0) = row2 * (-gbar * sh_over_mu);
    out.m(1, 1) = row2 * (ch + half_lambda * sh_over_mu);
    return out;
}

} // namespace vatom
