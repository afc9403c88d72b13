#include "vatom/pbg.hpp"

#include <cmath>
#include <string>

namespace vatom {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kBeta32 = 1.0; // beta^{3/2} with beta == 1

// The real quintic whose roots v parametrize the purely imaginary poles
// x = i(omega3c + v^2) through y = i v. Obtained from the sheet polynomial
// restricted to the imaginary axis.
double axis_poly(double v, double s, double prod) {
    return ((((v + 0.0) * v + s) * v + 2.0 * kBeta32) * v + prod) * v + kBeta32 * s;
}

double axis_poly_deriv(double v, double s, double prod) {
    return ((5.0 * v * v + 3.0 * s) * v + 4.0 * kBeta32) * v + prod;
}

} // namespace

Complex sqrt_shifted(Complex x, const PbgParams& p) {
    return std::sqrt(kI * x + p.omega3c);
}

std::pair<Complex, Complex> eval_ZH(Complex x, Sheet sheet, const PbgParams& p) {
    const Complex w = kI * x + p.omega3c;
    if (std::abs(w) < 1e-14)
        throw SingularPointError("eval_ZH: x is at the branch point i*omega3c");
    Complex r = std::sqrt(w);
    if (sheet == Sheet::H) r = -r;

    const Complex iw32 = kI * p.omega32;
    const Complex two_x = 2.0 * x - iw32;
    const Complex value = x * (x - iw32) - two_x * kBeta32 / r;
    // d/dx [1/sqrt(i x + omega3c)] = -i / (2 r^3), same sheet.
    const Complex deriv = two_x - 2.0 * kBeta32 / r + 0.5 * kI * two_x * kBeta32 / (r * r * r);
    return {value, deriv};
}

ComplexPolynomial sheet_polynomial(const PbgParams& p) {
    const double s = p.omega3c + p.omega2c();
    const double prod = p.omega3c * p.omega2c();
    // y^5 - s y^3 - 2 i B y^2 + prod y + i B s, ascending order.
    ComplexPolynomial quintic;
    quintic.coefficients = {Complex(0.0, kBeta32 * s), Complex(prod, 0.0),
                            Complex(0.0, -2.0 * kBeta32), Complex(-s, 0.0),
                            Complex(0.0, 0.0), Complex(1.0, 0.0)};
    return quintic;
}

ModeRoots find_mode_roots(const PbgParams& p) {
    const ComplexPolynomial quintic = sheet_polynomial(p);
    std::vector<Complex> yroots = solve_polynomial(quintic);

    const double s = p.omega3c + p.omega2c();
    const double prod = p.omega3c * p.omega2c();

    ModeRoots out;
    out.params = p;
    for (Complex y : yroots) {
        // Polish on the quintic; equivalent to Newton on Z (or H) along the
        // root's own sheet through the y-parametrization.
        for (int it = 0; it < 12; ++it) {
            const Complex f = quintic.eval(y);
            const Complex df = quintic.eval_derivative(y);
            if (std::abs(df) < 1e-300) break;
            const Complex step = f / df;
            y -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(y))) break;
        }

        const double tol_y = 1e-12 * std::max(1.0, std::abs(y));
        const bool boundary = std::abs(y.real()) <= tol_y;

        if (boundary) {
            // Bound state: refine v on the real axis subproblem so the pole
            // lands exactly on the imaginary x-axis.
            double v = y.imag();
            for (int it = 0; it < 30; ++it) {
                const double f = axis_poly(v, s, prod);
                const double df = axis_poly_deriv(v, s, prod);
                if (std::abs(df) < 1e-300) break;
                const double step = f / df;
                v -= step;
                if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(v))) break;
            }
            // Only the sheet reached by continuing the physical radical onto
            // the axis (Im y < 0) is encircled by the inversion contour.
            if (v < 0.0) {
                const Complex yy(0.0, v);
                out.h_roots.push_back(ModeRoot{Complex(0.0, p.omega3c + v * v), yy});
            }
            continue;
        }

        const Complex x = kI * (p.omega3c - y * y);
        const bool in_swept_quadrant = (x.real() < 0.0) && (x.imag() > p.omega3c);
        if (y.real() > 0.0) {
            // Second sheet; exposed only inside the quadrant swept when the
            // cut is rotated from the imaginary axis to the horizontal ray.
            if (in_swept_quadrant) out.z_roots.push_back(ModeRoot{x, y});
        } else {
            // Physical sheet everywhere else.
            if (!in_swept_quadrant) out.h_roots.push_back(ModeRoot{x, y});
        }
    }
    return out;
}

Eigen::Matrix2cd residue_sum(double t, const ModeRoots& roots) {
    const PbgParams& p = roots.params;
    const Complex iw32 = kI * p.omega32;

    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (const ModeRoot& root : roots.all()) {
        const Complex x = root.x;
        const Complex y = root.y;
        const Complex two_x = 2.0 * x - iw32;
        const Complex dz = two_x - 2.0 * kBeta32 / y + 0.5 * kI * two_x * kBeta32 / (y * y * y);
        const Complex radical = kBeta32 / y;
        const Complex phase = std::exp(x * t);
        // Numerators for the two basis columns (c3, c2) = (1,0) and (0,1).
        m(0, 0) += (x - iw32 - radical) / dz * phase;
        m(0, 1) += radical / dz * phase;
        m(1, 0) += radical / dz * phase;
        m(1, 1) += (x - radical) / dz * phase;
    }
    const Complex row2 = std::exp(-iw32 * t);
    m(1, 0) *= row2;
    m(1, 1) *= row2;
    return m;
}

Eigen::Matrix2cd branch_cut_columns(double t, const PbgParams& p, double tol) {
    if (t < 0.0) throw InvalidInputError("branch_cut_columns: t must be >= 0");

    const Complex ia(0.0, p.omega2c()); // a = x - i omega2c
    const Complex ib(0.0, p.omega3c);   // b = x - i omega3c
    const double beta3 = kBeta32 * kBeta32;

    const auto integrand = [&](double x) -> std::array<Complex, 3> {
        const double xt = x * t;
        if (xt > 700.0) return {Complex(0, 0), Complex(0, 0), Complex(0, 0)};
        const Complex a = x - ia;
        const Complex b = x - ib;
        const Complex ab = a * b;
        const Complex apb = a + b;
        const Complex den = x * ab * ab - kI * apb * apb * beta3;
        const double den_scale = x * std::norm(ab) + std::norm(apb) * beta3;
        if (std::abs(den) < 1e-14 * std::max(den_scale, 1e-30))
            throw SingularPointError("branch_cut_columns: pole on the integration ray");
        const Complex common = std::exp(-xt) * std::sqrt(x) / den;
        return {common * a * a, common * ab, common * b * b};
    };

    QuadratureResultN<3> q;
    try {
        q = integrate_semi_infinite3(integrand, t, tol);
    } catch (const QuadratureFailureError& e) {
        throw QuadratureFailureError("branch_cut_columns at t = " + std::to_string(t) + ": " +
                                         e.what(),
                                     e.best_estimate, e.error_estimate);
    }

    const Complex prefactor = kBeta32 / M_PI * std::exp(Complex(0.0, -M_PI / 4.0));
    const Complex row3 = prefactor * std::exp(kI * p.omega3c * t);
    const Complex row2 = prefactor * std::exp(kI * p.omega2c() * t);

    Eigen::Matrix2cd r;
    r(0, 0) = row3 * q.value[0];
    r(0, 1) = row3 * q.value[1];
    r(1, 0) = row2 * q.value[1];
    r(1, 1) = row2 * q.value[2];
    return r;
}

Propagator propagator_pbg(double t, const PbgParams& p, const ModeRoots& roots, double tol) {
    if (t < 0.0) throw InvalidInputError("propagator_pbg: t must be >= 0");
    if (roots.params.omega32 != p.omega32 || roots.params.omega3c != p.omega3c)
        throw InvalidInputError("propagator_pbg: roots were computed for different parameters");

    Propagator out;
    out.t = t;
    out.m = residue_sum(t, roots) - branch_cut_columns(t, p, tol);
    return out;
}

} // namespace vatom
