#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "vatom/numerics.hpp"

using namespace vatom;
using std::abs;

namespace {

// Test-only oracle: real roots of the (real-coefficient) characteristic
// cubic of a Hermitian matrix, by the trigonometric method.
std::array<double, 3> cubic_roots(double c2, double c1, double c0) {
    // lambda^3 + c2 lambda^2 + c1 lambda + c0 = 0, all roots real
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double r = std::sqrt(std::max(-p * p * p / 27.0, 0.0));
    double phi;
    if (r < 1e-300) phi = 0.0;
    else phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
    const double m = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
    std::array<double, 3> roots{m * std::cos(phi / 3.0) - c2 / 3.0,
                                m * std::cos((phi + 2.0 * M_PI) / 3.0) - c2 / 3.0,
                                m * std::cos((phi + 4.0 * M_PI) / 3.0) - c2 / 3.0};
    std::sort(roots.begin(), roots.end());
    return roots;
}

Eigen::Matrix3cd random_hermitian(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::Matrix3cd a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = Complex(u(rng), u(rng));
    return 0.5 * (a + a.adjoint()).eval();
}

// Fixed-panel Simpson rule in u = sqrt(x), independent of the adaptive
// Gauss-Kronrod path; the cross-rule reference for the quadrature oracle.
Complex simpson_reference(const std::function<Complex(double)>& f, double umax, int n) {
    Complex acc{0.0, 0.0};
    const double h = umax / n;
    for (int k = 0; k <= n; ++k) {
        const double u = k * h;
        const Complex g = (u == 0.0) ? Complex(0.0, 0.0) : 2.0 * u * f(u * u);
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        acc += w * g;
    }
    return acc * (h / 3.0);
}

} // namespace

TEST_CASE("polynomial roots: fifth roots of unity") {
    ComplexPolynomial p;
    p.coefficients = {Complex(-1, 0), {0, 0}, {0, 0}, {0, 0}, {0, 0}, Complex(1, 0)};
    const auto roots = solve_polynomial(p);
    REQUIRE(roots.size() == 5);
    for (const auto& r : roots) {
        CHECK(abs(abs(r) - 1.0) < 1e-10);
        CHECK(abs(p.eval(r)) < 1e-10);
    }
    // One of them is exactly 1.
    const bool has_one = std::any_of(roots.begin(), roots.end(),
                                     [](Complex r) { return abs(r - 1.0) < 1e-10; });
    CHECK(has_one);
}

TEST_CASE("polynomial roots: linear case") {
    ComplexPolynomial p;
    p.coefficients = {Complex(-2, -3), Complex(1, 0)};
    const auto roots = solve_polynomial(p);
    REQUIRE(roots.size() == 1);
    CHECK(abs(roots[0] - Complex(2, 3)) < 1e-14);
}

TEST_CASE("polynomial roots: recovers constructed roots") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> wanted(5);
        for (auto& r : wanted) r = Complex(u(rng), u(rng));
        // Build the monic polynomial by convolution with (z - r);
        // coefficients stay in ascending order throughout.
        std::vector<Complex> coeff{Complex(1, 0)};
        for (const auto& r : wanted) {
            std::vector<Complex> next(coeff.size() + 1, Complex(0, 0));
            for (std::size_t i = 0; i < coeff.size(); ++i) {
                next[i + 1] += coeff[i];
                next[i] -= r * coeff[i];
            }
            coeff = next;
        }
        ComplexPolynomial p;
        p.coefficients = coeff;
        auto roots = solve_polynomial(p);
        REQUIRE(roots.size() == 5);
        // Greedy matching is enough at these separations.
        for (const auto& w : wanted) {
            double best = 1e9;
            for (const auto& r : roots) best = std::min(best, abs(r - w));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("polynomial roots: residual bound and Vieta sum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 7);
        ComplexPolynomial p;
        p.coefficients.resize(d + 1);
        for (auto& c : p.coefficients) c = Complex(u(rng), u(rng));
        p.coefficients[d] += Complex(2.0, 0.0); // keep the leading term away from 0
        const auto roots = solve_polynomial(p);
        REQUIRE(static_cast<int>(roots.size()) == d);

        double max_coeff = 0.0;
        for (const auto& c : p.coefficients) max_coeff = std::max(max_coeff, abs(c));
        Complex sum{0, 0};
        for (const auto& r : roots) {
            sum += r;
            const double bound = 1e-10 * max_coeff * std::pow(std::max(1.0, abs(r)), d);
            CHECK(abs(p.eval(r)) <= bound);
        }
        const Complex vieta = -p.coefficients[d - 1] / p.coefficients[d];
        CHECK(abs(sum - vieta) < 1e-8);
    }
}

TEST_CASE("polynomial roots: zero polynomial rejected") {
    ComplexPolynomial p;
    p.coefficients = {Complex(0, 0), Complex(0, 0)};
    CHECK_THROWS_AS(solve_polynomial(p), InvalidInputError);
}

TEST_CASE("quadrature: exponential") {
    const auto r = integrate_semi_infinite([](double x) { return Complex(std::exp(-x), 0.0); },
                                           1.0, 1e-10);
    CHECK(abs(r.value - 1.0) < 1e-9);
    CHECK(r.evaluations >= 1);
    CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("quadrature: sqrt(x) exp(-x) = Gamma(3/2)") {
    const auto r = integrate_semi_infinite(
        [](double x) { return Complex(std::sqrt(x) * std::exp(-x), 0.0); }, 1.0, 1e-10);
    CHECK(abs(r.value - std::sqrt(M_PI) / 2.0) < 1e-9);
}

TEST_CASE("quadrature: branch-cut integrand against a second rule") {
    // The A2 cut integrand at t=1, omega3c=-1, omega32=0.1, theta=pi/2,
    // phi=0 (c3 = c2 = 1/sqrt(2)), up to the constant prefactor.
    const double t = 1.0, w3c = -1.0, w32 = 0.1;
    const double w2c = w3c - w32;
    const double c = 1.0 / std::sqrt(2.0);
    const auto f = [=](double x) -> Complex {
        const Complex a = x - Complex(0, w2c);
        const Complex b = x - Complex(0, w3c);
        const Complex den = x * a * a * b * b - Complex(0, 1) * (a + b) * (a + b);
        return std::exp(-x * t) * std::sqrt(x) * b * (c * a + c * b) / den;
    };
    const auto r = integrate_semi_infinite(f, t, 1e-10);
    // Reference: fixed Simpson in u with doubled resolution levels.
    const Complex ref1 = simpson_reference(f, 12.0, 8000);
    const Complex ref2 = simpson_reference(f, 12.0, 16000);
    CHECK(abs(ref1 - ref2) < 1e-10); // reference itself converged
    CHECK(abs(r.value - ref2) < 1e-8);
}

TEST_CASE("quadrature: reported error bounds the resolution-doubling change") {
    const auto f = [](double x) {
        return std::exp(-0.3 * x) * Complex(std::cos(x), std::sin(0.5 * x)) /
               (1.0 + x * std::sqrt(x));
    };
    const auto loose = integrate_semi_infinite(f, 0.3, 1e-6);
    const auto tight = integrate_semi_infinite(f, 0.3, 1e-12);
    CHECK(abs(loose.value - tight.value) <= 10.0 * std::max(loose.error_estimate, 1e-14));
}

TEST_CASE("eigh3: identity and diagonal") {
    const auto id = eigh3(Eigen::Matrix3cd::Identity());
    for (int i = 0; i < 3; ++i) CHECK(abs(id.eigenvalues(i) - 1.0) < 1e-14);

    Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
    d(0, 0) = 0.5;
    d(1, 1) = 0.2;
    d(2, 2) = 0.3;
    const auto es = eigh3(d);
    CHECK(abs(es.eigenvalues(0) - 0.2) < 1e-14);
    CHECK(abs(es.eigenvalues(1) - 0.3) < 1e-14);
    CHECK(abs(es.eigenvalues(2) - 0.5) < 1e-14);
}

TEST_CASE("eigh3: against the characteristic-polynomial oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Matrix3cd h = random_hermitian(rng);
        const auto es = eigh3(h);

        const double tr = h.trace().real();
        const double tr2 = (h * h).trace().real();
        const double det = h.determinant().real();
        const auto lam = cubic_roots(-tr, 0.5 * (tr * tr - tr2), -det);
        for (int i = 0; i < 3; ++i) CHECK(abs(es.eigenvalues(i) - lam[i]) < 1e-10);

        // Reconstruction and unitarity.
        const Eigen::Matrix3cd rec = es.eigenvectors *
                                     es.eigenvalues.cast<Complex>().asDiagonal() *
                                     es.eigenvectors.adjoint();
        CHECK((rec - h).norm() <= 1e-12 * std::max(1.0, h.norm()) + 1e-13);
        CHECK((es.eigenvectors.adjoint() * es.eigenvectors - Eigen::Matrix3cd::Identity())
                  .norm() < 1e-12);

        // Trace identity.
        CHECK(abs(es.eigenvalues.sum() - tr) <= 1e-12 * std::max(1.0, h.norm()));
    }
}

TEST_CASE("eigh3: eigenvalue continuity under small perturbation") {
    std::mt19937_64 rng(3);
    const Eigen::Matrix3cd h = random_hermitian(rng);
    const Eigen::Matrix3cd dh = 1e-8 * random_hermitian(rng);
    const auto a = eigh3(h);
    const auto b = eigh3((h + dh).eval());
    for (int i = 0; i < 3; ++i) CHECK(abs(a.eigenvalues(i) - b.eigenvalues(i)) < 1e-7);
}

TEST_CASE("eigh3: rejects non-Hermitian input") {
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(0, 1) = Complex(1.0, 0.0);
    CHECK_THROWS_AS(eigh3(h), InvalidInputError);
}

TEST_CASE("derivative_on_grid: constants, quadratics, sine oracle") {
    const std::vector<double> c(10, 3.5);
    for (double v : derivative_on_grid(c, 0.1)) CHECK(abs(v) < 1e-12);

    std::vector<double> sq, expected;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.05 * i;
        sq.push_back(t * t);
        expected.push_back(2.0 * t);
    }
    const auto dsq = derivative_on_grid(sq, 0.05);
    for (std::size_t i = 0; i < dsq.size(); ++i) CHECK(abs(dsq[i] - expected[i]) < 1e-12);

    std::vector<double> s;
    const double dt = 0.01;
    for (int i = 0; i <= 500; ++i) s.push_back(std::sin(dt * i));
    const auto ds = derivative_on_grid(s, dt);
    double max_err = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        max_err = std::max(max_err, abs(ds[i] - std::cos(dt * double(i))));
    CHECK(max_err <= 1e-4);
}

TEST_CASE("derivative_on_grid: rejects short series") {
    CHECK_THROWS_AS(derivative_on_grid({1.0, 2.0}, 0.1), InvalidInputError);
}
