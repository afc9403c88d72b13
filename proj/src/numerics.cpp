#include "vatom/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace vatom {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

} // namespace

int ComplexPolynomial::degree() const {
    int d = static_cast<int>(coefficients.size()) - 1;
    while (d > 0 && std::abs(coefficients[d]) == 0.0) --d;
    return d;
}

Complex ComplexPolynomial::eval(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex ComplexPolynomial::eval_derivative(Complex z) const {
    Complex acc(0.0, 0.0);
    const int n = static_cast<int>(coefficients.size());
    for (int k = n - 1; k >= 1; --k) acc = acc * z + double(k) * coefficients[k];
    return acc;
}

std::vector<Complex> solve_polynomial(const ComplexPolynomial& p) {
    double max_mag = 0.0;
    for (const auto& c : p.coefficients) max_mag = std::max(max_mag, std::abs(c));
    if (max_mag == 0.0 || p.coefficients.empty())
        throw InvalidInputError("solve_polynomial: zero polynomial");

    int d = static_cast<int>(p.coefficients.size()) - 1;
    while (d > 0 && std::abs(p.coefficients[d]) <= 1e-300) --d;
    if (d < 1) throw InvalidInputError("solve_polynomial: degree must be >= 1");
    if (d > 16) throw InvalidInputError("solve_polynomial: degree must be <= 16");

    if (d == 1) return {-p.coefficients[0] / p.coefficients[1]};

    // Monic companion matrix.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    const Complex lead = p.coefficients[d];
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -p.coefficients[i] / lead;
    for (int i = 1; i < d; ++i) comp(i, i - 1) = Complex(1.0, 0.0);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw InvalidInputError("solve_polynomial: companion eigensolve failed");

    std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
    // One Newton step tightens each root without risking divergence.
    for (auto& r : roots) {
        const Complex dp = p.eval_derivative(r);
        if (std::abs(dp) > 1e-300) {
            const Complex step = p.eval(r) / dp;
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) r -= step;
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

namespace {

template <std::size_t N>
using ArrayFn = std::function<std::array<Complex, N>(double)>;

template <std::size_t N>
std::array<Complex, N> scaled(std::array<Complex, N> v, double s) {
    for (auto& c : v) c *= s;
    return v;
}

template <std::size_t N>
struct Panel {
    int side; // 0 = head [0, U], 1 = mapped tail
    double a, b;
    std::array<Complex, N> value;
    double error;
};

template <std::size_t N>
Panel<N> gk15(const ArrayFn<N>& g, int side, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<Complex, N> k15{};
    std::array<Complex, N> g7{};
    const auto fc = g(mid);
    ++evals;
    for (std::size_t j = 0; j < N; ++j) {
        k15[j] = kWgk[7] * fc[j];
        g7[j] = kWg[3] * fc[j];
    }
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const auto fl = g(mid - dx);
        const auto fr = g(mid + dx);
        evals += 2;
        for (std::size_t j = 0; j < N; ++j) {
            const Complex s = fl[j] + fr[j];
            k15[j] += kWgk[i] * s;
            if (i % 2 == 1) g7[j] += kWg[i / 2] * s;
        }
    }
    double err = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        k15[j] *= half;
        g7[j] *= half;
        err = std::max(err, std::abs(k15[j] - g7[j]));
    }
    return Panel<N>{side, a, b, k15, err};
}

// Adaptive scheme shared by the scalar and 4-component entry points.
template <std::size_t N>
QuadratureResultN<N> integrate_impl(const ArrayFn<N>& f, double decay_rate, double tol) {
    if (!(tol > 0.0)) throw InvalidInputError("integrate_semi_infinite: tol must be > 0");
    if (decay_rate < 0.0)
        throw InvalidInputError("integrate_semi_infinite: decay_rate must be >= 0");

    // Finite part [0, X]: X from the exponential damping, capped because the
    // mapped tail carries whatever power-law remainder is left.
    const double X = std::max(30.0, std::min(30.0 / std::max(decay_rate, 1e-12), 3000.0));
    const double U = std::sqrt(X);

    long evals = 0;
    // u = sqrt(x) on [0, U] absorbs the x^(+-1/2) endpoint behaviour;
    // v = U/u maps [U, inf) onto (0, 1].
    const ArrayFn<N> g_head = [&f](double u) { return scaled<N>(f(u * u), 2.0 * u); };
    const ArrayFn<N> g_tail = [&f, U](double v) {
        const double u = U / v;
        return scaled<N>(f(u * u), 2.0 * u * U / (v * v));
    };
    const auto eval_panel = [&](int side, double a, double b) {
        return gk15<N>(side == 0 ? g_head : g_tail, side, a, b, evals);
    };

    auto cmp = [](const Panel<N>& a, const Panel<N>& b) { return a.error < b.error; };
    std::priority_queue<Panel<N>, std::vector<Panel<N>>, decltype(cmp)> queue(cmp);

    std::array<Complex, N> total{};
    double total_err = 0.0;
    const auto push = [&](Panel<N> p) {
        for (std::size_t j = 0; j < N; ++j) total[j] += p.value[j];
        total_err += p.error;
        queue.push(std::move(p));
    };

    // Seed panels: geometric toward u = 0 where the structure concentrates.
    double lo = 0.0;
    for (double hi = U / 128.0; hi < U; hi *= 2.0) {
        push(eval_panel(0, lo, hi));
        lo = hi;
    }
    push(eval_panel(0, lo, U));
    push(eval_panel(1, 0.0, 0.25));
    push(eval_panel(1, 0.25, 0.5));
    push(eval_panel(1, 0.5, 1.0));

    constexpr int kMaxPanels = 800;
    int n_panels = static_cast<int>(queue.size());
    while (true) {
        double max_mag = 0.0;
        for (std::size_t j = 0; j < N; ++j) max_mag = std::max(max_mag, std::abs(total[j]));
        if (total_err <= std::max(tol, tol * max_mag)) break;
        if (n_panels >= kMaxPanels)
            throw QuadratureFailureError("integrate_semi_infinite: no convergence", total[0],
                                         total_err);
        Panel<N> worst = queue.top();
        queue.pop();
        for (std::size_t j = 0; j < N; ++j) total[j] -= worst.value[j];
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        push(eval_panel(worst.side, worst.a, mid));
        push(eval_panel(worst.side, mid, worst.b));
        ++n_panels;
    }

    QuadratureResultN<N> out;
    out.value = total;
    out.error_estimate = std::max(total_err, 0.0);
    out.evaluations = std::max(evals, 1L);
    return out;
}

} // namespace

QuadratureResult integrate_semi_infinite(const std::function<Complex(double)>& f,
                                         double decay_rate, double tol) {
    const ArrayFn<1> wrapped = [&f](double x) { return std::array<Complex, 1>{f(x)}; };
    const auto r = integrate_impl<1>(wrapped, decay_rate, tol);
    return QuadratureResult{r.value[0], r.error_estimate, r.evaluations};
}

QuadratureResultN<3> integrate_semi_infinite3(
    const std::function<std::array<Complex, 3>(double)>& f, double decay_rate, double tol) {
    return integrate_impl<3>(f, decay_rate, tol);
}

EigenSystem3 eigh3(const Eigen::Matrix3cd& h) {
    const double scale = std::max(h.norm(), 1e-300);
    const double defect = (h - h.adjoint()).norm();
    if (defect > kHermitianDefectTol * std::max(1.0, scale))
        throw InvalidInputError("eigh3: input is not Hermitian within tolerance");

    const Eigen::Matrix3cd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(sym);
    if (solver.info() != Eigen::Success) throw InvalidInputError("eigh3: eigensolve failed");
    return EigenSystem3{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> derivative_on_grid(const std::vector<double>& values, double dt) {
    const std::size_t n = values.size();
    if (n < 3) throw InvalidInputError("derivative_on_grid: need at least 3 samples");
    if (!(dt > 0.0)) throw InvalidInputError("derivative_on_grid: dt must be > 0");

    std::vector<double> out(n);
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * dt);
    return out;
}

} // namespace vatom
