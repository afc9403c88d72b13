#include "vatom/oracle.hpp"

#include <cmath>

namespace vatom {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

struct Track {
    std::vector<double> t;
    // Per basis column: amplitudes and their 4th-order derivatives.
    std::vector<Complex> a3[2], a2[2], da3[2], da2[2];
    double dt = 0.0;
};

Track unpack(const std::vector<Propagator>& track) {
    if (track.size() < 7) throw InvalidInputError("kernel check: track too short");
    Track out;
    const std::size_t n = track.size();
    out.dt = track[1].t - track[0].t;
    if (!(out.dt > 0.0) || out.dt > 0.01 + 1e-12)
        throw InvalidInputError("kernel check: grid too coarse (need dt <= 0.01)");
    out.t.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.t[i] = track[i].t;
        if (std::abs(out.t[i] - (out.t[0] + double(i) * out.dt)) > 1e-9)
            throw InvalidInputError("kernel check: grid must be uniform");
        for (int c = 0; c < 2; ++c) {
            out.a3[c].push_back(track[i].m(0, c));
            out.a2[c].push_back(track[i].m(1, c));
        }
    }
    for (int c = 0; c < 2; ++c) {
        out.da3[c].resize(n);
        out.da2[c].resize(n);
        for (std::size_t i = 2; i + 2 < n; ++i) {
            const auto d4 = [&](const std::vector<Complex>& a) {
                return (a[i - 2] - 8.0 * a[i - 1] + 8.0 * a[i + 1] - a[i + 2]) / (12.0 * out.dt);
            };
            out.da3[c][i] = d4(out.a3[c]);
            out.da2[c][i] = d4(out.a2[c]);
        }
    }
    return out;
}

// Cubic Lagrange interpolation on the uniform grid.
Complex interp(const std::vector<Complex>& a, double dt, double t) {
    const double s = t / dt;
    long j = static_cast<long>(std::floor(s)) - 1;
    const long n = static_cast<long>(a.size());
    j = std::max(0L, std::min(j, n - 4));
    const double u = s - double(j);
    // Lagrange weights at offsets 0..3.
    const double w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return w0 * a[j] + w1 * a[j + 1] + w2 * a[j + 2] + w3 * a[j + 3];
}

// Memory convolution int_0^t K(tau) A(t - tau) dtau for the band-edge kernel
// K(tau) = scale * e^{i(delta tau - pi/4)} / sqrt(pi tau), with u = sqrt(tau)
// absorbing the endpoint singularity.
Complex band_edge_convolution(const std::vector<Complex>& a, double dt, double t, double delta,
                              double scale) {
    if (t <= 0.0) return {0.0, 0.0};
    const double umax = std::sqrt(t);
    const int m = std::max(24, 2 * static_cast<int>(std::ceil(umax / 0.005)) );
    const double h = umax / m;
    // Composite Simpson in u.
    Complex acc{0.0, 0.0};
    for (int k = 0; k <= m; ++k) {
        const double u = k * h;
        const double tau = u * u;
        const Complex f = std::exp(kI * (delta * tau)) * interp(a, dt, t - tau);
        const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * f;
    }
    acc *= h / 3.0;
    return scale * 2.0 / std::sqrt(M_PI) * std::exp(Complex(0.0, -M_PI / 4.0)) * acc;
}

} // namespace

KernelReport check_kernel_consistency_detailed(const std::vector<Propagator>& track,
                                               const FreeParams& p, double kernel_scale) {
    const Track tr = unpack(track);
    const double gbar = p.gamma_bar();
    KernelReport rep;
    const std::size_t i0 = std::max<std::size_t>(4, std::ceil(0.05 / tr.dt));
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = i0; i + 2 < tr.t.size(); ++i) {
            const double t = tr.t[i];
            const Complex pw = std::exp(kI * p.omega32 * t);
            const Complex r3 = tr.da3[c][i] + kernel_scale * (p.gamma31 * tr.a3[c][i] +
                                                              gbar * pw * tr.a2[c][i]);
            const Complex r2s = tr.da2[c][i] + kernel_scale * (p.gamma21 * tr.a2[c][i] +
                                                               gbar / pw * tr.a3[c][i]);
            const Complex r2p = tr.da2[c][i] + kernel_scale * (p.gamma21 * tr.a2[c][i] +
                                                               gbar / pw * tr.a2[c][i]);
            rep.abs_eq3 = std::max(rep.abs_eq3, std::abs(r3));
            rep.abs_eq2_symmetric = std::max(rep.abs_eq2_symmetric, std::abs(r2s));
            rep.abs_eq2_printed = std::max(rep.abs_eq2_printed, std::abs(r2p));
            rep.derivative_scale = std::max({rep.derivative_scale, std::abs(tr.da3[c][i]),
                                             std::abs(tr.da2[c][i])});
        }
    }
    return rep;
}

KernelReport check_kernel_consistency_detailed(const std::vector<Propagator>& track,
                                               const PbgParams& p, double kernel_scale) {
    const Track tr = unpack(track);
    const double w3c = p.omega3c;
    const double w2c = p.omega2c();
    KernelReport rep;
    // The residual starts at a fixed time offset: the amplitudes leave t = 0
    // with a t^{3/2} half-power that difference stencils cannot represent.
    // The t = 0 neighbourhood is covered by the completeness identity.
    const std::size_t i0 = std::max<std::size_t>(4, std::ceil(0.05 / tr.dt));
    for (int c = 0; c < 2; ++c) {
        for (std::size_t i = i0; i + 2 < tr.t.size(); ++i) {
            const double t = tr.t[i];
            const Complex pw = std::exp(kI * p.omega32 * t);
            // dA3/dt = -conv(G_3c, A3) - e^{+i w32 t} conv(G_2c, A2)
            const Complex i33 = band_edge_convolution(tr.a3[c], tr.dt, t, w3c, kernel_scale);
            const Complex i32 = band_edge_convolution(tr.a2[c], tr.dt, t, w2c, kernel_scale);
            const Complex r3 = tr.da3[c][i] + i33 + pw * i32;
            // dA2/dt = -conv(G_2c, A2) - e^{-i w32 t} conv(G_3c, A3)
            const Complex i22 = band_edge_convolution(tr.a2[c], tr.dt, t, w2c, kernel_scale);
            const Complex i23 = band_edge_convolution(tr.a3[c], tr.dt, t, w3c, kernel_scale);
            const Complex r2s = tr.da2[c][i] + i22 + i23 / pw;
            // As-printed variant keeps A2 in the cross term.
            const Complex i23p = band_edge_convolution(tr.a2[c], tr.dt, t, w3c, kernel_scale);
            const Complex r2p = tr.da2[c][i] + i22 + i23p / pw;
            rep.abs_eq3 = std::max(rep.abs_eq3, std::abs(r3));
            rep.abs_eq2_symmetric = std::max(rep.abs_eq2_symmetric, std::abs(r2s));
            rep.abs_eq2_printed = std::max(rep.abs_eq2_printed, std::abs(r2p));
            rep.derivative_scale = std::max({rep.derivative_scale, std::abs(tr.da3[c][i]),
                                             std::abs(tr.da2[c][i])});
        }
    }
    return rep;
}

double check_kernel_consistency(const std::vector<Propagator>& track, const FreeParams& p) {
    return check_kernel_consistency_detailed(track, p).relative();
}

double check_kernel_consistency(const std::vector<Propagator>& track, const PbgParams& p) {
    return check_kernel_consistency_detailed(track, p).relative();
}

std::vector<ReservoirMode> make_free_modes(int n_modes, double band_halfwidth) {
    if (n_modes < 500) throw InvalidInputError("mode sum: need n_modes >= 500");
    if (!(band_halfwidth > 0.0)) throw InvalidInputError("mode sum: band_halfwidth must be > 0");
    const double dw = 2.0 * band_halfwidth / n_modes;
    std::vector<ReservoirMode> modes(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        modes[j].omega = -band_halfwidth + (j + 0.5) * dw;
        modes[j].g = std::sqrt(dw / M_PI);
    }
    return modes;
}

std::vector<ReservoirMode> make_pbg_modes(int n_modes, double band_halfwidth,
                                          const PbgParams& p) {
    if (n_modes < 500) throw InvalidInputError("mode sum: need n_modes >= 500");
    if (!(band_halfwidth > 0.0)) throw InvalidInputError("mode sum: band_halfwidth must be > 0");
    const double vmax = std::sqrt(band_halfwidth);
    const double dv = vmax / n_modes;
    std::vector<ReservoirMode> modes(n_modes);
    for (int j = 0; j < n_modes; ++j) {
        const double v = (j + 0.5) * dv;
        modes[j].omega = v * v - p.omega3c; // detuning from the |a3> transition
        modes[j].g = std::sqrt(2.0 * dv / M_PI);
    }
    return modes;
}

namespace {

// Shared RK4 driver. g3[k], g2[k] are the per-transition couplings.
ModeSumResult rk4_modes(const std::vector<double>& delta31, const std::vector<double>& g3,
                        const std::vector<double>& g2, double omega32,
                        const std::vector<double>& t_grid, Complex c3, Complex c2,
                        double internal_dt) {
    if (t_grid.size() < 2) throw InvalidInputError("mode sum: need at least 2 grid times");
    const std::size_t n = delta31.size();
    double wmax = std::abs(omega32);
    for (double d : delta31) wmax = std::max(wmax, std::abs(d));
    const double dt_grid = t_grid[1] - t_grid[0];
    const double dt_target =
        internal_dt > 0.0 ? internal_dt : std::min(dt_grid, 0.1 / std::max(wmax, 1.0));
    const int sub = std::max(1, static_cast<int>(std::ceil(dt_grid / dt_target)));
    const double h = dt_grid / sub;

    std::vector<Complex> state(n + 2, Complex(0.0, 0.0));
    state[0] = c3;
    state[1] = c2;

    std::vector<Complex> k1(n + 2), k2(n + 2), k3(n + 2), k4(n + 2), tmp(n + 2),
        phase(n);
    const auto rhs = [&](const std::vector<Complex>& s, double t, std::vector<Complex>& out) {
        const Complex pw = std::exp(kI * omega32 * t);
        Complex acc3{0.0, 0.0}, acc2{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            phase[k] = std::exp(kI * delta31[k] * t);
            const Complex ak_rot = s[k + 2] * std::conj(phase[k]);
            acc3 += g3[k] * ak_rot;
            acc2 += g2[k] * ak_rot;
        }
        out[0] = -acc3;
        out[1] = -std::conj(pw) * acc2;
        const Complex drive3 = s[0];
        const Complex drive2 = pw * s[1];
        for (std::size_t k = 0; k < n; ++k)
            out[k + 2] = phase[k] * (g3[k] * drive3 + g2[k] * drive2);
    };

    ModeSumResult res;
    res.times = t_grid;
    res.a3.reserve(t_grid.size());
    res.a2.reserve(t_grid.size());
    res.a3.push_back(state[0]);
    res.a2.push_back(state[1]);

    double t = t_grid[0];
    for (std::size_t gi = 1; gi < t_grid.size(); ++gi) {
        for (int step = 0; step < sub; ++step) {
            rhs(state, t, k1);
            for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * h * k1[j];
            rhs(tmp, t + 0.5 * h, k2);
            for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * h * k2[j];
            rhs(tmp, t + 0.5 * h, k3);
            for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + h * k3[j];
            rhs(tmp, t + h, k4);
            for (std::size_t j = 0; j < state.size(); ++j)
                state[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            t += h;
        }
        double norm2 = 0.0;
        for (const Complex& s : state) norm2 += std::norm(s);
        res.max_norm_drift = std::max(res.max_norm_drift, std::abs(norm2 - 1.0));
        if (res.max_norm_drift > 1e-6)
            throw IntegrationError("mode_sum_evolve: unitarity lost (step size too large)");
        res.a3.push_back(state[0]);
        res.a2.push_back(state[1]);
    }
    return res;
}

} // namespace

ModeSumResult mode_sum_evolve(const FreeParams& p, int n_modes, double band_halfwidth,
                              const std::vector<double>& t_grid, Complex c3, Complex c2,
                              double internal_dt) {
    p.validate();
    const auto modes = make_free_modes(n_modes, band_halfwidth);
    std::vector<double> delta(n_modes), g3(n_modes), g2(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        delta[k] = modes[k].omega;
        g3[k] = std::sqrt(p.gamma31) * modes[k].g;
        g2[k] = std::sqrt(p.gamma21) * modes[k].g;
    }
    return rk4_modes(delta, g3, g2, p.omega32, t_grid, c3, c2, internal_dt);
}

ModeSumResult mode_sum_evolve(const PbgParams& p, int n_modes, double band_halfwidth,
                              const std::vector<double>& t_grid, Complex c3, Complex c2,
                              double internal_dt) {
    const auto modes = make_pbg_modes(n_modes, band_halfwidth, p);
    std::vector<double> delta(n_modes), g3(n_modes), g2(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        delta[k] = modes[k].omega;
        g3[k] = modes[k].g;
        g2[k] = modes[k].g;
    }
    return rk4_modes(delta, g3, g2, p.omega32, t_grid, c3, c2, internal_dt);
}

} // namespace vatom
