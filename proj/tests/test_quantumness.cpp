#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vatom/pbg.hpp"
#include "vatom/quantumness.hpp"
#include "vatom/scenario.hpp"

using namespace vatom;
using std::abs;

TEST_CASE("coherence_l1: diagonal, two-level closed form, qutrit") {
    DensityMatrix3 diag;
    diag.rho = Eigen::Vector3cd(0.2, 0.3, 0.5).asDiagonal();
    CHECK(coherence_l1(diag) == 0.0);

    Propagator id;
    for (double theta : {0.4, M_PI / 2.0, 2.2}) {
        const auto c = initial_amplitudes(theta, 0.7, StateKind::TwoLevel);
        CHECK(abs(coherence_l1(density_matrix(id, c)) - std::sin(theta)) < 1e-12);
    }
    const auto q = initial_amplitudes(M_PI / 2.0, 2.0, StateKind::QutritHSS);
    CHECK(abs(coherence_l1(density_matrix(id, q)) - 2.0) < 1e-12);
}

TEST_CASE("hss: zero, qutrit t = 0 value, homogeneity") {
    CHECK(hss(Eigen::Matrix3cd::Zero()) == 0.0);

    // Worked pure-state value for the phase-encoded qutrit at t = 0:
    // Tr[(d rho/d phi)^2] = 4/9, so HSS = sqrt(2)/3.
    Propagator id;
    const auto c = initial_amplitudes(M_PI / 2.0, 1.3, StateKind::QutritHSS);
    const auto dc = amplitude_derivatives(M_PI / 2.0, 1.3, StateKind::QutritHSS);
    const auto drho = drho_dparam(id, c, dc.d_phi);
    CHECK(abs(hss(drho) - std::sqrt(2.0) / 3.0) < 1e-12);
    CHECK(abs(hss(drho) - 0.47140452079103168) < 1e-12);

    CHECK(abs(hss((2.0 * drho).eval()) - 2.0 * hss(drho)) < 1e-12);
}

TEST_CASE("hss_witness: monotone series has no backflow") {
    ObservableTrack track;
    track.name = "hss";
    for (int i = 0; i <= 200; ++i) {
        track.times.push_back(0.01 * i);
        track.values.push_back(std::exp(-0.3 * 0.01 * i));
    }
    const auto w = hss_witness(track);
    for (double v : w.chi.values) CHECK(v <= 0.0);
    CHECK(w.backflow_integral == 0.0);
}

TEST_CASE("hss_witness: sine series flags the rising intervals") {
    ObservableTrack track;
    track.name = "hss";
    const double dt = 0.01;
    for (int i = 0; i <= 628; ++i) {
        track.times.push_back(dt * i);
        track.values.push_back(std::sin(dt * i));
    }
    const auto w = hss_witness(track);
    for (std::size_t i = 0; i < w.chi.values.size(); ++i) {
        const double c = std::cos(track.times[i]);
        if (std::abs(c) > 1e-3) CHECK((w.chi.values[i] > 0.0) == (c > 0.0));
        CHECK(abs(w.chi.values[i] - c) < 1e-3);
    }
    // integral of cos over its positive lobes on [0, 2 pi] is 2
    CHECK(abs(w.backflow_integral - 2.0) < 1e-2);
}

TEST_CASE("hss_witness: input validation") {
    ObservableTrack bad;
    bad.name = "hss";
    bad.times = {0.0, 0.1};
    bad.values = {1.0, 0.9};
    CHECK_THROWS_AS(hss_witness(bad), InvalidInputError);
}

TEST_CASE("band-gap scenario shows information backflow; free space does not") {
    ScenarioConfig cfg;
    cfg.name = "witness";
    cfg.environment = Environment::Pbg;
    cfg.omega3c = -1.0;
    cfg.omega32 = 0.1;
    cfg.state_kind = StateKind::QutritHSS;
    cfg.phi = 0.0;
    cfg.t_max = 10.0;
    cfg.dt = 0.01;
    cfg.observables = {"hss", "chi"};

    const auto pbg = compute_scenario(cfg);
    REQUIRE(pbg.size() == 1);
    CHECK(pbg[0].chi_backflow_integral > 1e-3);

    cfg.environment = Environment::Free;
    cfg.gamma31 = cfg.gamma21 = 1.0;
    cfg.omega32 = 0.5;
    const auto fre = compute_scenario(cfg);
    double max_chi = -1e9;
    for (double v : fre[0].tracks.at("chi").values) max_chi = std::max(max_chi, v);
    CHECK(max_chi <= 1e-6);
}

TEST_CASE("hss tracks coincide for phase pairs (0, pi) and (pi/2, 3pi/2)") {
    ScenarioConfig cfg;
    cfg.environment = Environment::Pbg;
    cfg.omega3c = -1.0;
    cfg.omega32 = 0.1;
    cfg.state_kind = StateKind::QutritHSS;
    cfg.t_max = 5.0;
    cfg.dt = 0.01;
    cfg.observables = {"hss"};
    cfg.sweep = {0.0, M_PI / 2.0, M_PI, 1.5 * M_PI};
    cfg.sweep_param = "phi";

    const auto runs = compute_scenario(cfg);
    REQUIRE(runs.size() == 4);
    const auto& h0 = runs[0].tracks.at("hss").values;
    const auto& h1 = runs[1].tracks.at("hss").values;
    const auto& h2 = runs[2].tracks.at("hss").values;
    const auto& h3 = runs[3].tracks.at("hss").values;
    double d02 = 0.0, d13 = 0.0;
    for (std::size_t i = 0; i < h0.size(); ++i) {
        d02 = std::max(d02, abs(h0[i] - h2[i]));
        d13 = std::max(d13, abs(h1[i] - h3[i]));
    }
    CHECK(d02 < 1e-8);
    CHECK(d13 < 1e-8);
}
