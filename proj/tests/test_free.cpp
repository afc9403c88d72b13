#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "vatom/free_space.hpp"

using namespace vatom;
using std::abs;
using Complex = std::complex<double>;

TEST_CASE("identity at t = 0") {
    const FreeParams p{1.0, 1.0, 0.5};
    const Propagator m = propagator_free(0.0, p);
    CHECK((m.m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-level limit: gamma21 = 0 decouples the levels") {
    const FreeParams p{1.3, 0.0, 0.7};
    for (double t : {0.1, 0.5, 1.0, 3.0, 7.0}) {
        const Propagator m = propagator_free(t, p);
        CHECK(abs(abs(m.m(0, 0)) - std::exp(-p.gamma31 * t)) < 1e-12);
        CHECK(abs(m.m(1, 0)) < 1e-12);
        CHECK(abs(m.m(0, 1)) < 1e-12);
        CHECK(abs(abs(m.m(1, 1)) - 1.0) < 1e-12); // gamma21 = 0: level 2 holds
        // population of level 3 decays at twice the amplitude rate
        CHECK(abs(std::norm(m.m(0, 0)) - std::exp(-2.0 * p.gamma31 * t)) < 1e-12);
    }
}

TEST_CASE("column norms bounded by one") {
    const FreeParams p{1.0, 0.6, 0.5};
    for (double t = 0.0; t <= 15.0; t += 0.05) {
        const Propagator m = propagator_free(t, p);
        CHECK(m.m.col(0).norm() <= 1.0 + 1e-12);
        CHECK(m.m.col(1).norm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("full decay for equal rates") {
    // With the splitting above the subradiance threshold both normal modes
    // decay at the bare rate and nothing survives 20 lifetimes.
    const FreeParams fast{1.0, 1.0, 2.5};
    CHECK(propagator_free(20.0, fast).m.norm() < 1e-6);

    // Below the threshold one mode is subradiant: decay is slow but still
    // complete.
    const FreeParams slow{1.0, 1.0, 0.5};
    const double m20 = propagator_free(20.0, slow).m.norm();
    CHECK(m20 > 1e-6); // subradiant tail is still alive at t = 20
    CHECK(propagator_free(600.0, slow).m.norm() < 1e-6);
}

TEST_CASE("continuity of the weak-coupling regime") {
    // gamma_bar ~ 1e-8 and 1e-7 must give indistinguishable propagators.
    const double g2a = 1e-16, g2b = 1e-14; // gamma_bar = 1e-8, 1e-7
    const FreeParams pa{1.0, g2a, 0.5};
    const FreeParams pb{1.0, g2b, 0.5};
    for (double t : {0.5, 2.0, 8.0}) {
        const Propagator ma = propagator_free(t, pa);
        const Propagator mb = propagator_free(t, pb);
        CHECK((ma.m - mb.m).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("confluent normal modes stay finite") {
    // omega32 = 2 gamma_bar makes q1 = q2; the closed form must not blow up.
    const FreeParams p{1.0, 1.0, 2.0};
    const Complex mu2 = 0.25 * p.lambda() * p.lambda() + p.gamma_bar() * p.gamma_bar();
    REQUIRE(abs(mu2) < 1e-14);
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
        const Propagator m = propagator_free(t, p);
        CHECK(std::isfinite(m.m.norm()));
        CHECK(m.m.col(0).norm() <= 1.0 + 1e-12);
    }
    // Cross-check against a slightly detuned system.
    const FreeParams p_eps{1.0, 1.0, 2.0 + 1e-7};
    const Propagator a = propagator_free(1.0, p);
    const Propagator b = propagator_free(1.0, p_eps);
    CHECK((a.m - b.m).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("local amplitude equations hold") {
    // dA3/dt = -g31 A3 - gbar e^{i w32 t} A2 (and the mirrored equation),
    // checked by central differences on both basis columns.
    const FreeParams p{1.0, 0.7, 0.5};
    const double h = 1e-6;
    for (double t : {0.2, 1.0, 2.7}) {
        const Eigen::Matrix2cd mm = propagator_free(t, p).m;
        const Eigen::Matrix2cd dm =
            (propagator_free(t + h, p).m - propagator_free(t - h, p).m) / (2.0 * h);
        const Complex pw = std::exp(Complex(0.0, p.omega32 * t));
        for (int c = 0; c < 2; ++c) {
            const Complex r3 = dm(0, c) + p.gamma31 * mm(0, c) + p.gamma_bar() * pw * mm(1, c);
            const Complex r2 = dm(1, c) + p.gamma21 * mm(1, c) + p.gamma_bar() / pw * mm(0, c);
            CHECK(abs(r3) < 1e-7);
            CHECK(abs(r2) < 1e-7);
        }
    }
}

TEST_CASE("invalid parameters rejected") {
    CHECK_THROWS_AS(propagator_free(1.0, FreeParams{0.0, 1.0, 0.5}), InvalidInputError);
    CHECK_THROWS_AS(propagator_free(1.0, FreeParams{1.0, -0.1, 0.5}), InvalidInputError);
    CHECK_THROWS_AS(propagator_free(-1.0, FreeParams{1.0, 1.0, 0.5}), InvalidInputError);
}
