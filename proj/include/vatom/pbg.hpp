#pragma once

// Exact amplitude propagator for the V-type atom coupled to an isotropic
// photonic-band-gap reservoir. The inverse Laplace transform of the coupled
// amplitude equations splits into residues at the zeros of the dispersion
// functions Z and H (the two sheets of the square root in the reservoir
// kernel) plus a branch-cut integral evaluated by adaptive quadrature.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "vatom/free_space.hpp"
#include "vatom/numerics.hpp"

namespace vatom {

// Frequencies in units of the coupling rate beta (beta == 1 fixes the unit
// system); times in 1/beta.
struct PbgParams {
    double omega32 = 0.1; // upper-level splitting
    double omega3c = -1.0; // detuning of level 3 from the band edge

    double omega2c() const { return omega3c - omega32; }
};

// Principal sqrt(i x + omega3c): nonnegative real part, branch cut where
// i x + omega3c is negative real.
Complex sqrt_shifted(Complex x, const PbgParams& p);

enum class Sheet { Z, H };

// Z(x) or H(x) together with its analytic x-derivative on the same sheet.
// Z carries the principal radical, H the opposite sign.
std::pair<Complex, Complex> eval_ZH(Complex x, Sheet sheet, const PbgParams& p);

// One pole of the Laplace-domain amplitudes. x is the pole location; y is
// the value of sqrt(i x + omega3c) on the root's own sheet, which is all
// the residue formulas need.
struct ModeRoot {
    Complex x;
    Complex y;
};

struct ModeRoots {
    PbgParams params;
    std::vector<ModeRoot> z_roots; // sheet with Re sqrt > 0
    std::vector<ModeRoot> h_roots; // sheet with Re sqrt < 0 (and the
                                   // bound states on the sheet boundary)

    std::vector<ModeRoot> all() const {
        std::vector<ModeRoot> out = z_roots;
        out.insert(out.end(), h_roots.begin(), h_roots.end());
        return out;
    }
};

// The quintic in y = sqrt(i x + omega3c) obtained by clearing the radical
// from Z(x) = 0; its five roots cover both sheets.
ComplexPolynomial sheet_polynomial(const PbgParams& p);

// Solves the quintic, maps the roots back to the x-plane, keeps the ones the
// deformed inversion contour actually encircles, and polishes them. Roots of
// H on its sheet contribute except inside the quadrant
// {Re x < 0, Im x > omega3c} swept by rotating the cut; roots of Z
// contribute only inside that quadrant, where the rotated branch exposes the
// second sheet. Purely imaginary poles (photon-atom bound states) sit on the
// sheet boundary and are refined on the real subproblem so they stay exactly
// on the axis.
ModeRoots find_mode_roots(const PbgParams& p);

// Residue part of the propagator: columns are the amplitude solutions for
// initial data (1, 0) and (0, 1); the second row carries the e^{-i
// omega32 t} prefactor of the A2 inversion.
Eigen::Matrix2cd residue_sum(double t, const ModeRoots& roots);

// Branch-cut contribution R(t), organized the same way: column 1 is
// (R3, R2) for initial data (1, 0), column 2 for (0, 1).
Eigen::Matrix2cd branch_cut_columns(double t, const PbgParams& p,
                                    double tol = 1e-10);

// Full propagator M(t) = residues - R(t).
Propagator propagator_pbg(double t, const PbgParams& p, const ModeRoots& roots,
                          double tol = 1e-10);

} // namespace vatom
