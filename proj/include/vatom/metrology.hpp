#pragma once

// Symmetric logarithmic derivatives, the 2x2 quantum Fisher information
// matrix over (theta, phi), and the Cramer-Rao bounds built from it.

#include <Eigen/Dense>

#include "vatom/numerics.hpp"
#include "vatom/state.hpp"

namespace vatom {

struct QFIMatrix {
    double f_tt = 0.0; // theta-theta
    double f_tp = 0.0; // theta-phi (symmetric)
    double f_pp = 0.0; // phi-phi

    Eigen::Matrix2d matrix() const {
        Eigen::Matrix2d f;
        f << f_tt, f_tp, f_tp, f_pp;
        return f;
    }
};

struct SldOperator {
    Eigen::Matrix3cd l = Eigen::Matrix3cd::Zero();
};

inline constexpr double kSldRankTol = 1e-12;

// Solves d rho = (rho L + L rho)/2 spectrally: eigenpair components with
// lambda_j + lambda_k above rank_tol enter with weight 2/(lambda_j +
// lambda_k); kernel-kernel components are set to zero (they never reach the
// Fisher information). The defining equation is verified on the support of
// rho before returning.
SldOperator sld(const DensityMatrix3& rho, const Eigen::Matrix3cd& drho,
                double rank_tol = kSldRankTol);

// F_ij = Tr[rho (L_i L_j + L_j L_i)] / 2. The 1/2-symmetrized convention
// pins the t = 0 pure-state values at F_tt = 1 and F_pp = sin^2(theta).
QFIMatrix qfim(const DensityMatrix3& rho, const Eigen::Matrix3cd& drho_theta,
               const Eigen::Matrix3cd& drho_phi);

// Single-parameter bounds (Delta theta, Delta phi) = (F_tt^-1/2, F_pp^-1/2);
// infinity flags an unidentifiable parameter.
std::pair<double, double> cramer_rao_single(const QFIMatrix& f);

// Scalar bound for simultaneous estimation of both angles.
struct SigmaBound {
    double trace_inv = 0.0;       // tr F^{-1}, the reported Sigma_min
    double min_eigenvalue = 0.0;  // smallest eigenvalue of F^{-1}
};
SigmaBound sigma_bound(const QFIMatrix& f);
double sigma_min(const QFIMatrix& f); // trace_inv, throws if F is singular

} // namespace vatom
