#include "vatom/metrology.hpp"

#include <cmath>
#include <limits>

namespace vatom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual of the defining equation projected onto the support of rho.
double defining_defect(const Eigen::Matrix3cd& rho, const Eigen::Matrix3cd& drho,
                       const Eigen::Matrix3cd& l, const EigenSystem3& es, double rank_tol) {
    const Eigen::Matrix3cd res = drho - 0.5 * (rho * l + l * rho);
    double defect = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (es.eigenvalues(j) + es.eigenvalues(k) <= rank_tol) continue;
            const std::complex<double> elem =
                es.eigenvectors.col(j).adjoint() * res * es.eigenvectors.col(k);
            defect = std::max(defect, std::abs(elem));
        }
    }
    return defect;
}

} // namespace

SldOperator sld(const DensityMatrix3& rho, const Eigen::Matrix3cd& drho, double rank_tol) {
    if ((drho - drho.adjoint()).norm() > 1e-8)
        throw InvalidInputError("sld: drho must be Hermitian");
    if (std::abs(drho.trace()) > 1e-8)
        throw InvalidInputError("sld: drho must be traceless");

    const EigenSystem3 es = eigh3(rho.rho);

    Eigen::Matrix3cd l_eig = Eigen::Matrix3cd::Zero();
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const double denom = es.eigenvalues(j) + es.eigenvalues(k);
            if (denom <= rank_tol) continue;
            const std::complex<double> elem =
                es.eigenvectors.col(j).adjoint() * drho * es.eigenvectors.col(k);
            l_eig(j, k) = 2.0 * elem / denom;
        }
    }

    SldOperator out;
    out.l = es.eigenvectors * l_eig * es.eigenvectors.adjoint();
    out.l = 0.5 * (out.l + out.l.adjoint());

    if (defining_defect(rho.rho, drho, out.l, es, rank_tol) > 1e-6)
        throw SldInconsistencyError("sld: defining equation not satisfied on the support");
    return out;
}

QFIMatrix qfim(const DensityMatrix3& rho, const Eigen::Matrix3cd& drho_theta,
               const Eigen::Matrix3cd& drho_phi) {
    const Eigen::Matrix3cd lt = sld(rho, drho_theta).l;
    const Eigen::Matrix3cd lp = sld(rho, drho_phi).l;

    QFIMatrix f;
    f.f_tt = std::real((rho.rho * lt * lt).trace());
    f.f_pp = std::real((rho.rho * lp * lp).trace());
    f.f_tp = 0.5 * std::real((rho.rho * (lt * lp + lp * lt)).trace());
    return f;
}

std::pair<double, double> cramer_rao_single(const QFIMatrix& f) {
    const double dtheta = f.f_tt > 0.0 ? 1.0 / std::sqrt(f.f_tt) : kInf;
    const double dphi = f.f_pp > 0.0 ? 1.0 / std::sqrt(f.f_pp) : kInf;
    return {dtheta, dphi};
}

SigmaBound sigma_bound(const QFIMatrix& f) {
    const double det = f.f_tt * f.f_pp - f.f_tp * f.f_tp;
    if (det <= 1e-14)
        throw SingularFisherError("sigma_bound: Fisher matrix is singular");

    SigmaBound out;
    out.trace_inv = (f.f_tt + f.f_pp) / det;
    // Eigenvalues of F^{-1} are the reciprocals of those of F.
    const double half_tr = 0.5 * (f.f_tt + f.f_pp);
    const double disc = std::sqrt(std::max(half_tr * half_tr - det, 0.0));
    const double lam_max = half_tr + disc;
    out.min_eigenvalue = 1.0 / lam_max;
    return out;
}

double sigma_min(const QFIMatrix& f) { return sigma_bound(f).trace_inv; }

} // namespace vatom
