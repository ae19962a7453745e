#pragma once

// Dense least-squares kernels shared by the estimators, the unit-root tests and the
// simulation engine. Header-only and templated on the Eigen expression type so that
// callers can pass blocks, maps or column expressions without copies.

#include "airborne/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace airborne::linreg {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct LeastSquares {
    Vector<Scalar> coefficients;
    Vector<Scalar> residuals;
    Matrix<Scalar> xtx_inverse;  ///< (X'X)^{-1}
    Scalar ssr = 0;              ///< sum of squared residuals

    Eigen::Index observations() const { return residuals.size(); }
    Eigen::Index parameters() const { return coefficients.size(); }

    /// Classical s^2 (X'X)^{-1} covariance with s^2 = SSR / (T - p).
    Matrix<Scalar> classical_covariance() const {
        return xtx_inverse * (ssr / static_cast<Scalar>(observations() - parameters()));
    }
};

/// Minimizes ||y - X b||. Throws RankDeficient when T <= p or X lacks full column rank.
template <typename DerivedX, typename DerivedY>
LeastSquares<typename DerivedX::Scalar> least_squares(const Eigen::MatrixBase<DerivedX>& X,
                                                      const Eigen::MatrixBase<DerivedY>& y) {
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Index n = X.rows(), p = X.cols();
    if (y.size() != n) throw InputError("least_squares: y has " + std::to_string(y.size()) + " rows, X has " +
                                        std::to_string(n));
    if (p == 0) throw InputError("least_squares: empty design");
    if (n <= p) {
        throw RankDeficient("least_squares: " + std::to_string(n) + " observations for " + std::to_string(p) +
                            " parameters");
    }

    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(X);
    if (qr.rank() < p) throw RankDeficient("least_squares: design matrix is rank deficient");

    LeastSquares<Scalar> out;
    out.coefficients = qr.solve(y.derived().template cast<Scalar>());
    out.residuals = y - X * out.coefficients;
    out.ssr = out.residuals.squaredNorm();

    // (X'X)^{-1} = P R^{-1} R^{-T} P'
    const Matrix<Scalar> r = qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
    const Matrix<Scalar> r_inv =
        r.template triangularView<Eigen::Upper>().solve(Matrix<Scalar>::Identity(p, p));
    const Matrix<Scalar> inner = r_inv * r_inv.transpose();
    out.xtx_inverse = qr.colsPermutation() * inner * qr.colsPermutation().transpose();
    return out;
}

/// Automatic Newey-West bandwidth floor(4 (T/100)^{2/9}); 3 at T = 64.
inline Eigen::Index default_hac_lag(Eigen::Index observations) {
    return static_cast<Eigen::Index>(std::floor(4.0 * std::pow(static_cast<double>(observations) / 100.0, 2.0 / 9.0)));
}

/// Bartlett-kernel long-run covariance of the scores x_t u_t, weights 1 - l/(lag+1).
template <typename DerivedX, typename DerivedU>
Matrix<typename DerivedX::Scalar> long_run_score_covariance(const Eigen::MatrixBase<DerivedX>& X,
                                                            const Eigen::MatrixBase<DerivedU>& u, Eigen::Index lag) {
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Index n = X.rows();
    const Matrix<Scalar> scores = X.derived().array().colwise() * u.derived().array();
    Matrix<Scalar> s = scores.transpose() * scores;
    for (Eigen::Index l = 1; l <= lag; ++l) {
        const Scalar w = Scalar(1) - static_cast<Scalar>(l) / static_cast<Scalar>(lag + 1);
        const Matrix<Scalar> gamma = scores.bottomRows(n - l).transpose() * scores.topRows(n - l);
        s += w * (gamma + gamma.transpose());
    }
    return s;
}

/// HAC sandwich (X'X)^{-1} S (X'X)^{-1}. lag = 0 gives the White covariance.
/// `dof_correction` scales by T / (T - p).
template <typename DerivedX, typename DerivedU, typename DerivedB>
Matrix<typename DerivedX::Scalar> newey_west(const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedU>& u,
                                             Eigen::Index lag, const Eigen::MatrixBase<DerivedB>& xtx_inverse,
                                             bool dof_correction = false) {
    using Scalar = typename DerivedX::Scalar;
    const Eigen::Index n = X.rows(), p = X.cols();
    if (u.size() != n) throw InputError("newey_west: residual length does not match design rows");
    if (lag < 0 || lag >= n) {
        throw InputError("newey_west: lag " + std::to_string(lag) + " outside [0, " + std::to_string(n - 1) + "]");
    }
    Matrix<Scalar> v = xtx_inverse * long_run_score_covariance(X, u, lag) * xtx_inverse;
    if (dof_correction && n > p) v *= static_cast<Scalar>(n) / static_cast<Scalar>(n - p);
    return Scalar(0.5) * (v + v.transpose());
}

template <typename DerivedX, typename DerivedU>
Matrix<typename DerivedX::Scalar> newey_west(const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedU>& u,
                                             Eigen::Index lag, bool dof_correction = false) {
    using Scalar = typename DerivedX::Scalar;
    const Matrix<Scalar> xtx = X.transpose() * X;
    Eigen::LDLT<Matrix<Scalar>> ldlt(xtx);
    if (ldlt.info() != Eigen::Success || ldlt.rcond() < Scalar(1e-14)) {
        throw RankDeficient("newey_west: X'X is singular");
    }
    const Matrix<Scalar> inv = ldlt.solve(Matrix<Scalar>::Identity(X.cols(), X.cols()));
    return newey_west(X, u, lag, inv, dof_correction);
}

}  // namespace airborne::linreg
