#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "awkernel/common.hpp"

namespace awkernel {

// sigma(x) = exp(alpha*x - alpha*l). For unit-normalized walk blocks (and AW
// one-hots) this equals the Gaussian kernel of bandwidth alpha evaluated on
// the underlying features.
inline double sigma(double x, double alpha, int l) {
    return std::exp(alpha * x - alpha * static_cast<double>(l));
}

template <typename Derived>
Eigen::MatrixXd sigma(const Eigen::MatrixBase<Derived>& x, double alpha, int l) {
    return (alpha * x.array() - alpha * static_cast<double>(l)).exp().matrix();
}

// k_Gauss(x, y) = exp(-alpha/2 * ||x - y||^2)
inline double gaussian_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                              double alpha) {
    if (x.size() != y.size()) throw ParamError("gaussian_kernel: dimension mismatch");
    return std::exp(-0.5 * alpha * (x - y).squaredNorm());
}

// (M + eps*I)^{-1/2} via eigendecomposition; eigenvalues below 1e-12 are
// clamped to 1e-12. Rejects inputs whose asymmetry exceeds 1e-8.
inline Eigen::MatrixXd inv_sqrt_psd(const Eigen::MatrixXd& m, double epsilon) {
    if (m.rows() != m.cols()) throw ParamError("inv_sqrt_psd: matrix not square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8)
        throw ParamError("inv_sqrt_psd: input not symmetric (max asymmetry " +
                         std::to_string(asym) + ")");
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    sym.diagonal().array() += epsilon;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(1e-12);
    Eigen::MatrixXd r = es.eigenvectors() * lam.cwiseInverse().cwiseSqrt().asDiagonal() *
                        es.eigenvectors().transpose();
    return 0.5 * (r + r.transpose());
}

}  // namespace awkernel
