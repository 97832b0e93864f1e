#pragma once

#include <cmath>
#include <Eigen/Dense>

#include "crsketch/errors.hpp"

namespace crsketch {

using GeneralMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense symmetric matrix. Construction symmetrizes as (M + M^T)/2, which for
// an already-symmetric argument reproduces it bit for bit, so the stored
// entries satisfy entries(i,j) == entries(j,i) exactly.
class SymMatrix {
public:
    explicit SymMatrix(const Eigen::MatrixXd& m) {
        if (m.rows() < 1 || m.rows() != m.cols()) {
            throw InvalidMatrix("SymMatrix requires a square matrix of dimension >= 1");
        }
        if (!m.allFinite()) {
            throw InvalidMatrix("SymMatrix requires finite entries");
        }
        mat_ = 0.5 * (m + m.transpose());
    }

    int n() const { return int(mat_.rows()); }
    const Eigen::MatrixXd& mat() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }

private:
    Eigen::MatrixXd mat_;
};

// Eigendecomposition with eigenvalues ascending and orthonormal eigenvector
// columns: V * diag(lambda) * V^T reconstructs the input.
struct Spectrum {
    Vector eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

// Scale-invariant numerical-rank rule: an eigenvalue is treated as null iff
// lambda <= tol * lambda_max, default tol = n * 2^-50.
inline double default_null_tol(int n) {
    return std::ldexp(double(n), -50);
}

inline Spectrum eig_sym(const SymMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M.mat());
    if (solver.info() != Eigen::Success) {
        throw InvalidMatrix("symmetric eigendecomposition did not converge");
    }
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

inline double frobenius_norm(const GeneralMatrix& M) {
    if (!M.allFinite()) {
        throw InvalidMatrix("frobenius_norm requires finite entries");
    }
    return M.norm();
}

// Largest singular value, computed from the Gram matrix of the smaller side;
// accurate for the top of the spectrum, which is all this library needs.
inline double spectral_norm(const GeneralMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) {
        return 0.0;
    }
    if (!M.allFinite()) {
        throw InvalidMatrix("spectral_norm requires finite entries");
    }
    Eigen::MatrixXd gram;
    if (M.rows() <= M.cols()) {
        gram = M * M.transpose();
    } else {
        gram = M.transpose() * M;
    }
    const Spectrum s = eig_sym(SymMatrix(gram));
    const double top = s.eigenvalues(s.eigenvalues.size() - 1);
    return std::sqrt(std::max(top, 0.0));
}

// L^{-1/2} on range(L): eigenvalues above the null band map to 1/sqrt(lambda),
// the rest to zero. tol < 0 selects default_null_tol(n).
inline SymMatrix pseudo_inv_sqrt(const SymMatrix& L, double tol = -1.0) {
    const int n = L.n();
    if (tol < 0.0) {
        tol = default_null_tol(n);
    }
    const Spectrum s = eig_sym(L);
    const double lmax = s.eigenvalues(n - 1);
    if (s.eigenvalues(0) < -tol * lmax) {
        throw NotPSD("matrix has an eigenvalue below the PSD tolerance band");
    }
    Vector f(n);
    for (int i = 0; i < n; ++i) {
        const double lambda = s.eigenvalues(i);
        f(i) = lambda > tol * lmax ? 1.0 / std::sqrt(lambda) : 0.0;
    }
    return SymMatrix(s.eigenvectors * f.asDiagonal() * s.eigenvectors.transpose());
}

// kappa_2(L) = lambda_max / lambda_2 for a connected-graph Laplacian, with
// lambda_2 the smallest eigenvalue above the null band.
inline double condition_number_laplacian(const SymMatrix& L, double tol = -1.0) {
    const int n = L.n();
    if (tol < 0.0) {
        tol = default_null_tol(n);
    }
    const Spectrum s = eig_sym(L);
    const double lmax = s.eigenvalues(n - 1);
    if (s.eigenvalues(0) < -tol * lmax) {
        throw NotPSD("Laplacian has an eigenvalue below the PSD tolerance band");
    }
    int nulls = 0;
    while (nulls < n && s.eigenvalues(nulls) <= tol * lmax) {
        ++nulls;
    }
    if (nulls == n) {
        throw DegenerateLaplacian("all eigenvalues are inside the null band");
    }
    if (nulls > 1) {
        throw DisconnectedGraph("null space has dimension > 1");
    }
    if (nulls == 0) {
        throw InvalidMatrix("matrix has no null eigenvalue; not a graph Laplacian");
    }
    return lmax / s.eigenvalues(1);
}

} // namespace crsketch
