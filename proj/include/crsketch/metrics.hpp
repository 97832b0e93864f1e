#pragma once

#include <cmath>
#include <optional>

#include "crsketch/errors.hpp"
#include "crsketch/linalg.hpp"

namespace crsketch {

// Error metrics for a sketch Laplacian against its source, Delta = L - Ltil.
// delta_spectral <= delta_frobenius always; additive_bound_frobenius carries
// the 2*W*eps certificate value when the caller supplies that context.
// null_space_mismatch flags sketches whose null space differs from the
// source's (e.g. sampling disconnected the sketch); the isotropic metric is
// then computed on range(L) only and should be read with care.
struct ErrorReport {
    double delta_frobenius = 0.0;
    double delta_spectral = 0.0;
    double isotropic_error = 0.0;
    std::optional<double> additive_bound_frobenius;
    bool null_space_mismatch = false;
};

namespace detail {

inline void require_same_shape(const SymMatrix& L, const SymMatrix& Ltil) {
    if (L.n() != Ltil.n()) {
        throw ShapeError("matrices must have the same dimension");
    }
}

inline double max_abs_eigenvalue(const SymMatrix& M) {
    const Spectrum s = eig_sym(M);
    return std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(M.n() - 1)));
}

} // namespace detail

// Tight additive constant: max over unit x of |x^T Delta x|, which for
// symmetric Delta is the spectral radius ||Delta||_2.
inline double additive_error(const SymMatrix& L, const SymMatrix& Ltil) {
    detail::require_same_shape(L, Ltil);
    return detail::max_abs_eigenvalue(SymMatrix(L.mat() - Ltil.mat()));
}

// True iff |x^T (L - Ltil) x| <= 2*W*eps * ||x||^2 for all x, i.e. the
// spectral radius of Delta is within the additive budget. The Frobenius
// sufficient condition ||Delta||_F <= 2*W*eps implies this.
inline bool check_additive_certificate(const SymMatrix& L, const SymMatrix& Ltil, double W,
                                       double eps) {
    if (!(W > 0.0) || !(eps > 0.0)) {
        throw InvalidParameter("check_additive_certificate requires positive W and eps");
    }
    return additive_error(L, Ltil) <= 2.0 * W * eps;
}

// Isotropic (multiplicative) error given a precomputed L^{-1/2}:
// || L^{-1/2} (L - Ltil) L^{-1/2} ||_2. Using the pseudo-inverse square root
// restricts the congruence to range(L).
inline double isotropic_error_given(const SymMatrix& pinv_sqrt_L, const SymMatrix& L,
                                    const SymMatrix& Ltil) {
    detail::require_same_shape(L, Ltil);
    detail::require_same_shape(L, pinv_sqrt_L);
    const Eigen::MatrixXd delta = L.mat() - Ltil.mat();
    return detail::max_abs_eigenvalue(
        SymMatrix(pinv_sqrt_L.mat() * delta * pinv_sqrt_L.mat()));
}

inline double isotropic_error(const SymMatrix& L, const SymMatrix& Ltil, double tol = -1.0) {
    return isotropic_error_given(pseudo_inv_sqrt(L, tol), L, Ltil);
}

// True iff the isotropic error is within kappa_2(L) * eps, the multiplicative
// guarantee scale for a connected-graph Laplacian.
inline bool check_multiplicative_certificate(const SymMatrix& L, const SymMatrix& Ltil,
                                             double eps, double tol = -1.0) {
    if (!(eps > 0.0)) {
        throw InvalidParameter("check_multiplicative_certificate requires positive eps");
    }
    const double kappa = condition_number_laplacian(L, tol);
    return isotropic_error(L, Ltil, tol) <= kappa * eps;
}

// x^T L x / x^T Ltil x. Directions whose denominator form is numerically
// null (shared Laplacian null space, e.g. the all-ones vector) are rejected.
inline double quadratic_form_ratio(const SymMatrix& L, const SymMatrix& Ltil, const Vector& x) {
    detail::require_same_shape(L, Ltil);
    if (x.size() != L.n()) {
        throw ShapeError("direction vector has the wrong dimension");
    }
    const double denom = x.dot(Ltil.mat() * x);
    const double threshold =
        1e-12 * std::max(1.0, frobenius_norm(Ltil.mat())) * x.squaredNorm();
    if (!(denom > threshold)) {
        throw NullQuadraticForm("denominator quadratic form is numerically null");
    }
    return x.dot(L.mat() * x) / denom;
}

// Full error report; tol < 0 selects the default null threshold. The
// null-space mismatch flag is raised when null(L) is not contained in
// null(Ltil) or when Ltil's null space is strictly larger.
inline ErrorReport compute_error_report(const SymMatrix& L, const SymMatrix& Ltil,
                                        double tol = -1.0,
                                        std::optional<double> additive_bound = std::nullopt) {
    detail::require_same_shape(L, Ltil);
    const int n = L.n();
    const double effective_tol = tol < 0.0 ? default_null_tol(n) : tol;

    ErrorReport report;
    const SymMatrix delta(L.mat() - Ltil.mat());
    report.delta_frobenius = frobenius_norm(delta.mat());
    report.delta_spectral = detail::max_abs_eigenvalue(delta);
    report.additive_bound_frobenius = additive_bound;

    const Spectrum sL = eig_sym(L);
    const double lmax = sL.eigenvalues(n - 1);
    if (sL.eigenvalues(0) < -effective_tol * lmax) {
        throw NotPSD("source matrix has an eigenvalue below the PSD tolerance band");
    }
    int nulls_L = 0;
    while (nulls_L < n && sL.eigenvalues(nulls_L) <= effective_tol * lmax) {
        ++nulls_L;
    }
    Vector f(n);
    for (int i = 0; i < n; ++i) {
        const double lambda = sL.eigenvalues(i);
        f(i) = lambda > effective_tol * lmax ? 1.0 / std::sqrt(lambda) : 0.0;
    }
    const SymMatrix pinv_sqrt(sL.eigenvectors * f.asDiagonal() * sL.eigenvectors.transpose());
    report.isotropic_error = isotropic_error_given(pinv_sqrt, L, Ltil);

    const Spectrum sLt = eig_sym(Ltil);
    const double lt_scale = std::max(std::abs(sLt.eigenvalues(0)),
                                     std::abs(sLt.eigenvalues(n - 1)));
    int nulls_Lt = 0;
    while (nulls_Lt < n && std::abs(sLt.eigenvalues(nulls_Lt)) <= effective_tol * lt_scale) {
        ++nulls_Lt;
    }
    bool contained = true;
    if (nulls_L > 0) {
        const Eigen::MatrixXd image = Ltil.mat() * sL.eigenvectors.leftCols(nulls_L);
        contained = image.cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, lt_scale);
    }
    report.null_space_mismatch = !contained || nulls_Lt != nulls_L;
    return report;
}

} // namespace crsketch
