#pragma once

// Dense complex matrix substrate: Hermitian eigendecomposition, unitary
// propagators, unitary diagonalization and state application. Everything is
// templated on the real scalar; the physics layers instantiate it with double.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kjc {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using RVector = RealVector<double>;

// Bad input: wrong shape, non-Hermitian, non-unitary, out-of-range parameter.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation ran but its result failed a sanity guard (integration blow-up,
// eigensolver failure).
class NumericalAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Absolute tolerances, scaled by max(1, max|M|) where a matrix scale applies.
struct Tolerances {
    double hermitian = 1e-12;
    double unitary = 1e-12;
    double normalization = 1e-10;
};

template <typename Real>
struct EigDecomposition {
    RealVector<Real> eigenvalues;     // ascending
    ComplexMatrix<Real> eigenvectors; // orthonormal columns
};

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0;
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
    return max_abs(m - m.adjoint());
}

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
    using Plain = typename Derived::PlainObject;
    return max_abs(u.adjoint() * u - Plain::Identity(u.rows(), u.cols()));
}

template <typename A, typename B>
typename A::PlainObject commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return a * b - b * a;
}

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << who << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw InvalidInput(os.str());
    }
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const Tolerances& tol, const char* who) {
    require_square(m, who);
    using Real = typename Derived::RealScalar;
    const Real scale = std::max<Real>(Real(1), max_abs(m));
    Eigen::Index wi = 0, wj = 0;
    Real worst = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Real d = std::abs(m(i, j) - std::conj(m(j, i)));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > Real(tol.hermitian) * scale) {
        std::ostringstream os;
        os.precision(17);
        os << who << ": matrix is not Hermitian; worst entry (" << wi << "," << wj
           << ") differs from conj of (" << wj << "," << wi << ") by " << worst;
        throw InvalidInput(os.str());
    }
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived>& u, const Tolerances& tol, const char* who) {
    require_square(u, who);
    const auto defect = unitarity_defect(u);
    if (defect > tol.unitary) {
        std::ostringstream os;
        os.precision(17);
        os << who << ": matrix is not unitary, max|U^dag U - I| = " << defect;
        throw InvalidInput(os.str());
    }
}

}  // namespace detail

// Eigenvalues ascending; exact ties keep solver order. Within a degenerate
// cluster the eigenvectors are an arbitrary orthonormal basis.
template <typename Derived>
EigDecomposition<typename Derived::RealScalar> hermitian_eig(const Eigen::MatrixBase<Derived>& m,
                                                             const Tolerances& tol = {}) {
    using Real = typename Derived::RealScalar;
    detail::require_hermitian(m, tol, "hermitian_eig");
    // Symmetrize so round-off asymmetry below tolerance does not leak into the solver.
    const ComplexMatrix<Real> h = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalAbort("hermitian_eig: eigensolver failed");

    const auto n = h.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return ev(a) < ev(b); });

    EigDecomposition<Real> out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = ev(order[static_cast<std::size_t>(k)]);
        out.eigenvectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

// exp(i * scale * h) for Hermitian h.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> unitary_exp(const Eigen::MatrixBase<Derived>& h,
                                                        typename Derived::RealScalar scale,
                                                        const Tolerances& tol = {}) {
    using Real = typename Derived::RealScalar;
    const auto eig = hermitian_eig(h, tol);
    const ComplexVector<Real> phases = (std::complex<Real>(0, scale) * eig.eigenvalues.template cast<std::complex<Real>>())
                                           .array()
                                           .exp()
                                           .matrix();
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

template <typename Real>
struct UnitaryEig {
    RealVector<Real> phases;          // arg of each eigenvalue, in (-pi, pi]
    ComplexMatrix<Real> eigenvectors; // orthonormal columns
};

// Diagonalizes a unitary through its complex Schur form. For a normal matrix
// the triangular factor is diagonal and the Schur vectors are orthonormal
// eigenvectors, degenerate or not. Unsorted.
template <typename Derived>
UnitaryEig<typename Derived::RealScalar> unitary_eig(const Eigen::MatrixBase<Derived>& u,
                                                     const Tolerances& tol = {}) {
    using Real = typename Derived::RealScalar;
    detail::require_unitary(u, tol, "unitary_eig");
    Eigen::ComplexSchur<ComplexMatrix<Real>> schur(u.eval());
    if (schur.info() != Eigen::Success) throw NumericalAbort("unitary_eig: Schur decomposition failed");
    UnitaryEig<Real> out;
    const auto n = u.rows();
    out.phases.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Real p = std::arg(schur.matrixT()(k, k));
        if (p <= -Real(M_PI)) p += Real(2 * M_PI);
        out.phases(k) = p;
    }
    out.eigenvectors = schur.matrixU();
    return out;
}

template <typename DerivedU, typename DerivedV>
ComplexVector<typename DerivedU::RealScalar> apply(const Eigen::MatrixBase<DerivedU>& u,
                                                   const Eigen::MatrixBase<DerivedV>& psi,
                                                   const Tolerances& tol = {}) {
    if (u.cols() != psi.rows() || psi.cols() != 1) {
        std::ostringstream os;
        os << "apply: dimension mismatch, operator is " << u.rows() << "x" << u.cols() << ", state has "
           << psi.rows() << " rows";
        throw InvalidInput(os.str());
    }
    const auto norm_err = std::abs(psi.norm() - 1);
    if (norm_err > tol.normalization) {
        std::ostringstream os;
        os.precision(17);
        os << "apply: state is not normalized, | |psi| - 1 | = " << norm_err;
        throw InvalidInput(os.str());
    }
    return u * psi;
}

// Wraps an angle into (-pi, pi].
template <typename Real>
Real wrap_phase(Real a) {
    constexpr Real two_pi = Real(2 * M_PI);
    a = std::fmod(a, two_pi);
    if (a <= -Real(M_PI)) a += two_pi;
    if (a > Real(M_PI)) a -= two_pi;
    return a;
}

// Shortest distance between two angles on the circle, in [0, pi].
template <typename Real>
Real circular_distance(Real a, Real b) {
    return std::abs(wrap_phase(a - b));
}

}  // namespace kjc
