#pragma once

// Dense small complex-matrix kernel: arithmetic on m x m complex matrices,
// unitary sampling, the Hermitian matrix exponential and diagonality.
// Everything here is value-semantic and re-entrant.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "ghrr/rng.hpp"

namespace ghrr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// An m x m complex matrix with an optional "known unitary" tag.
/// The tag is propagated by operations that preserve unitarity exactly
/// (products, conjugate transpose) and set by the unitary constructors.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(Matrix m, bool unitary = false)
        : mat_(std::move(m)), unitary_(unitary) {
        if (mat_.rows() != mat_.cols())
            throw std::invalid_argument("ComplexMatrix: input must be square");
    }

    static ComplexMatrix identity(std::size_t m) {
        return ComplexMatrix(Matrix::Identity(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m)),
                             true);
    }
    static ComplexMatrix zero(std::size_t m) {
        return ComplexMatrix(Matrix::Zero(static_cast<Eigen::Index>(m),
                                          static_cast<Eigen::Index>(m)));
    }

    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    bool unitary() const { return unitary_; }
    void set_unitary(bool u) { unitary_ = u; }

    const Matrix& mat() const { return mat_; }
    Matrix& mat() { return mat_; }

    Complex operator()(std::size_t r, std::size_t c) const {
        return mat_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    Complex& operator()(std::size_t r, std::size_t c) {
        return mat_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

private:
    Matrix mat_;
    bool unitary_ = false;
};

/// diag(e^{i theta_1}, ..., e^{i theta_m}) stored by its angles; the
/// reconstructed matrix is unitary by construction.
struct DiagonalPhases {
    std::vector<double> angles;

    std::size_t dim() const { return angles.size(); }

    ComplexMatrix to_matrix() const {
        Matrix d = Matrix::Zero(static_cast<Eigen::Index>(dim()),
                                static_cast<Eigen::Index>(dim()));
        for (std::size_t k = 0; k < dim(); ++k)
            d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                std::polar(1.0, angles[k]);
        return ComplexMatrix(std::move(d), true);
    }

    Complex phase(std::size_t k) const { return std::polar(1.0, angles[k]); }
};

inline double max_abs(const Matrix& m) {
    double best = 0.0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            best = std::max(best, std::abs(m(r, c)));
    return best;
}

/// ||M M^dagger - I||_max; zero for an exactly unitary matrix.
inline double unitarity_error(const ComplexMatrix& m) {
    const auto n = m.mat().rows();
    return max_abs(m.mat() * m.mat().adjoint() - Matrix::Identity(n, n));
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matmul: dimension mismatch");
    return ComplexMatrix(a.mat() * b.mat(), a.unitary() && b.unitary());
}

/// Conjugate transpose. dagger(dagger(a)) == a exactly.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
    return ComplexMatrix(a.mat().adjoint(), a.unitary());
}

/// Real part of the trace.
inline double trace_re(const ComplexMatrix& a) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < a.mat().rows(); ++k) s += a.mat()(k, k).real();
    return s;
}

/// (X + X^dagger)/2. The result equals its own dagger exactly.
inline ComplexMatrix hermitian_part(const ComplexMatrix& x) {
    Matrix h = (x.mat() + x.mat().adjoint()) / 2.0;
    // Force exact Hermitian symmetry against rounding in the averaged copies.
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        h(r, r) = Complex(h(r, r).real(), 0.0);
        for (Eigen::Index c = r + 1; c < h.cols(); ++c) h(c, r) = std::conj(h(r, c));
    }
    return ComplexMatrix(std::move(h));
}

/// exp(i h) for Hermitian h, via eigendecomposition h = V Theta V^dagger,
/// so the result is unitary by construction.
inline ComplexMatrix unitary_exp(const ComplexMatrix& h) {
    if (max_abs(h.mat() - h.mat().adjoint()) > 1e-10)
        throw std::invalid_argument("unitary_exp: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h.mat());
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("unitary_exp: eigendecomposition failed");
    const Eigen::VectorXd& theta = eig.eigenvalues();
    Eigen::VectorXcd phases(theta.size());
    for (Eigen::Index k = 0; k < theta.size(); ++k)
        phases(k) = std::polar(1.0, theta(k));
    Matrix u = eig.eigenvectors() * phases.asDiagonal() *
               eig.eigenvectors().adjoint();
    return ComplexMatrix(std::move(u), true);
}

/// Diagonal absolute mass over total absolute mass, in [0, 1].
inline double diagonality(const ComplexMatrix& q) {
    double diag = 0.0, total = 0.0;
    for (Eigen::Index c = 0; c < q.mat().cols(); ++c)
        for (Eigen::Index r = 0; r < q.mat().rows(); ++r) {
            const double a = std::abs(q.mat()(r, c));
            total += a;
            if (r == c) diag += a;
        }
    if (total == 0.0)
        throw std::invalid_argument("diagonality: all-zero matrix");
    return diag / total;
}

enum class UnitaryMethod { haar, hermitian_exp };

namespace detail {

inline Matrix ginibre(std::size_t m, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (Eigen::Index c = 0; c < z.cols(); ++c)
        for (Eigen::Index r = 0; r < z.rows(); ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    return z;
}

}  // namespace detail

/// Random unitary. haar: QR of a complex Ginibre matrix with the R-diagonal
/// phase correction (multiply column j of Q by phase(R_jj), which normalizes
/// R's diagonal to positive reals), giving exactly Haar measure.
/// hermitian_exp: exp(i (X + X^dagger)/2) for Ginibre X.
inline ComplexMatrix sample_unitary(std::size_t m, UnitaryMethod method, Rng& rng) {
    if (m < 1) throw std::invalid_argument("sample_unitary: m must be >= 1");
    if (method == UnitaryMethod::hermitian_exp)
        return unitary_exp(hermitian_part(ComplexMatrix(detail::ginibre(m, rng))));

    Matrix z = detail::ginibre(m, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return ComplexMatrix(std::move(q), true);
}

}  // namespace ghrr
