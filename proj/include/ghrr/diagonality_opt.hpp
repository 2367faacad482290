#pragma once

// Gradient descent on the 2m^2 real parameters of X targeting a prescribed
// diagonality of Q(X) = exp(i (X + X^dagger)/2). The gradient is taken by
// central finite differences; no analytic gradient is attempted.

#include <cstddef>
#include <stdexcept>

#include "ghrr/complex_matrix.hpp"
#include "ghrr/rng.hpp"

namespace ghrr {

struct DiagonalityResult {
    ComplexMatrix q;           // best unitary found, exp(i H(X))
    double achieved = 0.0;     // diagonality(q)
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

inline double diag_objective(const Matrix& x, double target) {
    const double d = diagonality(unitary_exp(hermitian_part(ComplexMatrix(x))));
    return (d - target) * (d - target);
}

}  // namespace detail

/// Finds a unitary Q with |diagonality(Q) - target| <= tol. On
/// non-convergence the best iterate is returned with converged=false and its
/// achieved diagonality, so callers can log and skip.
inline DiagonalityResult optimize_diagonality(std::size_t m, double target, double tol,
                                              std::size_t max_iters, Rng& rng) {
    if (!(target >= 0.0 && target <= 1.0))
        throw std::invalid_argument("optimize_diagonality: target must be in [0,1]");
    if (target == 0.0 && m < 2)
        throw std::invalid_argument("optimize_diagonality: target 0 requires m >= 2");

    constexpr double fd_step = 1e-5;
    double lr = 0.1;

    Matrix x = detail::ginibre(m, rng);
    double fx = detail::diag_objective(x, target);

    DiagonalityResult best;
    auto record = [&](const Matrix& xc, std::size_t it) {
        best.q = unitary_exp(hermitian_part(ComplexMatrix(xc)));
        best.achieved = diagonality(best.q);
        best.iterations = it;
        best.converged = std::abs(best.achieved - target) <= tol;
    };
    record(x, 0);

    for (std::size_t it = 0; it < max_iters && !best.converged; ++it) {
        Matrix grad = Matrix::Zero(x.rows(), x.cols());
        for (Eigen::Index c = 0; c < x.cols(); ++c)
            for (Eigen::Index r = 0; r < x.rows(); ++r)
                for (const Complex dir : {Complex(1, 0), Complex(0, 1)}) {
                    Matrix xp = x, xm = x;
                    xp(r, c) += fd_step * dir;
                    xm(r, c) -= fd_step * dir;
                    const double slope =
                        (detail::diag_objective(xp, target) -
                         detail::diag_objective(xm, target)) /
                        (2.0 * fd_step);
                    grad(r, c) += slope * dir;
                }

        bool moved = false;
        while (lr > 1e-12) {
            Matrix xn = x - lr * grad;
            const double fn = detail::diag_objective(xn, target);
            if (fn < fx) {
                x = std::move(xn);
                fx = fn;
                moved = true;
                break;
            }
            lr /= 2.0;
        }
        record(x, it + 1);
        if (!moved) break;  // step size exhausted
    }
    return best;
}

}  // namespace ghrr
