#pragma once

// The GHRR hypervector algebra: length-D sequences of m x m unitary matrices
// with element-wise bundling/binding, the normalized real trace similarity,
// inverses, cyclic permutation and the commutativity diagnostics. m = 1
// instances are plain FHRR hypervectors.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghrr/complex_matrix.hpp"
#include "ghrr/rng.hpp"

namespace ghrr {

/// Dense hypervector: D blocks of m x m complex entries in one contiguous
/// buffer (column-major within each block). Immutable in practice; all
/// operations return fresh values.
class Hypervector {
public:
    Hypervector() = default;
    Hypervector(std::size_t d, std::size_t m, bool unitary = false)
        : d_(d), m_(m), unitary_(unitary), data_(d * m * m, Complex(0, 0)) {
        if (d < 1 || m < 1)
            throw std::invalid_argument("Hypervector: D and m must be >= 1");
    }

    static Hypervector zero(std::size_t d, std::size_t m) { return Hypervector(d, m, false); }

    /// The binding unit: every element is I_m.
    static Hypervector identity(std::size_t d, std::size_t m) {
        Hypervector h(d, m, true);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < m; ++k) h.entry(j, k, k) = Complex(1, 0);
        return h;
    }

    std::size_t dim_d() const { return d_; }
    std::size_t dim_m() const { return m_; }
    std::size_t effective_dim() const { return d_ * m_; }       // D*m
    std::size_t total_dim() const { return d_ * m_ * m_; }      // D*m^2
    bool unitary_flag() const { return unitary_; }
    void set_unitary_flag(bool u) { unitary_ = u; }

    std::span<const Complex> data() const { return data_; }
    std::span<Complex> data() { return data_; }

    /// Entry (row, col) of element j; blocks are column-major.
    Complex entry(std::size_t j, std::size_t row, std::size_t col) const {
        return data_[j * m_ * m_ + col * m_ + row];
    }
    Complex& entry(std::size_t j, std::size_t row, std::size_t col) {
        return data_[j * m_ * m_ + col * m_ + row];
    }

    Eigen::Map<const Matrix> element(std::size_t j) const {
        return Eigen::Map<const Matrix>(data_.data() + j * m_ * m_,
                                        static_cast<Eigen::Index>(m_),
                                        static_cast<Eigen::Index>(m_));
    }
    Eigen::Map<Matrix> element(std::size_t j) {
        return Eigen::Map<Matrix>(data_.data() + j * m_ * m_,
                                  static_cast<Eigen::Index>(m_),
                                  static_cast<Eigen::Index>(m_));
    }

    ComplexMatrix element_matrix(std::size_t j) const {
        return ComplexMatrix(Matrix(element(j)), unitary_);
    }
    void set_element(std::size_t j, const ComplexMatrix& m) {
        if (m.dim() != m_) throw std::invalid_argument("set_element: dimension mismatch");
        element(j) = m.mat();
    }

    bool same_shape(const Hypervector& o) const { return d_ == o.d_ && m_ == o.m_; }

private:
    std::size_t d_ = 0;
    std::size_t m_ = 0;
    bool unitary_ = false;
    std::vector<Complex> data_;
};

namespace detail {
inline void require_same_shape(const Hypervector& a, const Hypervector& b,
                               const char* who) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
}
}  // namespace detail

/// Element-wise sum. Bundles are not renormalized and lose the unitary tag.
inline Hypervector bundle(const Hypervector& a, const Hypervector& b) {
    detail::require_same_shape(a, b, "bundle");
    Hypervector out(a.dim_d(), a.dim_m(), false);
    auto pa = a.data(), pb = b.data();
    auto po = out.data();
    for (std::size_t i = 0; i < pa.size(); ++i) po[i] = pa[i] + pb[i];
    return out;
}

inline void bundle_into(Hypervector& acc, const Hypervector& b) {
    detail::require_same_shape(acc, b, "bundle");
    acc.set_unitary_flag(false);
    auto pa = acc.data();
    auto pb = b.data();
    for (std::size_t i = 0; i < pb.size(); ++i) pa[i] += pb[i];
}

/// Element-wise matrix product a_j b_j. Not commutative for m > 1; unitary
/// inputs give a unitary output.
inline Hypervector bind(const Hypervector& a, const Hypervector& b) {
    detail::require_same_shape(a, b, "bind");
    const std::size_t d = a.dim_d(), m = a.dim_m();
    Hypervector out(d, m, a.unitary_flag() && b.unitary_flag());
    const Complex* pa = a.data().data();
    const Complex* pb = b.data().data();
    Complex* po = out.data().data();
    if (m == 1) {
        for (std::size_t j = 0; j < d; ++j) po[j] = pa[j] * pb[j];
        return out;
    }
    const std::size_t mm = m * m;
    for (std::size_t j = 0; j < d; ++j) {
        const Complex* aj = pa + j * mm;
        const Complex* bj = pb + j * mm;
        Complex* oj = po + j * mm;
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t n = 0; n < m; ++n) {
                const Complex bnl = bj[l * m + n];
                const Complex* acol = aj + n * m;
                Complex* ocol = oj + l * m;
                for (std::size_t k = 0; k < m; ++k) ocol[k] += acol[k] * bnl;
            }
    }
    return out;
}

/// (1/(mD)) Re tr(sum_j a_j b_j^dagger). Since tr(A B^dagger) equals the
/// entry-wise sum of A .* conj(B), this is a single fused pass; the reduction
/// order is fixed so results are bit-stable.
inline double similarity(const Hypervector& a, const Hypervector& b) {
    detail::require_same_shape(a, b, "similarity");
    const Complex* pa = a.data().data();
    const Complex* pb = b.data().data();
    const std::size_t n = a.data().size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += pa[i].real() * pb[i].real() + pa[i].imag() * pb[i].imag();
    return acc / (static_cast<double>(a.dim_m()) * static_cast<double>(a.dim_d()));
}

/// Element-wise dagger; defined only for unitary hypervectors (bundles have
/// no element-wise unitary inverse).
inline Hypervector inverse(const Hypervector& h) {
    if (!h.unitary_flag())
        throw std::invalid_argument("inverse: hypervector is not unitary");
    const std::size_t d = h.dim_d(), m = h.dim_m();
    Hypervector out(d, m, true);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t r = 0; r < m; ++r)
                out.entry(j, r, c) = std::conj(h.entry(j, c, r));
    return out;
}

/// Cyclic shift of the D element positions; shift is taken modulo D and may
/// be negative. permute(h, D) == h.
inline Hypervector permute(const Hypervector& h, long long shift) {
    const std::size_t d = h.dim_d(), m = h.dim_m();
    const long long dd = static_cast<long long>(d);
    long long s = shift % dd;
    if (s < 0) s += dd;
    Hypervector out(d, m, h.unitary_flag());
    const std::size_t mm = m * m;
    const Complex* src = h.data().data();
    Complex* dst = out.data().data();
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t tgt = (j + static_cast<std::size_t>(s)) % d;
        for (std::size_t i = 0; i < mm; ++i) dst[tgt * mm + i] = src[j * mm + i];
    }
    return out;
}

/// delta(H1*H2, H2*H1): 1 exactly for m = 1, and for jointly diagonal
/// structure; low for strongly non-commuting element pairs.
inline double degree_of_commutativity(const Hypervector& a, const Hypervector& b) {
    detail::require_same_shape(a, b, "degree_of_commutativity");
    if (!a.unitary_flag() || !b.unitary_flag())
        throw std::invalid_argument("degree_of_commutativity: inputs must be unitary");
    return similarity(bind(a, b), bind(b, a));
}

// ---------------------------------------------------------------------------
// Base hypervector sampling
// ---------------------------------------------------------------------------

enum class QMode { shared_across_dims, varying_across_dims };

/// Angle distributions for the diagonal phases. Both built-ins satisfy
/// E[e^{i theta}] = 0 analytically (uniform over the circle; equal mass on
/// {0, pi}).
enum class AngleDist { uniform_0_2pi, two_point_0_pi };

inline double sample_angle(AngleDist dist, Rng& rng) {
    switch (dist) {
        case AngleDist::uniform_0_2pi: {
            std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
            return u(rng);
        }
        case AngleDist::two_point_0_pi: {
            std::uniform_int_distribution<int> u(0, 1);
            return u(rng) ? std::numbers::pi : 0.0;
        }
    }
    throw std::invalid_argument("sample_angle: invalid distribution descriptor");
}

struct BaseSamplerSpec {
    std::size_t dim_d = 0;
    std::size_t dim_m = 1;
    QMode q_mode = QMode::varying_across_dims;
    UnitaryMethod q_method = UnitaryMethod::haar;
    AngleDist angle_dist = AngleDist::uniform_0_2pi;
    std::uint64_t seed = 0;  // recorded for provenance; sampling uses the passed rng
};

/// Element j = Q_j diag(e^{i theta_j1}, ..., e^{i theta_jm}). Shared mode
/// draws one Q for all j; varying mode draws a fresh Q_j per dimension.
inline Hypervector sample_base(const BaseSamplerSpec& spec, Rng& rng) {
    Hypervector h(spec.dim_d, spec.dim_m, true);
    const std::size_t m = spec.dim_m;
    const bool shared = spec.q_mode == QMode::shared_across_dims;
    ComplexMatrix q;
    if (shared) q = sample_unitary(m, spec.q_method, rng);
    for (std::size_t j = 0; j < spec.dim_d; ++j) {
        if (!shared) q = sample_unitary(m, spec.q_method, rng);
        for (std::size_t l = 0; l < m; ++l) {
            const Complex lam = std::polar(1.0, sample_angle(spec.angle_dist, rng));
            for (std::size_t k = 0; k < m; ++k) h.entry(j, k, l) = q(k, l) * lam;
        }
    }
    return h;
}

/// As sample_base, but with the Q matrices supplied by the caller: one matrix
/// (shared across dims and, when reused across calls, across hypervectors) or
/// D matrices (one per dimension). Only the diagonal phases are drawn.
inline Hypervector sample_base_with_q(std::size_t d, std::size_t m,
                                      std::span<const ComplexMatrix> qs,
                                      AngleDist angle_dist, Rng& rng) {
    if (qs.size() != 1 && qs.size() != d)
        throw std::invalid_argument("sample_base_with_q: need 1 or D matrices");
    Hypervector h(d, m, true);
    for (std::size_t j = 0; j < d; ++j) {
        const ComplexMatrix& q = qs[qs.size() == 1 ? 0 : j];
        if (q.dim() != m) throw std::invalid_argument("sample_base_with_q: Q dim mismatch");
        for (std::size_t l = 0; l < m; ++l) {
            const Complex lam = std::polar(1.0, sample_angle(angle_dist, rng));
            for (std::size_t k = 0; k < m; ++k) h.entry(j, k, l) = q(k, l) * lam;
        }
    }
    return h;
}

/// Per-dimension Q drawn from a fixed pool (used for diagonality-controlled
/// sampling where each pool member came out of the optimizer).
inline Hypervector sample_base_from_pool(std::size_t d, std::size_t m,
                                         std::span<const ComplexMatrix> pool,
                                         AngleDist angle_dist, Rng& rng) {
    if (pool.empty()) throw std::invalid_argument("sample_base_from_pool: empty pool");
    Hypervector h(d, m, true);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t j = 0; j < d; ++j) {
        const ComplexMatrix& q = pool[pick(rng)];
        for (std::size_t l = 0; l < m; ++l) {
            const Complex lam = std::polar(1.0, sample_angle(angle_dist, rng));
            for (std::size_t k = 0; k < m; ++k) h.entry(j, k, l) = q(k, l) * lam;
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Tensor-product view of binding
// ---------------------------------------------------------------------------

struct TensorView {
    ComplexMatrix bound;                // Q diag(lam) R diag(eta)
    ComplexMatrix reconstructed_outer;  // lam eta^T recovered from bound
};

/// Verifies that one bound element is a linear-combination view of the outer
/// product lam eta^T, and inverts the per-column maps U_l = Q diag(R_{:,l})
/// to recover it. Requires every entry of r nonzero (else a column map is
/// singular).
inline TensorView tensor_view(const ComplexMatrix& q, const ComplexMatrix& r,
                              const DiagonalPhases& lam, const DiagonalPhases& eta) {
    const std::size_t m = q.dim();
    if (r.dim() != m || lam.dim() != m || eta.dim() != m)
        throw std::invalid_argument("tensor_view: dimension mismatch");
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t k = 0; k < m; ++k)
            if (std::abs(r(k, c)) == 0.0)
                throw std::invalid_argument("tensor_view: singular column map (zero entry in r)");

    const ComplexMatrix bound =
        matmul(matmul(matmul(q, lam.to_matrix()), r), eta.to_matrix());

    // Cross-check the product against the explicit linear-combination form
    // sum_n q_kn r_nl lam_n eta_l.
    for (std::size_t l = 0; l < m; ++l)
        for (std::size_t k = 0; k < m; ++k) {
            Complex s(0, 0);
            for (std::size_t n = 0; n < m; ++n)
                s += q(k, n) * r(n, l) * lam.phase(n) * eta.phase(l);
            if (std::abs(s - bound(k, l)) > 1e-10)
                throw std::runtime_error("tensor_view: linear-combination check failed");
        }

    Matrix outer(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t l = 0; l < m; ++l) {
        Matrix u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t k = 0; k < m; ++k)
                u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) =
                    q(k, c) * r(c, l);
        outer.col(static_cast<Eigen::Index>(l)) =
            u.partialPivLu().solve(bound.mat().col(static_cast<Eigen::Index>(l)));
    }
    return TensorView{bound, ComplexMatrix(std::move(outer))};
}

}  // namespace ghrr
