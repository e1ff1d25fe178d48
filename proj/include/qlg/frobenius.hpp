#ifndef QLG_FROBENIUS_HPP
#define QLG_FROBENIUS_HPP

// Finite-dimensional algebras by structure constants and Frobenius pairs.

#include <array>
#include <cstddef>
#include <utility>

#include "qlg/core.hpp"
#include "qlg/linalg.hpp"
#include "qlg/report.hpp"

namespace qlg {

/// Algebra on basis b_0..b_{d-1} with b_i b_j = sum_k C[i][j][k] b_k.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(int dim, CVector structure, CVector unit)
        : dim_(dim), c_(std::move(structure)), unit_(std::move(unit)) {
        if (dim_ < 0) throw Error("FiniteAlgebra: negative dimension");
        const auto d = static_cast<std::size_t>(dim_);
        if (c_.size() != d * d * d) throw Error("FiniteAlgebra: structure array must have dim^3 entries");
        if (unit_.size() != d) throw Error("FiniteAlgebra: unit must have dim entries");
    }

    static FiniteAlgebra zeros(int dim) {
        const auto d = static_cast<std::size_t>(dim);
        return FiniteAlgebra(dim, CVector(d * d * d, Complex{}), CVector(d, Complex{}));
    }

    int dim() const { return dim_; }
    const CVector& structure() const { return c_; }
    const CVector& unit() const { return unit_; }
    CVector& unit() { return unit_; }

    Complex& at(int i, int j, int k) { return c_[index(i, j, k)]; }
    Complex at(int i, int j, int k) const { return c_[index(i, j, k)]; }

    CVector basis(int i) const {
        CVector v(static_cast<std::size_t>(dim_), Complex{});
        v[static_cast<std::size_t>(i)] = 1.0;
        return v;
    }

    CVector multiply(const CVector& x, const CVector& y) const {
        check(x);
        check(y);
        CVector out(static_cast<std::size_t>(dim_), Complex{});
        for (int i = 0; i < dim_; ++i) {
            const Complex xi = x[static_cast<std::size_t>(i)];
            if (xi == Complex{}) continue;
            for (int j = 0; j < dim_; ++j) {
                const Complex w = xi * y[static_cast<std::size_t>(j)];
                if (w == Complex{}) continue;
                for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] += w * at(i, j, k);
            }
        }
        return out;
    }

    /// Matrix of y -> x y.
    CMatrix left_matrix(const CVector& x) const {
        CMatrix m = CMatrix::Zero(dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            const CVector col = multiply(x, basis(j));
            for (int k = 0; k < dim_; ++k) m(k, j) = col[static_cast<std::size_t>(k)];
        }
        return m;
    }

    double scale() const { return std::max(1.0, max_abs(c_)); }

    double associativity_residual() const {
        double worst = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k)
                    for (int m = 0; m < dim_; ++m) {
                        Complex lhs{}, rhs{};
                        for (int l = 0; l < dim_; ++l) {
                            lhs += at(i, j, l) * at(l, k, m);
                            rhs += at(j, k, l) * at(i, l, m);
                        }
                        worst = std::max(worst, std::abs(lhs - rhs));
                    }
        return worst;
    }

    double unit_residual() const {
        double worst = 0.0;
        for (int j = 0; j < dim_; ++j) {
            worst = std::max(worst, max_abs_diff(multiply(unit_, basis(j)), basis(j)));
            worst = std::max(worst, max_abs_diff(multiply(basis(j), unit_), basis(j)));
        }
        return worst;
    }

    double commutativity_residual() const {
        double worst = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                for (int k = 0; k < dim_; ++k) worst = std::max(worst, std::abs(at(i, j, k) - at(j, i, k)));
        return worst;
    }

private:
    std::size_t index(int i, int j, int k) const {
        const auto d = static_cast<std::size_t>(dim_);
        return (static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)) * d + static_cast<std::size_t>(k);
    }
    void check(const CVector& v) const {
        if (v.size() != static_cast<std::size_t>(dim_)) throw Error("FiniteAlgebra: vector dimension mismatch");
    }

    int dim_ = 0;
    CVector c_;
    CVector unit_;
};

/// An algebra with a linear functional l; the form (x, y) = l(xy).
struct FrobeniusPair {
    FiniteAlgebra algebra;
    CVector functional;

    int dim() const { return algebra.dim(); }

    void check_dims() const {
        if (functional.size() != static_cast<std::size_t>(algebra.dim())) {
            throw Error("FrobeniusPair: functional dimension does not match algebra");
        }
    }

    Complex apply(const CVector& x) const {
        Complex acc{};
        for (std::size_t i = 0; i < x.size(); ++i) acc += functional[i] * x[i];
        return acc;
    }

    Complex form(const CVector& x, const CVector& y) const { return apply(algebra.multiply(x, y)); }

    /// G[i][j] = l(b_i b_j).
    CMatrix gram() const {
        const int d = dim();
        CMatrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Complex acc{};
                for (int k = 0; k < d; ++k) acc += algebra.at(i, j, k) * functional[static_cast<std::size_t>(k)];
                g(i, j) = acc;
            }
        return g;
    }
};

/// Quaternion over C on the basis 1, I, J, K.
struct QuaternionElement {
    std::array<Complex, 4> q{};

    static QuaternionElement unit(int idx) {
        QuaternionElement e;
        e.q[static_cast<std::size_t>(idx)] = 1.0;
        return e;
    }

    friend QuaternionElement operator*(const QuaternionElement& x, const QuaternionElement& y) {
        const auto& a = x.q;
        const auto& b = y.q;
        // IJ = K, JK = I, KI = J, I^2 = J^2 = K^2 = -1
        return {{a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                 a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                 a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                 a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]}};
    }
    friend QuaternionElement operator+(const QuaternionElement& x, const QuaternionElement& y) {
        return {{x.q[0] + y.q[0], x.q[1] + y.q[1], x.q[2] + y.q[2], x.q[3] + y.q[3]}};
    }
    friend QuaternionElement operator*(Complex s, const QuaternionElement& x) {
        return {{s * x.q[0], s * x.q[1], s * x.q[2], s * x.q[3]}};
    }
    friend bool operator==(const QuaternionElement&, const QuaternionElement&) = default;
};

namespace quaternion {
inline constexpr int one = 0;
inline constexpr int I = 1;
inline constexpr int J = 2;
inline constexpr int K = 3;
}  // namespace quaternion

inline FrobeniusPair zero_pair() { return {FiniteAlgebra::zeros(0), {}}; }

/// K(lambda): the field with l(z) = lambda z.
inline FrobeniusPair number_pair(Complex lambda) {
    if (lambda == Complex{}) throw DegenerateError("degenerate functional");
    return {FiniteAlgebra(1, {1.0}, {1.0}), {lambda}};
}

/// M(m, C)(mu) on elementary matrices E^{kr} (index k*m + r), l = mu tr.
inline FrobeniusPair matrix_pair(int m, Complex mu) {
    if (m < 1) throw Error("matrix_pair: size must be positive");
    if (mu == Complex{}) throw DegenerateError("degenerate functional");
    const int d = m * m;
    FiniteAlgebra alg = FiniteAlgebra::zeros(d);
    CVector functional(static_cast<std::size_t>(d), Complex{});
    for (int k = 0; k < m; ++k)
        for (int r = 0; r < m; ++r)
            for (int l = 0; l < m; ++l)
                for (int c = 0; c < m; ++c)
                    if (r == l) alg.at(k * m + r, l * m + c, k * m + c) = 1.0;
    for (int k = 0; k < m; ++k) {
        alg.unit()[static_cast<std::size_t>(k * m + k)] = 1.0;
        functional[static_cast<std::size_t>(k * m + k)] = mu;
    }
    return {std::move(alg), std::move(functional)};
}

/// H_C(rho): quaternions with l(1) = 2 rho and l(I) = l(J) = l(K) = 0.
inline FrobeniusPair quaternion_pair(Complex rho) {
    if (rho == Complex{}) throw DegenerateError("degenerate functional");
    FiniteAlgebra alg = FiniteAlgebra::zeros(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto prod = QuaternionElement::unit(i) * QuaternionElement::unit(j);
            for (int k = 0; k < 4; ++k) alg.at(i, j, k) = prod.q[static_cast<std::size_t>(k)];
        }
    alg.unit()[0] = 1.0;
    return {std::move(alg), {2.0 * rho, 0.0, 0.0, 0.0}};
}

/// Direct sum with cross products zero and l = l1 + l2.
inline FrobeniusPair orthogonal_sum(const FrobeniusPair& p1, const FrobeniusPair& p2) {
    p1.check_dims();
    p2.check_dims();
    const int d1 = p1.dim();
    const int d2 = p2.dim();
    FiniteAlgebra alg = FiniteAlgebra::zeros(d1 + d2);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            for (int k = 0; k < d1; ++k) alg.at(i, j, k) = p1.algebra.at(i, j, k);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            for (int k = 0; k < d2; ++k) alg.at(d1 + i, d1 + j, d1 + k) = p2.algebra.at(i, j, k);
    CVector functional = p1.functional;
    functional.insert(functional.end(), p2.functional.begin(), p2.functional.end());
    for (int i = 0; i < d1; ++i) alg.unit()[static_cast<std::size_t>(i)] = p1.algebra.unit()[static_cast<std::size_t>(i)];
    for (int i = 0; i < d2; ++i) alg.unit()[static_cast<std::size_t>(d1 + i)] = p2.algebra.unit()[static_cast<std::size_t>(i)];
    return {std::move(alg), std::move(functional)};
}

/// Largest |l((b_i b_j) b_k) - l(b_i (b_j b_k))|.
inline double frobenius_symmetry_residual(const FrobeniusPair& pair) {
    const auto& alg = pair.algebra;
    const int d = alg.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const auto bi = alg.basis(i), bj = alg.basis(j), bk = alg.basis(k);
                const Complex lhs = pair.apply(alg.multiply(alg.multiply(bi, bj), bk));
                const Complex rhs = pair.apply(alg.multiply(bi, alg.multiply(bj, bk)));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
    return worst;
}

inline VerificationReport verify_frobenius(const FrobeniusPair& pair, const ToleranceConfig& tol = {}) {
    pair.check_dims();
    const double scale = pair.algebra.scale();
    VerificationReport rep;
    rep.add_residual("associativity", pair.algebra.associativity_residual(), tol.eq_tol * scale * scale);
    rep.add_residual("unit", pair.algebra.unit_residual(), tol.eq_tol * scale);
    rep.add_residual("frobenius_symmetry", frobenius_symmetry_residual(pair),
                     tol.eq_tol * scale * scale * std::max(1.0, max_abs(pair.functional)));
    rep.add_margin("nondegeneracy", singular_value_margin(pair.gram()), tol.eq_tol);
    return rep;
}

/// The change of basis M(2, C) -> H_C sending the identity, diag(-i, i),
/// [[0, -1], [1, 0]] and [[0, i], [i, 0]] to 1, I, J, K.
struct QuaternionIsomorphism {
    /// Column r is the quaternion image of the elementary matrix with index r.
    CMatrix map;
    double residual = 0.0;
};

inline QuaternionIsomorphism m2_quaternion_isomorphism(Complex rho = 1.0) {
    const Complex i{0.0, 1.0};
    // Columns: the four displayed matrices flattened row-major (E11, E12, E21, E22).
    CMatrix shown(4, 4);
    shown.col(0) << 1.0, 0.0, 0.0, 1.0;
    shown.col(1) << -i, 0.0, 0.0, i;
    shown.col(2) << 0.0, -1.0, 1.0, 0.0;
    shown.col(3) << 0.0, i, i, 0.0;
    // shown maps quaternion coordinates to matrix coordinates; invert it.
    QuaternionIsomorphism out{shown.inverse(), 0.0};

    const FrobeniusPair mat = matrix_pair(2, rho);
    const FrobeniusPair quat = quaternion_pair(rho);
    auto image = [&](const CVector& x) { return from_eigen(out.map * to_eigen(x)); };
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        const auto xa = mat.algebra.basis(a);
        worst = std::max(worst, std::abs(quat.apply(image(xa)) - mat.apply(xa)));
        for (int b = 0; b < 4; ++b) {
            const auto xb = mat.algebra.basis(b);
            const auto lhs = image(mat.algebra.multiply(xa, xb));
            const auto rhs = quat.algebra.multiply(image(xa), image(xb));
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
    }
    out.residual = worst;
    return out;
}

}  // namespace qlg

#endif  // QLG_FROBENIUS_HPP
