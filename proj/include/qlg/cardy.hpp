#ifndef QLG_CARDY_HPP
#define QLG_CARDY_HPP

// Cardy-Frobenius algebras {(A, l^A), (B, l^B), phi}.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qlg/frobenius.hpp"

namespace qlg {

/// A commutative, B arbitrary (possibly zero-dimensional), phi: A -> B given
/// as a dim B x dim A matrix acting on coordinate vectors.
struct CardyFrobeniusAlgebra {
    FrobeniusPair A;
    FrobeniusPair B;
    CMatrix phi;

    void check_dims() const {
        A.check_dims();
        B.check_dims();
        if (phi.rows() != B.dim() || phi.cols() != A.dim()) throw Error("CardyFrobeniusAlgebra: phi has wrong shape");
    }

    CVector phi_apply(const CVector& a) const { return from_eigen(phi * to_eigen(a)); }
};

/// Matrix of phi*: B -> A defined by (a, phi*(b))^A = (phi(a), b)^B.
inline CMatrix phi_star_matrix(const CardyFrobeniusAlgebra& cf, double eq_tol = ToleranceConfig{}.eq_tol) {
    cf.check_dims();
    const CMatrix ga = cf.A.gram();
    if (ga.size() != 0 && singular_value_margin(ga) <= eq_tol) throw DegenerateError("degenerate A-form");
    if (ga.size() == 0) return CMatrix::Zero(0, cf.B.dim());
    const CMatrix rhs = cf.phi.transpose() * cf.B.gram();
    return ga.fullPivLu().solve(rhs);
}

inline CVector phi_star(const CardyFrobeniusAlgebra& cf, const CVector& b, double eq_tol = ToleranceConfig{}.eq_tol) {
    return from_eigen(phi_star_matrix(cf, eq_tol) * to_eigen(b));
}

/// max over basis pairs of |(phi*(x), phi*(y))^A - tr(b -> x b y)|.
inline double cardy_residual_trace(const CardyFrobeniusAlgebra& cf, double eq_tol = ToleranceConfig{}.eq_tol) {
    const CMatrix ps = phi_star_matrix(cf, eq_tol);
    const CMatrix ga = cf.A.gram();
    const auto& alg = cf.B.algebra;
    const int d = cf.B.dim();
    double worst = 0.0;
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            const Complex lhs = ps.col(x).transpose() * ga * ps.col(y);
            Complex trace{};
            for (int j = 0; j < d; ++j) {
                const CVector w = alg.multiply(alg.multiply(alg.basis(x), alg.basis(j)), alg.basis(y));
                trace += w[static_cast<std::size_t>(j)];
            }
            worst = std::max(worst, std::abs(lhs - trace));
        }
    return worst;
}

/// The same condition contracted with inverse Gram matrices:
/// F_A^{ij} l^B(phi(a_i) x) l^B(phi(a_j) y) against F_B^{kj} l^B(x b_j y b_k).
inline double cardy_residual_coordinates(const CardyFrobeniusAlgebra& cf, double eq_tol = ToleranceConfig{}.eq_tol) {
    cf.check_dims();
    const int da = cf.A.dim();
    const int db = cf.B.dim();
    if (db == 0) return 0.0;
    const CMatrix fa = checked_inverse(cf.A.gram(), eq_tol, "degenerate A-form");
    const CMatrix fb = checked_inverse(cf.B.gram(), eq_tol, "degenerate B-form");
    const auto& alg = cf.B.algebra;

    // pairing(i, x) = l^B(phi(a_i) b_x)
    CMatrix pairing(da, db);
    for (int i = 0; i < da; ++i) {
        const CVector img = cf.phi_apply(cf.A.algebra.basis(i));
        for (int x = 0; x < db; ++x) pairing(i, x) = cf.B.form(img, alg.basis(x));
    }
    double worst = 0.0;
    for (int x = 0; x < db; ++x)
        for (int y = 0; y < db; ++y) {
            const Complex lhs = pairing.col(x).transpose() * fa * pairing.col(y);
            Complex rhs{};
            for (int j = 0; j < db; ++j) {
                const CVector xbjy = alg.multiply(alg.multiply(alg.basis(x), alg.basis(j)), alg.basis(y));
                for (int k = 0; k < db; ++k) {
                    if (fb(k, j) == Complex{}) continue;
                    rhs += fb(k, j) * cf.B.form(xbjy, alg.basis(k));
                }
            }
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

inline double homomorphism_residual(const CardyFrobeniusAlgebra& cf) {
    const int da = cf.A.dim();
    double worst = 0.0;
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const auto ai = cf.A.algebra.basis(i);
            const auto aj = cf.A.algebra.basis(j);
            const auto lhs = cf.phi_apply(cf.A.algebra.multiply(ai, aj));
            const auto rhs = cf.B.algebra.multiply(cf.phi_apply(ai), cf.phi_apply(aj));
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
    return worst;
}

inline double centrality_residual(const CardyFrobeniusAlgebra& cf) {
    double worst = 0.0;
    for (int i = 0; i < cf.A.dim(); ++i) {
        const auto img = cf.phi_apply(cf.A.algebra.basis(i));
        for (int b = 0; b < cf.B.dim(); ++b) {
            const auto bb = cf.B.algebra.basis(b);
            worst = std::max(worst, max_abs_diff(cf.B.algebra.multiply(img, bb), cf.B.algebra.multiply(bb, img)));
        }
    }
    return worst;
}

inline VerificationReport verify_cardy_frobenius(const CardyFrobeniusAlgebra& cf, const ToleranceConfig& tol = {}) {
    cf.check_dims();
    VerificationReport rep;
    const double sa = cf.A.algebra.scale();
    const double sb = cf.B.algebra.scale();
    const double sphi = std::max(1.0, max_abs(cf.phi));
    rep.add_residual("commutativity", cf.A.algebra.commutativity_residual(), tol.eq_tol * sa);
    rep.add_residual("associativity_A", cf.A.algebra.associativity_residual(), tol.eq_tol * sa * sa);
    rep.add_residual("associativity_B", cf.B.algebra.associativity_residual(), tol.eq_tol * sb * sb);
    rep.add_residual("unit_A", cf.A.algebra.unit_residual(), tol.eq_tol * sa);
    rep.add_residual("unit_B", cf.B.algebra.unit_residual(), tol.eq_tol * sb);
    rep.add_residual("homomorphism", homomorphism_residual(cf), tol.eq_tol * sa * sb * sphi * sphi);
    rep.add_residual("unit_preservation", max_abs_diff(cf.phi_apply(cf.A.algebra.unit()), cf.B.algebra.unit()),
                     tol.eq_tol * sphi);
    rep.add_residual("centrality", centrality_residual(cf), tol.eq_tol * sb * sphi);

    const double ma = singular_value_margin(cf.A.gram());
    const double mb = singular_value_margin(cf.B.gram());
    rep.add_margin("nondegeneracy_A", ma, tol.eq_tol);
    rep.add_margin("nondegeneracy_B", mb, tol.eq_tol);

    double trace = std::numeric_limits<double>::infinity();
    double coord = std::numeric_limits<double>::infinity();
    if (ma > tol.eq_tol && mb > tol.eq_tol) {
        trace = cardy_residual_trace(cf, tol.eq_tol);
        coord = cardy_residual_coordinates(cf, tol.eq_tol);
    }
    const double cardy_scale = std::max({1.0, max_abs(cf.B.functional), static_cast<double>(cf.B.dim())});
    rep.add_residual("cardy_trace", trace, tol.eq_tol * cardy_scale);
    rep.add_residual("cardy_coordinate", coord, tol.eq_tol * cardy_scale);
    return rep;
}

inline CardyFrobeniusAlgebra orthogonal_sum_cf(const CardyFrobeniusAlgebra& x, const CardyFrobeniusAlgebra& y) {
    x.check_dims();
    y.check_dims();
    CardyFrobeniusAlgebra out{orthogonal_sum(x.A, y.A), orthogonal_sum(x.B, y.B), {}};
    out.phi = CMatrix::Zero(x.B.dim() + y.B.dim(), x.A.dim() + y.A.dim());
    out.phi.topLeftCorner(x.B.dim(), x.A.dim()) = x.phi;
    out.phi.bottomRightCorner(y.B.dim(), y.A.dim()) = y.phi;
    return out;
}

/// {K(rho^2), H(rho), phi_H} with phi_H(1) = 1^H.
inline CardyFrobeniusAlgebra quaternion_block(Complex rho) {
    CardyFrobeniusAlgebra cf{number_pair(rho * rho), quaternion_pair(rho), CMatrix::Zero(4, 1)};
    cf.phi(0, 0) = 1.0;
    return cf;
}

/// {K(mu^2), M(m)(mu), phi_M} with numbers sent to scalar matrices.
inline CardyFrobeniusAlgebra matrix_block(int m, Complex mu) {
    CardyFrobeniusAlgebra cf{number_pair(mu * mu), matrix_pair(m, mu), CMatrix::Zero(m * m, 1)};
    for (int k = 0; k < m; ++k) cf.phi(k * m + k, 0) = 1.0;
    return cf;
}

/// {K(lambda), 0, 0}.
inline CardyFrobeniusAlgebra closed_only_block(Complex lambda) {
    return {number_pair(lambda), zero_pair(), CMatrix::Zero(0, 1)};
}

/// Idempotent basis of a commutative semisimple Frobenius pair.
struct IdempotentDecomposition {
    std::vector<CVector> idempotents;
    CVector weights;
};

namespace detail {
inline bool lex_less_vector(const CVector& x, const CVector& y) {
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        if (std::abs(x[k] - y[k]) <= 1e-10) continue;
        return lex_less(x[k], y[k]);
    }
    return x.size() < y.size();
}
}  // namespace detail

inline IdempotentDecomposition decompose_commutative(const FrobeniusPair& pair, const ToleranceConfig& tol = {},
                                                     std::uint64_t seed = 42) {
    pair.check_dims();
    const auto& alg = pair.algebra;
    const int d = alg.dim();
    const double scale = alg.scale();
    if (alg.commutativity_residual() > tol.eq_tol * scale) throw Error("decompose_commutative: algebra is not commutative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;

    for (int attempt = 0; attempt < 4; ++attempt) {
        CVector x(static_cast<std::size_t>(d));
        for (auto& v : x) v = Complex(gauss(rng), gauss(rng));
        const CMatrix lx = alg.left_matrix(x);
        Eigen::ComplexEigenSolver<CMatrix> es(lx, true);
        if (es.info() != Eigen::Success) continue;
        const CVector eig = from_eigen(es.eigenvalues());
        const double spread = std::max(1.0, max_abs(eig));
        if (d > 1 && min_pairwise_distance(eig) <= tol.root_sep_tol * spread) continue;

        IdempotentDecomposition out;
        bool ok = true;
        for (int i = 0; i < d; ++i) {
            CVector v = from_eigen(es.eigenvectors().col(i));
            const CVector vv = alg.multiply(v, v);
            // v^2 = c v for an eigenvector of a semisimple algebra
            Complex num{}, den{};
            for (int k = 0; k < d; ++k) {
                num += vv[static_cast<std::size_t>(k)] * std::conj(v[static_cast<std::size_t>(k)]);
                den += v[static_cast<std::size_t>(k)] * std::conj(v[static_cast<std::size_t>(k)]);
            }
            const Complex c = num / den;
            if (std::abs(c) <= tol.eq_tol * scale) {
                ok = false;
                break;
            }
            for (auto& z : v) z /= c;
            out.idempotents.push_back(std::move(v));
        }
        if (!ok) continue;
        std::sort(out.idempotents.begin(), out.idempotents.end(), detail::lex_less_vector);

        double worst = 0.0;
        CVector sum(static_cast<std::size_t>(d), Complex{});
        for (int i = 0; i < d; ++i) {
            const auto& ei = out.idempotents[static_cast<std::size_t>(i)];
            for (int k = 0; k < d; ++k) sum[static_cast<std::size_t>(k)] += ei[static_cast<std::size_t>(k)];
            for (int j = 0; j < d; ++j) {
                const CVector prod = alg.multiply(ei, out.idempotents[static_cast<std::size_t>(j)]);
                worst = std::max(worst, i == j ? max_abs_diff(prod, ei) : max_abs(prod));
            }
        }
        worst = std::max(worst, max_abs_diff(sum, alg.unit()));
        if (worst > std::sqrt(tol.eq_tol) * scale) continue;

        for (const auto& e : out.idempotents) {
            const Complex w = pair.apply(e);
            if (std::abs(w) <= tol.eq_tol) throw DegenerateError("degenerate functional");
            out.weights.push_back(w);
        }
        return out;
    }
    throw DegenerateError("not semisimple");
}

}  // namespace qlg

#endif  // QLG_CARDY_HPP
