#ifndef QLG_LANDAU_GINZBURG_HPP
#define QLG_LANDAU_GINZBURG_HPP

// The closed algebra A_p = C[z]/(p') and the quaternion Landau-Ginzburg model.

#include <vector>

#include "qlg/cardy.hpp"
#include "qlg/polycore.hpp"

namespace qlg {

struct LGClosedAlgebra {
    LGPolynomial p;
    CVector roots;
    /// On the monomial basis 1, z, ..., z^{n-1}.
    FrobeniusPair pair;
    std::vector<Poly> idempotents;
    /// l_p(e_i).
    CVector mu;
    /// (1/(n+1)) prod_{j != i} 1/(alpha_i - alpha_j).
    CVector mu_product;

    int n() const { return p.n(); }

    /// Coordinates of a polynomial on the monomial basis after reduction mod p'.
    CVector reduce(const Poly& q) const { return poly_mod(q, p.derivative()).padded(static_cast<std::size_t>(n())); }

    /// Coordinates on the idempotent basis: q = sum_i q(alpha_i) e_i in A_p.
    CVector idempotent_coords(const Poly& q) const {
        CVector out;
        out.reserve(roots.size());
        for (auto r : roots) out.push_back(q(r));
        return out;
    }
};

/// Principal square root with arg in (-pi/2, pi/2]; values numerically on
/// the cut are sent to the +i side.
inline Complex principal_sqrt(Complex z) {
    Complex s = std::sqrt(z);
    if (s.imag() < 0.0 && std::abs(s.real()) <= 1e-14 * std::abs(s)) s = -s;
    return s;
}

inline LGClosedAlgebra build_closed(const LGPolynomial& p, const ToleranceConfig& tol = {}) {
    tol.validate();
    const int n = p.n();
    LGClosedAlgebra out{p, critical_points(p, tol), {}, {}, {}, {}};
    const Poly dp = p.derivative();

    FiniteAlgebra alg = FiniteAlgebra::zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CVector prod = poly_mod(Poly::monomial(static_cast<std::size_t>(i + j)), dp).padded(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) alg.at(i, j, k) = prod[static_cast<std::size_t>(k)];
        }
    alg.unit()[0] = 1.0;
    CVector functional(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) functional[static_cast<std::size_t>(k)] = residue_functional_laurent(Poly::monomial(static_cast<std::size_t>(k)), p);
    out.pair = {std::move(alg), std::move(functional)};

    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        out.idempotents.push_back(lagrange_basis(out.roots, i));
        out.mu.push_back(residue_functional_laurent(out.idempotents.back(), p));
        Complex prod = 1.0 / static_cast<double>(n + 1);
        for (std::size_t j = 0; j < out.roots.size(); ++j)
            if (j != i) prod /= out.roots[i] - out.roots[j];
        out.mu_product.push_back(prod);
        if (std::abs(out.mu.back()) < tol.eq_tol) throw DegenerateError("degenerate functional");
    }
    return out;
}

/// Largest coefficient of e_i e_j - delta_ij e_i (mod p') and of sum_i e_i - 1.
inline double idempotent_residual(const LGClosedAlgebra& closed) {
    const auto n = closed.idempotents.size();
    double worst = 0.0;
    Poly sum;
    for (std::size_t i = 0; i < n; ++i) {
        sum = sum + closed.idempotents[i];
        for (std::size_t j = 0; j < n; ++j) {
            Poly defect = poly_mul(closed.idempotents[i], closed.idempotents[j]);
            if (i == j) defect = defect - closed.idempotents[i];
            worst = std::max(worst, max_abs(closed.reduce(defect)));
        }
    }
    worst = std::max(worst, max_abs((sum - Poly{Complex{1.0}}).coeffs()));
    return worst;
}

inline double mu_agreement_residual(const LGClosedAlgebra& closed) { return max_abs_diff(closed.mu, closed.mu_product); }

struct QuaternionLGModel {
    LGClosedAlgebra closed;
    CVector rho;
    /// +1 or -1 per block relative to the principal root.
    std::vector<int> branch;
    /// A on the idempotent basis e_1..e_n; B on (block i, letter 1, I, J, K) at index 4i + letter.
    CardyFrobeniusAlgebra cf;

    int n() const { return closed.n(); }
};

/// The i-th summand {(C e_i, mu_i), H(rho_i), e_i -> 1^H}.
inline CardyFrobeniusAlgebra lg_block(Complex mu, Complex rho) {
    CardyFrobeniusAlgebra cf{number_pair(mu), quaternion_pair(rho), CMatrix::Zero(4, 1)};
    cf.phi(0, 0) = 1.0;
    return cf;
}

inline QuaternionLGModel build_quaternion_model(const LGPolynomial& p, std::vector<int> branch = {},
                                                const ToleranceConfig& tol = {}) {
    const int n = p.n();
    if (branch.empty()) branch.assign(static_cast<std::size_t>(n), 1);
    if (branch.size() != static_cast<std::size_t>(n)) throw Error("branch list must have one sign per critical point");
    for (int s : branch)
        if (s != 1 && s != -1) throw Error("branch signs must be +1 or -1");

    QuaternionLGModel model{build_closed(p, tol), {}, std::move(branch), {}};
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        model.rho.push_back(static_cast<double>(model.branch[ui]) * principal_sqrt(model.closed.mu[ui]));
        const auto block = lg_block(model.closed.mu[ui], model.rho[ui]);
        model.cf = i == 0 ? block : orthogonal_sum_cf(model.cf, block);
    }
    return model;
}

/// Change of basis from the monomial basis of A_p to the idempotent basis:
/// column k holds the coordinates of z^k, i.e. alpha_i^k.
inline CMatrix monomial_to_idempotent(const LGClosedAlgebra& closed) {
    const int n = closed.n();
    CMatrix v(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) v(i, k) = std::pow(closed.roots[static_cast<std::size_t>(i)], k);
    return v;
}

/// Largest disagreement between the idempotent-basis A-side of the model and
/// the monomial-basis pair transported through the change of basis.
inline double closed_basis_residual(const QuaternionLGModel& model) {
    const CMatrix v = monomial_to_idempotent(model.closed);
    const CMatrix g_mono = model.closed.pair.gram();
    const CMatrix g_idem = model.cf.A.gram();
    const CMatrix vinv = v.inverse();
    return max_abs(CMatrix(vinv.transpose() * g_mono * vinv - g_idem));
}

}  // namespace qlg

#endif  // QLG_LANDAU_GINZBURG_HPP
