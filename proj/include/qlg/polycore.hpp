#ifndef QLG_POLYCORE_HPP
#define QLG_POLYCORE_HPP

// Complex polynomial arithmetic, critical points of superpotentials, the
// residue-at-infinity functional and Laurent-series reversion.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qlg/core.hpp"
#include "qlg/linalg.hpp"

namespace qlg {

/// Dense univariate polynomial, ascending coefficients. The zero polynomial
/// has no coefficients; otherwise the last coefficient is nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(CVector coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

    static Poly monomial(std::size_t k, Complex coeff = 1.0) {
        CVector c(k + 1, Complex{});
        c[k] = coeff;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const CVector& coeffs() const { return c_; }
    Complex coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Complex{}; }
    Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }

    /// Coefficients padded (or cut) to exactly `len` entries.
    CVector padded(std::size_t len) const {
        CVector out(len, Complex{});
        for (std::size_t k = 0; k < std::min(len, c_.size()); ++k) out[k] = c_[k];
        return out;
    }

    Complex operator()(Complex z) const {
        Complex acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        CVector d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        CVector c(std::max(x.c_.size(), y.c_.size()), Complex{});
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = x.coeff(k) + y.coeff(k);
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& x, const Poly& y) { return x + (-1.0) * y; }
    friend Poly operator*(Complex s, const Poly& x) {
        CVector c = x.c_;
        for (auto& v : c) v *= s;
        return Poly(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
    }
    CVector c_;
};

/// Coefficient-wise convolution.
inline Poly poly_mul(const Poly& q1, const Poly& q2) {
    if (q1.is_zero() || q2.is_zero()) return {};
    const auto& a = q1.coeffs();
    const auto& b = q2.coeffs();
    CVector c(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return Poly(std::move(c));
}

/// Quotient and remainder of synthetic division; deg remainder < deg m.
inline std::pair<Poly, Poly> poly_divmod(const Poly& q, const Poly& m) {
    if (m.is_zero()) throw Error("zero divisor polynomial");
    const long dm = m.degree();
    if (q.degree() < dm) return {Poly{}, q};
    CVector r = q.coeffs();
    CVector quot(static_cast<std::size_t>(q.degree() - dm + 1), Complex{});
    const Complex lead = m.leading();
    for (long k = q.degree(); k >= dm; --k) {
        const Complex f = r[static_cast<std::size_t>(k)] / lead;
        quot[static_cast<std::size_t>(k - dm)] = f;
        for (long j = 0; j <= dm; ++j) r[static_cast<std::size_t>(k - dm + j)] -= f * m.coeffs()[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(k)] = Complex{};
    }
    r.resize(static_cast<std::size_t>(dm));
    return {Poly(std::move(quot)), Poly(std::move(r))};
}

inline Poly poly_mod(const Poly& q, const Poly& m) { return poly_divmod(q, m).second; }

/// Superpotential p(z) = z^{n+1} + a_1 z^{n-1} + ... + a_n.
class LGPolynomial {
public:
    LGPolynomial(int n, CVector a) : n_(n), a_(std::move(a)) {
        if (n_ < 1) throw Error("LGPolynomial: n must be positive");
        if (a_.size() != static_cast<std::size_t>(n_)) throw Error("LGPolynomial: expected n coefficients a_1..a_n");
        for (const auto& v : a_)
            if (!is_finite(v)) throw Error("LGPolynomial: non-finite coefficient");
    }

    int n() const { return n_; }
    /// a_1 ... a_n (zero-based storage: a()[k-1] = a_k).
    const CVector& a() const { return a_; }
    Complex a(int k) const { return a_[static_cast<std::size_t>(k - 1)]; }

    Poly poly() const {
        CVector c(static_cast<std::size_t>(n_ + 2), Complex{});
        c[static_cast<std::size_t>(n_ + 1)] = 1.0;
        for (int k = 1; k <= n_; ++k) c[static_cast<std::size_t>(n_ - k)] = a(k);
        return Poly(std::move(c));
    }
    Poly derivative() const { return poly().derivative(); }
    Complex operator()(Complex z) const { return poly()(z); }

private:
    int n_;
    CVector a_;
};

/// Newton iterations on `f` from `guess` until |f(root)| <= target or the
/// step stalls. Returns the polished root.
inline Complex polish_root(const Poly& f, Complex guess, double target, int max_iter = 60) {
    const Poly df = f.derivative();
    Complex z = guess;
    for (int it = 0; it < max_iter; ++it) {
        const Complex v = f(z);
        if (std::abs(v) <= target) break;
        const Complex d = df(z);
        if (d == Complex{}) break;
        const Complex step = v / d;
        z -= step;
        if (std::abs(step) <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

/// Roots of a polynomial from the eigenvalues of its companion matrix.
inline CVector companion_roots(const Poly& f) {
    const long deg = f.degree();
    if (deg < 1) return {};
    const auto d = static_cast<Eigen::Index>(deg);
    CMatrix comp = CMatrix::Zero(d, d);
    const Complex lead = f.leading();
    for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -f.coeffs()[static_cast<std::size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    if (es.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    return from_eigen(es.eigenvalues());
}

/// Polishing target for a critical point: eq_tol * max(1, |alpha|^n).
inline double critical_residual_target(const LGPolynomial& p, Complex alpha, double eq_tol) {
    return eq_tol * std::max(1.0, std::pow(std::abs(alpha), p.n()));
}

/// The n simple roots of p', polished and sorted by (re, im).
inline CVector critical_points(const LGPolynomial& p, const ToleranceConfig& tol = {}) {
    const Poly dp = p.derivative();
    CVector roots = companion_roots(dp);
    for (auto& r : roots) {
        // polish well past the acceptance target; the target only bounds the residual
        r = polish_root(dp, r, 1e-3 * critical_residual_target(p, r, tol.eq_tol));
    }
    if (roots.size() > 1 && min_pairwise_distance(roots) <= tol.root_sep_tol) {
        throw DegenerateError("degenerate critical points");
    }
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) { return lex_less(x, y); });
    return roots;
}

/// Reorders `roots` so that entry i is the root nearest to reference[i].
/// Throws when a reference root has two candidates within `sep_tol` of the
/// same distance, or when the assignment is not a bijection.
inline CVector match_roots(const CVector& reference, const CVector& roots, double sep_tol) {
    if (reference.size() != roots.size()) throw DegenerateError("root matching ambiguous");
    CVector out(reference.size());
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < reference.size(); ++i) {
        std::size_t best = roots.size();
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = d1;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            const double d = std::abs(roots[j] - reference[i]);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                best = j;
            } else if (d < d2) {
                d2 = d;
            }
        }
        if (best == roots.size() || used[best] || d2 - d1 <= sep_tol) throw DegenerateError("root matching ambiguous");
        used[best] = true;
        out[i] = roots[best];
    }
    return out;
}

/// Critical points of p continued from `reference` by nearest-neighbour matching.
inline CVector continued_critical_points(const LGPolynomial& p, const CVector& reference, const ToleranceConfig& tol = {}) {
    return match_roots(reference, critical_points(p, tol), tol.root_sep_tol);
}

/// Largest |p'(alpha)| / max(1, |alpha|^n) over the given roots.
inline double critical_residual(const LGPolynomial& p, const CVector& roots) {
    const Poly dp = p.derivative();
    double worst = 0.0;
    for (auto r : roots) worst = std::max(worst, std::abs(dp(r)) / std::max(1.0, std::pow(std::abs(r), p.n())));
    return worst;
}

/// l_p(q) = sum_i q(alpha_i) / p''(alpha_i), the coefficient of z^{-1} of
/// q/p' at infinity.
inline Complex residue_functional(const Poly& q, const LGPolynomial& p, const CVector& roots) {
    const Poly d2 = p.derivative().derivative();
    Complex acc{};
    for (auto r : roots) acc += q(r) / d2(r);
    return acc;
}

inline Complex residue_functional(const Poly& q, const LGPolynomial& p, const ToleranceConfig& tol = {}) {
    return residue_functional(q, p, critical_points(p, tol));
}

/// Same functional through division: [z^{n-1}](q mod p') / (n+1).
inline Complex residue_functional_laurent(const Poly& q, const LGPolynomial& p) {
    const Poly r = poly_mod(q, p.derivative());
    return r.coeff(static_cast<std::size_t>(p.n() - 1)) / static_cast<double>(p.n() + 1);
}

// ---------------------------------------------------------------------------
// Power series in w = 1/omega (or 1/z), truncated to a fixed length.

using Series = CVector;

inline Series series_mul(const Series& x, const Series& y, std::size_t len) {
    Series out(len, Complex{});
    for (std::size_t i = 0; i < std::min(len, x.size()); ++i) {
        if (x[i] == Complex{}) continue;
        for (std::size_t j = 0; j < y.size() && i + j < len; ++j) out[i + j] += x[i] * y[j];
    }
    return out;
}

inline Series series_ipow(const Series& x, int e, std::size_t len) {
    Series out(len, Complex{});
    out[0] = 1.0;
    for (int k = 0; k < e; ++k) out = series_mul(out, x, len);
    return out;
}

/// h^gamma for a series with h_0 = 1 (J.C.P. Miller recurrence).
inline Series series_pow(const Series& h, double gamma, std::size_t len) {
    Series f(len, Complex{});
    if (len == 0) return f;
    f[0] = 1.0;
    for (std::size_t k = 1; k < len; ++k) {
        Complex acc{};
        for (std::size_t j = 1; j <= k && j < h.size(); ++j) {
            acc += ((gamma + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * h[j] * f[k - j];
        }
        f[k] = acc / static_cast<double>(k);
    }
    return f;
}

/// Coefficients of G(w) - 1 where z = omega (1 + sum_k tt_k w^{k+1}), w = 1/omega,
/// and p(z) = omega^{n+1} G(w). Entry j holds [w^j]; length `len`.
inline Series reversion_defect(int n, const CVector& a, const CVector& ttilde, std::size_t len) {
    Series zfac(len, Complex{});
    zfac[0] = 1.0;
    for (std::size_t k = 1; k <= ttilde.size() && k + 1 < len; ++k) zfac[k + 1] = ttilde[k - 1];
    Series g = series_ipow(zfac, n + 1, len);
    for (int j = 1; j <= n; ++j) {
        const Complex aj = a[static_cast<std::size_t>(j - 1)];
        if (aj == Complex{} || static_cast<std::size_t>(j + 1) >= len) continue;
        Series term = series_ipow(zfac, n - j, len);
        for (std::size_t k = len; k-- > static_cast<std::size_t>(j + 1);) term[k] = term[k - static_cast<std::size_t>(j + 1)];
        for (std::size_t k = 0; k <= static_cast<std::size_t>(j); ++k) term[k] = Complex{};
        for (std::size_t k = 0; k < len; ++k) g[k] += aj * term[k];
    }
    g[0] -= 1.0;
    return g;
}

/// Reversion coefficients tt^1..tt^order of z = omega + sum_k tt^k omega^{-k}
/// subject to omega^{n+1} = p(z), matched degree by degree.
inline CVector revert_series(const LGPolynomial& p, int order) {
    if (order < p.n()) throw Error("revert_series: order must be at least n");
    const int n = p.n();
    CVector tt(static_cast<std::size_t>(order), Complex{});
    for (int k = 1; k <= order; ++k) {
        // tt^k enters [w^{k+1}] as (n+1) tt^k and nowhere below
        const Series d = reversion_defect(n, p.a(), tt, static_cast<std::size_t>(k) + 2);
        tt[static_cast<std::size_t>(k - 1)] = -d[static_cast<std::size_t>(k + 1)] / static_cast<double>(n + 1);
    }
    return tt;
}

/// Inverse of revert_series restricted to tt^1..tt^n: the superpotential whose
/// first n reversion coefficients are `ttilde`.
inline LGPolynomial superpotential_from_reversion(int n, const CVector& ttilde) {
    if (ttilde.size() != static_cast<std::size_t>(n)) throw Error("superpotential_from_reversion: expected n coefficients");
    CVector a(static_cast<std::size_t>(n), Complex{});
    for (int k = 1; k <= n; ++k) {
        // a_k enters [w^{k+1}] with unit coefficient and nowhere below
        const Series d = reversion_defect(n, a, ttilde, static_cast<std::size_t>(k) + 2);
        a[static_cast<std::size_t>(k - 1)] = -d[static_cast<std::size_t>(k + 1)];
    }
    return LGPolynomial(n, std::move(a));
}

/// Polynomial part of p'(z) p(z)^{-i/(n+1)} expanded at z = infinity.
inline Poly polynomial_part_of_fractional_quotient(const LGPolynomial& p, int i) {
    const int n = p.n();
    // p^{-i/(n+1)} = z^{-i} (1 + v)^{-i/(n+1)}, v = sum_k a_k w^{k+1}
    const std::size_t len = static_cast<std::size_t>(n + 1);
    Series v(len, Complex{});
    v[0] = 1.0;
    for (int k = 1; k <= n && static_cast<std::size_t>(k + 1) < len; ++k) v[static_cast<std::size_t>(k + 1)] = p.a(k);
    const Series f = series_pow(v, -static_cast<double>(i) / static_cast<double>(n + 1), len);
    const Poly dp = p.derivative();
    CVector out(static_cast<std::size_t>(n), Complex{});
    for (long m = 0; m <= dp.degree(); ++m) {
        for (std::size_t k = 0; k < f.size(); ++k) {
            const long e = m - i - static_cast<long>(k);
            if (e < 0) break;
            if (e < n) out[static_cast<std::size_t>(e)] += dp.coeffs()[static_cast<std::size_t>(m)] * f[k];
        }
    }
    return Poly(std::move(out));
}

/// Lagrange basis polynomial e_i(z) = prod_{j != i} (z - alpha_j)/(alpha_i - alpha_j).
inline Poly lagrange_basis(const CVector& roots, std::size_t i) {
    Poly e{Complex{1.0}};
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        const Complex denom = roots[i] - roots[j];
        e = poly_mul(e, Poly{-roots[j] / denom, 1.0 / denom});
    }
    return e;
}

/// The polynomial of degree < roots.size() taking `values` at `roots`.
inline Poly interpolate(const CVector& roots, const CVector& values) {
    Poly out;
    for (std::size_t i = 0; i < roots.size(); ++i) out = out + values[i] * lagrange_basis(roots, i);
    return out;
}

}  // namespace qlg

#endif  // QLG_POLYCORE_HPP
