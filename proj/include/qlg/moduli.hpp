#ifndef QLG_MODULI_HPP
#define QLG_MODULI_HPP

// Frobenius manifold structure on the space Pol(n) of superpotentials.

#include <array>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qlg/landau_ginzburg.hpp"

namespace qlg {

struct EulerData {
    /// d_i = (n + 2 - i)/(n + 1), stored at index i - 1.
    std::vector<double> d;
    std::vector<double> r;
    double v = 0.0;
};

inline EulerData euler_data(int n) {
    if (n < 1) throw Error("euler_data: n must be positive");
    EulerData e;
    for (int i = 1; i <= n; ++i) {
        e.d.push_back(static_cast<double>(n + 2 - i) / static_cast<double>(n + 1));
        e.r.push_back(0.0);
    }
    e.v = 2.0 / static_cast<double>(n + 1) - 1.0;
    return e;
}

/// Rank-3 array over n indices.
struct Tensor3 {
    int n = 0;
    CVector v;

    explicit Tensor3(int dim = 0) : n(dim), v(static_cast<std::size_t>(dim * dim * dim), Complex{}) {}
    Complex& operator()(int i, int j, int k) { return v[static_cast<std::size_t>((i * n + j) * n + k)]; }
    Complex operator()(int i, int j, int k) const { return v[static_cast<std::size_t>((i * n + j) * n + k)]; }
};

// ---------------------------------------------------------------------------
// Canonical coordinates x^i = p(alpha_i).

inline CVector critical_values(const LGPolynomial& p, const CVector& roots) {
    CVector x;
    x.reserve(roots.size());
    const Poly q = p.poly();
    for (auto r : roots) x.push_back(q(r));
    return x;
}

/// dx^i/da_k = alpha_i^{n-k}; row i, column k - 1.
inline CMatrix canonical_jacobian(int n, const CVector& roots) {
    CMatrix j(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= n; ++k) j(i, k - 1) = std::pow(roots[static_cast<std::size_t>(i)], n - k);
    return j;
}

/// The polynomial sum_k v_k z^{n-k} for a tangent vector with a-components v.
inline Poly tangent_polynomial(int n, const CVector& da) {
    CVector c(static_cast<std::size_t>(n), Complex{});
    for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(n - k)] = da[static_cast<std::size_t>(k - 1)];
    return Poly(std::move(c));
}

inline CVector tangent_components(int n, const Poly& q) {
    CVector da(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) da[static_cast<std::size_t>(k - 1)] = q.coeff(static_cast<std::size_t>(n - k));
    return da;
}

struct CanonicalChart {
    LGPolynomial p;
    CVector roots;
    CVector x;
    CMatrix J_xa;
    /// max_j |dp/dx^j - e_j| from the exact Jacobian.
    double tangent_residual = 0.0;
    /// The same comparison by central differences in x.
    double fd_residual = 0.0;
    /// max_k |sum_i mu_i dx^i/da_k - delta_k1/(n+1)|.
    double one_form_residual = 0.0;
};

namespace detail {
/// a with x(a) = target, by Newton from `guess` with continued root labels.
inline CVector solve_for_canonical(int n, CVector guess, const CVector& target, CVector roots, const ToleranceConfig& tol) {
    for (int it = 0; it < 20; ++it) {
        const LGPolynomial q(n, guess);
        roots = continued_critical_points(q, roots, tol);
        const CVector x = critical_values(q, roots);
        CVec defect(n);
        for (int i = 0; i < n; ++i) defect(i) = x[static_cast<std::size_t>(i)] - target[static_cast<std::size_t>(i)];
        if (defect.cwiseAbs().maxCoeff() <= 1e-15 * std::max(1.0, max_abs(target))) break;
        const CVec step = canonical_jacobian(n, roots).fullPivLu().solve(defect);
        for (int k = 0; k < n; ++k) guess[static_cast<std::size_t>(k)] -= step(k);
    }
    return guess;
}
}  // namespace detail

inline CanonicalChart canonical_chart(const LGPolynomial& p, const ToleranceConfig& tol = {}) {
    const LGClosedAlgebra closed = build_closed(p, tol);
    const int n = p.n();
    CanonicalChart ch{p, closed.roots, critical_values(p, closed.roots), canonical_jacobian(n, closed.roots), 0, 0, 0};
    const CMatrix jax = checked_inverse(ch.J_xa, tol.eq_tol, "degenerate critical points");

    const double h = tol.fd_step * std::max(1.0, max_abs(ch.x));
    for (int j = 0; j < n; ++j) {
        const Poly& e = closed.idempotents[static_cast<std::size_t>(j)];
        const Poly exact = tangent_polynomial(n, from_eigen(jax.col(j)));
        ch.tangent_residual = std::max(ch.tangent_residual, max_abs((exact - e).coeffs()));

        CVector xp = ch.x, xm = ch.x;
        xp[static_cast<std::size_t>(j)] += h;
        xm[static_cast<std::size_t>(j)] -= h;
        CVector ap = p.a(), am = p.a();
        for (int k = 0; k < n; ++k) {
            ap[static_cast<std::size_t>(k)] += h * jax(k, j);
            am[static_cast<std::size_t>(k)] -= h * jax(k, j);
        }
        ap = detail::solve_for_canonical(n, ap, xp, ch.roots, tol);
        am = detail::solve_for_canonical(n, am, xm, ch.roots, tol);
        CVector da(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) da[static_cast<std::size_t>(k)] = (ap[static_cast<std::size_t>(k)] - am[static_cast<std::size_t>(k)]) / (2.0 * h);
        ch.fd_residual = std::max(ch.fd_residual, max_abs((tangent_polynomial(n, da) - e).coeffs()));
    }
    for (int k = 1; k <= n; ++k) {
        Complex acc{};
        for (int i = 0; i < n; ++i) acc += closed.mu[static_cast<std::size_t>(i)] * ch.J_xa(i, k - 1);
        const Complex expected = k == 1 ? Complex(1.0 / static_cast<double>(n + 1)) : Complex{};
        ch.one_form_residual = std::max(ch.one_form_residual, std::abs(acc - expected));
    }
    return ch;
}

// ---------------------------------------------------------------------------
// Flat coordinates.

/// t from the reversion coefficients. For n = 1 the unit field is kept as
/// d/dt^1, so t^1 = -2 tt^1 and the metric is the constant 1/2.
inline CVector flat_from_ttilde(int n, const CVector& tt) {
    CVector t(static_cast<std::size_t>(n));
    if (n == 1) {
        t[0] = -2.0 * tt[0];
        return t;
    }
    const double s = std::sqrt(static_cast<double>(n + 1));
    for (int i = 1; i <= n; ++i) {
        const Complex v = tt[static_cast<std::size_t>(n - i)];
        if (i == 1)
            t[0] = -static_cast<double>(n + 1) * v;
        else if (i == n)
            t[static_cast<std::size_t>(n - 1)] = -v;
        else
            t[static_cast<std::size_t>(i - 1)] = -s * v;
    }
    return t;
}

inline CVector ttilde_from_flat(int n, const CVector& t) {
    CVector tt(static_cast<std::size_t>(n));
    if (n == 1) {
        tt[0] = -0.5 * t[0];
        return tt;
    }
    const double s = std::sqrt(static_cast<double>(n + 1));
    for (int i = 1; i <= n; ++i) {
        const Complex v = t[static_cast<std::size_t>(i - 1)];
        Complex& dst = tt[static_cast<std::size_t>(n - i)];
        if (i == 1)
            dst = -v / static_cast<double>(n + 1);
        else if (i == n)
            dst = -v;
        else
            dst = -v / s;
    }
    return tt;
}

/// dtt^{n+1-i}/dt^i, the factor relating d/dt^i to d/dtt^{n+1-i}.
inline double flat_scale(int n, int i) {
    if (n == 1) return -0.5;
    if (i == 1) return -1.0 / static_cast<double>(n + 1);
    if (i == n) return -1.0;
    return -1.0 / std::sqrt(static_cast<double>(n + 1));
}

inline LGPolynomial polynomial_from_flat(int n, const CVector& t) {
    if (t.size() != static_cast<std::size_t>(n)) throw Error("polynomial_from_flat: expected n coordinates");
    return superpotential_from_reversion(n, ttilde_from_flat(n, t));
}

inline CVector flat_coordinates(const LGPolynomial& p) { return flat_from_ttilde(p.n(), revert_series(p, p.n())); }

/// g(d/dt^i, d/dt^j) in the chosen normalization.
inline CMatrix flat_metric_target(int n) {
    CMatrix eta = CMatrix::Zero(n, n);
    if (n == 1) {
        eta(0, 0) = 0.5;
        return eta;
    }
    for (int i = 0; i < n; ++i) eta(i, n - 1 - i) = 1.0;
    return eta;
}

struct FlatChart {
    LGPolynomial p;
    CVector ttilde;
    CVector t;
    /// dp/dtt^i and dp/dt^i as polynomials of degree < n.
    std::vector<Poly> ttilde_tangents;
    std::vector<Poly> tangents;
    /// da_k/dt^i at row k - 1, column i - 1.
    CMatrix J_at;

    int n() const { return p.n(); }
};

/// Metric and structure data use only the Laurent form of l_p, so the chart
/// itself needs no critical points.
inline FlatChart flat_chart(const LGPolynomial& p) {
    const int n = p.n();
    FlatChart ch{p, revert_series(p, n), {}, {}, {}, CMatrix(n, n)};
    ch.t = flat_from_ttilde(n, ch.ttilde);
    for (int i = 1; i <= n; ++i) ch.ttilde_tangents.push_back((-1.0) * polynomial_part_of_fractional_quotient(p, i));
    for (int i = 1; i <= n; ++i) {
        const int src = n == 1 ? 1 : n + 1 - i;
        ch.tangents.push_back(flat_scale(n, i) * ch.ttilde_tangents[static_cast<std::size_t>(src - 1)]);
        const CVector da = tangent_components(n, ch.tangents.back());
        for (int k = 0; k < n; ++k) ch.J_at(k, i - 1) = da[static_cast<std::size_t>(k)];
    }
    return ch;
}

inline Complex residue_pairing(const LGPolynomial& p, const Poly& x, const Poly& y) {
    return residue_functional_laurent(poly_mul(x, y), p);
}

inline CMatrix flat_metric(const FlatChart& ch) {
    const int n = ch.n();
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = residue_pairing(ch.p, ch.tangents[static_cast<std::size_t>(i)], ch.tangents[static_cast<std::size_t>(j)]);
    return g;
}

inline double metric_residual(const FlatChart& ch) {
    return max_abs(CMatrix(flat_metric(ch) - flat_metric_target(ch.n())));
}

/// max |g(d/dtt^i, d/dtt^j) - (n+1) delta_{i+j,n+1}|.
inline double ttilde_metric_residual(const FlatChart& ch) {
    const int n = ch.n();
    double worst = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Complex g = residue_pairing(ch.p, ch.ttilde_tangents[static_cast<std::size_t>(i - 1)],
                                              ch.ttilde_tangents[static_cast<std::size_t>(j - 1)]);
            const double expected = i + j == n + 1 ? static_cast<double>(n + 1) : 0.0;
            worst = std::max(worst, std::abs(g - expected));
        }
    return worst;
}

/// Largest coefficient of dp/dt^1 - 1.
inline double unit_field_residual(const FlatChart& ch) {
    return max_abs((ch.tangents[0] - Poly{Complex{1.0}}).coeffs());
}

// ---------------------------------------------------------------------------
// Euler field E = sum_k (k+1)/(n+1) a_k d/da_k.

inline VerificationReport euler_check(const LGPolynomial& p, const ToleranceConfig& tol = {}) {
    const int n = p.n();
    const EulerData e = euler_data(n);
    CVector le(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) le[static_cast<std::size_t>(k - 1)] = static_cast<double>(k + 1) / static_cast<double>(n + 1) * p.a(k);

    const Poly q = p.poly();
    const Poly expected = q - (1.0 / static_cast<double>(n + 1)) * poly_mul(Poly{0.0, 1.0}, q.derivative());
    const double scale = std::max(1.0, max_abs(p.a()));
    VerificationReport rep;
    rep.add_residual("euler_polynomial", max_abs((tangent_polynomial(n, le) - expected).coeffs()), tol.eq_tol * scale);

    const FlatChart ch = flat_chart(p);
    const CVec lt = ch.J_at.fullPivLu().solve(to_eigen(le));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(lt(i) - e.d[static_cast<std::size_t>(i)] * ch.t[static_cast<std::size_t>(i)]));
    rep.add_residual("euler_flat", worst, tol.eq_tol * std::max(1.0, max_abs(ch.t)));
    return rep;
}

// ---------------------------------------------------------------------------
// Structure tensor c_ijk = l_p(d_i d_j d_k).

inline Tensor3 structure_tensor(const FlatChart& ch) {
    const int n = ch.n();
    const Poly dp = ch.p.derivative();
    Tensor3 c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Poly ij = poly_mod(poly_mul(ch.tangents[static_cast<std::size_t>(i)], ch.tangents[static_cast<std::size_t>(j)]), dp);
            for (int k = j; k < n; ++k) {
                const Complex v = residue_functional_laurent(poly_mul(ij, ch.tangents[static_cast<std::size_t>(k)]), ch.p);
                const int idx[3] = {i, j, k};
                int perm[3] = {0, 1, 2};
                do {
                    c(idx[perm[0]], idx[perm[1]], idx[perm[2]]) = v;
                } while (std::next_permutation(perm, perm + 3));
            }
        }
    return c;
}

inline Tensor3 structure_tensor_at(int n, const CVector& t) { return structure_tensor(flat_chart(polynomial_from_flat(n, t))); }

// ---------------------------------------------------------------------------
// Potentials.

struct PotentialPoly {
    int n = 0;
    std::vector<MultiMonomial> terms;
    EulerData euler;

    Complex eval(const CVector& t) const { return partial({}, t); }

    /// Mixed partial derivative along the listed (0-based) indices.
    Complex partial(const std::vector<int>& idx, const CVector& t) const {
        Complex acc{};
        for (const auto& m : terms) {
            std::vector<int> e = m.exponents;
            Complex c = m.coeff;
            for (int i : idx) {
                auto& ei = e[static_cast<std::size_t>(i)];
                if (ei == 0) {
                    c = 0.0;
                    break;
                }
                c *= static_cast<double>(ei);
                --ei;
            }
            if (c == Complex{}) continue;
            for (int i = 0; i < n; ++i) c *= std::pow(t[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
            acc += c;
        }
        return acc;
    }

    Tensor3 third_derivatives(const CVector& t) const {
        Tensor3 out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) out(i, j, k) = partial({i, j, k}, t);
        return out;
    }

    Complex coefficient(const std::vector<int>& exponents) const {
        for (const auto& m : terms)
            if (m.exponents == exponents) return m.coeff;
        return {};
    }

    Complex& coefficient_ref(const std::vector<int>& exponents) {
        for (auto& m : terms)
            if (m.exponents == exponents) return m.coeff;
        throw Error("potential has no such monomial");
    }
};

inline int total_degree(const std::vector<int>& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

/// Exponent vectors of total degree >= 3 with sum_i m_i d_i = v + 3.
inline std::vector<std::vector<int>> quasi_homogeneous_monomials(int n) {
    // integer form: sum_i m_i (n + 2 - i) = 2n + 4
    const int target = 2 * n + 4;
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            if (left == 0 && total_degree(e) >= 3) out.push_back(e);
            return;
        }
        const int w = n + 1 - i;
        for (int m = 0; m * w <= left; ++m) {
            e[static_cast<std::size_t>(i)] = m;
            rec(i + 1, left - m * w);
        }
        e[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, target);
    return out;
}

/// Reverses the variable order t^i <-> t^{n+1-i}.
inline PotentialPoly reverse_indices(const PotentialPoly& f) {
    PotentialPoly out = f;
    for (auto& m : out.terms) std::reverse(m.exponents.begin(), m.exponents.end());
    std::reverse(out.euler.d.begin(), out.euler.d.end());
    return out;
}

inline Complex random_disk_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(u(rng));
    const double th = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, th);
}

/// A superpotential with a-coefficients in the unit disk, redrawn until its
/// critical points are separated and every mu_i is away from zero.
inline LGPolynomial sample_polynomial(int n, std::mt19937_64& rng, const ToleranceConfig& tol = {}) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        CVector a(static_cast<std::size_t>(n));
        for (auto& x : a) x = random_disk_point(rng);
        LGPolynomial p(n, std::move(a));
        try {
            (void)build_closed(p, tol);
            return p;
        } catch (const DegenerateError&) {
        }
    }
    throw DegenerateError("could not sample a nondegenerate superpotential");
}

inline std::vector<CVector> random_flat_points(int n, int count, std::uint64_t seed, const ToleranceConfig& tol = {}) {
    std::mt19937_64 rng(seed);
    std::vector<CVector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(flat_coordinates(sample_polynomial(n, rng, tol)));
    return pts;
}

struct ReconstructionResult {
    PotentialPoly potential;
    double fit_residual = 0.0;
    std::vector<CVector> sample_points;
};

inline ReconstructionResult reconstruct_potential(int n, int sample_count, const ToleranceConfig& tol = {},
                                                  std::uint64_t seed = 42) {
    if (n < 1) throw Error("reconstruct_potential: n must be positive");
    if (sample_count < 1) throw Error("reconstruct_potential: need at least one sample");
    const auto ansatz = quasi_homogeneous_monomials(n);
    if (ansatz.empty()) throw DegenerateError("potential ansatz has no admissible monomials");

    ReconstructionResult res;
    res.potential.n = n;
    res.potential.euler = euler_data(n);
    res.sample_points = random_flat_points(n, sample_count, seed, tol);

    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) triples.push_back({i, j, k});

    const auto rows = static_cast<Eigen::Index>(res.sample_points.size() * triples.size());
    const auto cols = static_cast<Eigen::Index>(ansatz.size());
    CMatrix a(rows, cols);
    CVec b(rows);
    Eigen::Index row = 0;
    for (const auto& t : res.sample_points) {
        const Tensor3 c = structure_tensor_at(n, t);
        for (const auto& tr : triples) {
            for (Eigen::Index m = 0; m < cols; ++m) {
                PotentialPoly mono{n, {{ansatz[static_cast<std::size_t>(m)], 1.0}}, {}};
                a(row, m) = mono.partial({tr[0], tr[1], tr[2]}, t);
            }
            b(row) = c(tr[0], tr[1], tr[2]);
            ++row;
        }
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(a);
    if (qr.rank() < cols) throw DegenerateError("potential ansatz is rank deficient on the samples");
    const CVec x = qr.solve(b);
    const double bmax = b.size() == 0 ? 0.0 : b.cwiseAbs().maxCoeff();
    res.fit_residual = (a * x - b).cwiseAbs().maxCoeff() / std::max(1.0, bmax);
    for (Eigen::Index m = 0; m < cols; ++m) res.potential.terms.push_back({ansatz[static_cast<std::size_t>(m)], x(m)});
    return res;
}

/// Polynomial in u with F(t0 + u) = sum of the returned terms.
inline std::vector<MultiMonomial> shifted_terms(const PotentialPoly& f, const CVector& t0) {
    std::vector<MultiMonomial> out;
    auto add = [&](const std::vector<int>& e, Complex c) {
        for (auto& m : out)
            if (m.exponents == e) {
                m.coeff += c;
                return;
            }
        out.push_back({e, c});
    };
    for (const auto& m : f.terms) {
        // expand prod_i (t0_i + u_i)^{m_i} by binomials
        std::vector<int> e(static_cast<std::size_t>(f.n), 0);
        std::function<void(int, Complex)> rec = [&](int i, Complex c) {
            if (i == f.n) {
                add(e, c);
                return;
            }
            const int mi = m.exponents[static_cast<std::size_t>(i)];
            double binom = 1.0;
            for (int k = 0; k <= mi; ++k) {
                e[static_cast<std::size_t>(i)] = k;
                rec(i + 1, c * binom * std::pow(t0[static_cast<std::size_t>(i)], mi - k));
                binom = binom * static_cast<double>(mi - k) / static_cast<double>(k + 1);
            }
            e[static_cast<std::size_t>(i)] = 0;
        };
        rec(0, m.coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classical WDVV.

/// With `index_reversal` the potential is read in the convention whose unit
/// field is d/dt^n and is reversed before checking.
inline VerificationReport wdvv_check(const PotentialPoly& f_in, const std::vector<CVector>& points_in, double tol,
                                     bool index_reversal = false) {
    const PotentialPoly f = index_reversal ? reverse_indices(f_in) : f_in;
    const EulerData& e = f.euler;
    const int n = f.n;
    const CMatrix eta = flat_metric_target(n);
    const CMatrix eta_inv = eta.inverse();

    double assoc = 0.0, assoc_scale = 1.0, norm = 0.0;
    for (auto t : points_in) {
        if (index_reversal) std::reverse(t.begin(), t.end());
        const Tensor3 c = f.third_derivatives(t);
        assoc_scale = std::max(assoc_scale, max_abs(c.v));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        Complex lhs{}, rhs{};
                        for (int q = 0; q < n; ++q)
                            for (int r = 0; r < n; ++r) {
                                if (eta_inv(q, r) == Complex{}) continue;
                                lhs += c(i, j, q) * eta_inv(q, r) * c(r, k, l);
                                rhs += c(k, j, q) * eta_inv(q, r) * c(r, i, l);
                            }
                        assoc = std::max(assoc, std::abs(lhs - rhs));
                    }
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) norm = std::max(norm, std::abs(c(0, j, k) - eta(j, k)));
    }

    double qh = 0.0;
    for (const auto& m : f.terms) {
        if (total_degree(m.exponents) < 3) continue;
        double deg = 0.0;
        for (int i = 0; i < n; ++i) deg += m.exponents[static_cast<std::size_t>(i)] * e.d[static_cast<std::size_t>(i)];
        qh = std::max(qh, std::abs(m.coeff) * std::abs(deg - (e.v + 3.0)));
    }

    VerificationReport rep;
    rep.add_residual("associativity", assoc, tol * assoc_scale * assoc_scale);
    rep.add_residual("normalization", norm, tol);
    rep.add_residual("quasi_homogeneity", qh, tol);
    return rep;
}

}  // namespace qlg

#endif  // QLG_MODULI_HPP
