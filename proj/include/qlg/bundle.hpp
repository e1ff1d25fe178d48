#ifndef QLG_BUNDLE_HPP
#define QLG_BUNDLE_HPP

// Cardy-Frobenius bundle over Pol(n): flat s-frames, B-structure and
// transition tensors, assembly of the tensor-series potential and its checks.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qlg/moduli.hpp"
#include "qlg/tensor_series.hpp"

namespace qlg {

/// How frame vectors at q are rescaled relative to the base point p.
///   FormPreserving: lambda = (rho_p / rho_q)^{1/2}, keeps l^B(f_V f_W) fixed.
///   Literal:        lambda = rho_p / rho_q.
enum class FrameScale { FormPreserving, Literal };

inline const char* to_string(FrameScale s) { return s == FrameScale::Literal ? "literal" : "form_preserving"; }

struct SLabel {
    int block = 0;
    /// quaternion::one, I, J or K.
    int letter = 0;
};

struct BundleFrame {
    LGPolynomial q;
    FrameScale scale = FrameScale::FormPreserving;
    /// Critical points of q in the labelling of the base model.
    CVector roots;
    CVector mu;
    /// Square roots of mu continued from the base branch.
    CVector rho;
    CVector lambda;
    std::vector<SLabel> labels;
    /// B on the frame basis f_(i,V) = lambda_i V e_{q,i}, index 4i + V.
    FrobeniusPair pair;
    /// l^B(f_a f_b).
    CMatrix b_gram;
};

inline FrobeniusPair frame_pair(const CVector& lambda, const CVector& rho) {
    const int n = static_cast<int>(lambda.size());
    FiniteAlgebra alg = FiniteAlgebra::zeros(4 * n);
    CVector functional(static_cast<std::size_t>(4 * n), Complex{});
    for (int i = 0; i < n; ++i) {
        const Complex lam = lambda[static_cast<std::size_t>(i)];
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w) {
                const auto prod = QuaternionElement::unit(v) * QuaternionElement::unit(w);
                for (int u = 0; u < 4; ++u) alg.at(4 * i + v, 4 * i + w, 4 * i + u) = lam * prod.q[static_cast<std::size_t>(u)];
            }
        alg.unit()[static_cast<std::size_t>(4 * i)] = 1.0 / lam;
        functional[static_cast<std::size_t>(4 * i)] = lam * 2.0 * rho[static_cast<std::size_t>(i)];
    }
    return {std::move(alg), std::move(functional)};
}

inline BundleFrame flat_s_frame(const QuaternionLGModel& model, const LGPolynomial& q, FrameScale scale = FrameScale::FormPreserving,
                                const ToleranceConfig& tol = {}) {
    const int n = model.n();
    if (q.n() != n) throw Error("flat_s_frame: dimension mismatch");
    BundleFrame fr{q, scale, {}, {}, {}, {}, {}, {}, {}};
    try {
        fr.roots = continued_critical_points(q, model.closed.roots, tol);
    } catch (const DegenerateError&) {
        throw DegenerateError("frame continuation failed");
    }
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        Complex mu = 1.0 / static_cast<double>(n + 1);
        for (int j = 0; j < n; ++j)
            if (j != i) mu /= fr.roots[ui] - fr.roots[static_cast<std::size_t>(j)];
        if (std::abs(mu) < tol.eq_tol) throw DegenerateError("degenerate functional");
        fr.mu.push_back(mu);
        Complex r = std::sqrt(mu);
        if (std::abs(-r - model.rho[ui]) < std::abs(r - model.rho[ui])) r = -r;
        fr.rho.push_back(r);
        const Complex ratio = model.rho[ui] / r;
        fr.lambda.push_back(scale == FrameScale::Literal ? ratio : std::sqrt(ratio));
        for (int v = 0; v < 4; ++v) fr.labels.push_back({i, v});
    }
    fr.pair = frame_pair(fr.lambda, fr.rho);
    fr.b_gram = fr.pair.gram();
    return fr;
}

/// The Cardy-Frobenius algebra at q with A on the flat basis d/dt^k and B on
/// the frame basis.
inline CardyFrobeniusAlgebra frame_cf(const BundleFrame& fr) {
    const LGPolynomial& q = fr.q;
    const int n = q.n();
    const FlatChart ch = flat_chart(q);
    CMatrix tmat(n, n);
    for (int k = 0; k < n; ++k) {
        const CVector c = ch.tangents[static_cast<std::size_t>(k)].padded(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) tmat(r, k) = c[static_cast<std::size_t>(r)];
    }
    const auto lu = tmat.fullPivLu();
    const Poly dq = q.derivative();
    FiniteAlgebra alg = FiniteAlgebra::zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Poly prod = poly_mod(poly_mul(ch.tangents[static_cast<std::size_t>(i)], ch.tangents[static_cast<std::size_t>(j)]), dq);
            const CVec c = lu.solve(to_eigen(prod.padded(static_cast<std::size_t>(n))));
            for (int k = 0; k < n; ++k) alg.at(i, j, k) = c(k);
        }
    alg.unit() = from_eigen(lu.solve(to_eigen(Poly{Complex{1.0}}.padded(static_cast<std::size_t>(n)))));
    CVector functional;
    for (int k = 0; k < n; ++k) functional.push_back(residue_functional_laurent(ch.tangents[static_cast<std::size_t>(k)], q));

    CardyFrobeniusAlgebra cf{{std::move(alg), std::move(functional)}, fr.pair, CMatrix::Zero(4 * n, n)};
    // phi(d/dt^k) = sum_i (dp/dt^k)(alpha_i) 1^H e_i, and 1^H e_i = f_(i,1) / lambda_i
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            cf.phi(4 * i, k) = ch.tangents[static_cast<std::size_t>(k)](fr.roots[static_cast<std::size_t>(i)]) / fr.lambda[static_cast<std::size_t>(i)];
    return cf;
}

struct BundleTensors {
    int m = 0;
    /// cB[(a*m + b)*m + c] = l^B(f_a f_b f_c).
    CVector cB;
    /// cAB(k, j) = l^B(phi(d/dt^k) f_j).
    CMatrix cAB;

    Complex b(int a, int bb, int c) const { return cB[static_cast<std::size_t>((a * m + bb) * m + c)]; }
};

inline BundleTensors bundle_tensors(const CardyFrobeniusAlgebra& cf) {
    const int m = cf.B.dim();
    const int n = cf.A.dim();
    const auto& alg = cf.B.algebra;
    BundleTensors bt{m, CVector(static_cast<std::size_t>(m * m * m)), CMatrix(n, m)};
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const CVector ab = alg.multiply(alg.basis(a), alg.basis(b));
            for (int c = 0; c < m; ++c) bt.cB[static_cast<std::size_t>((a * m + b) * m + c)] = cf.B.apply(alg.multiply(ab, alg.basis(c)));
        }
    for (int k = 0; k < n; ++k) {
        const CVector img = cf.phi_apply(cf.A.algebra.basis(k));
        for (int j = 0; j < m; ++j) bt.cAB(k, j) = cf.B.form(img, alg.basis(j));
    }
    return bt;
}

inline BundleTensors bundle_tensors(const BundleFrame& fr) { return bundle_tensors(frame_cf(fr)); }

/// cAB at the point with flat coordinates t, through the frame of `scale`.
inline CMatrix transition_tensor(const QuaternionLGModel& model, const CVector& t, FrameScale scale, const ToleranceConfig& tol = {}) {
    const auto fr = flat_s_frame(model, polynomial_from_flat(model.n(), t), scale, tol);
    return bundle_tensors(frame_cf(fr)).cAB;
}

/// Largest |l^B(f_a f_b)(q) - l^B(f_a f_b)(p)| relative to max(1, |b_gram(p)|).
inline double frame_form_drift(const QuaternionLGModel& model, const LGPolynomial& q, FrameScale scale, const ToleranceConfig& tol = {}) {
    const auto base = flat_s_frame(model, model.closed.p, scale, tol);
    const auto fr = flat_s_frame(model, q, scale, tol);
    return max_abs(CMatrix(fr.b_gram - base.b_gram)) / std::max(1.0, max_abs(base.b_gram));
}

// ---------------------------------------------------------------------------
// Taylor coefficients by central differences with one Richardson step.

using TaylorMap = std::map<std::vector<int>, CMatrix>;

namespace detail {

/// Central O(h^2) stencil for the k-th derivative: (offset, weight) with
/// weights to be divided by h^k.
inline std::vector<std::pair<int, double>> central_stencil(int k) {
    switch (k) {
        case 0: return {{0, 1.0}};
        case 1: return {{-1, -0.5}, {1, 0.5}};
        case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
        case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
        case 4: return {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}};
        default: throw Error("Taylor expansion supports derivative orders up to 4");
    }
}

inline void multi_indices(int n, int order, std::vector<int>& cur, int i, std::vector<std::vector<int>>& out) {
    if (i == n) {
        if (order == 0) out.push_back(cur);
        return;
    }
    for (int k = order; k >= 0; --k) {
        cur[static_cast<std::size_t>(i)] = k;
        multi_indices(n, order - k, cur, i + 1, out);
    }
    cur[static_cast<std::size_t>(i)] = 0;
}

}  // namespace detail

inline std::vector<std::vector<int>> multi_indices(int n, int order) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    detail::multi_indices(n, order, cur, 0, out);
    return out;
}

/// Coefficients d^m f(0)/m! for 1 <= |m| <= max_order.
inline TaylorMap taylor_coefficients(const std::function<CMatrix(const CVector&)>& f, int n, int max_order, double h) {
    // cache in units of h/2 so both step sizes share evaluations
    std::map<std::vector<int>, CMatrix> cache;
    auto eval = [&](const std::vector<int>& half_steps) -> const CMatrix& {
        auto it = cache.find(half_steps);
        if (it != cache.end()) return it->second;
        CVector u(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = 0.5 * h * half_steps[static_cast<std::size_t>(i)];
        return cache.emplace(half_steps, f(u)).first->second;
    };
    auto derivative = [&](const std::vector<int>& m, int unit) {
        // unit = half-steps per stencil step: 2 for h, 1 for h/2
        const double step = 0.5 * h * unit;
        CMatrix acc;
        std::vector<int> offs(static_cast<std::size_t>(n), 0);
        std::function<void(int, double)> rec = [&](int i, double w) {
            if (i == n) {
                const CMatrix& v = eval(offs);
                if (acc.size() == 0) acc = CMatrix::Zero(v.rows(), v.cols());
                acc += w * v;
                return;
            }
            for (const auto& [o, wi] : detail::central_stencil(m[static_cast<std::size_t>(i)])) {
                offs[static_cast<std::size_t>(i)] = o * unit;
                rec(i + 1, w * wi);
            }
            offs[static_cast<std::size_t>(i)] = 0;
        };
        rec(0, 1.0);
        return CMatrix(acc / std::pow(step, total_degree(m)));
    };

    TaylorMap out;
    for (int order = 1; order <= max_order; ++order)
        for (const auto& m : multi_indices(n, order)) {
            const CMatrix coarse = derivative(m, 2);
            const CMatrix fine = derivative(m, 1);
            double fact = 1.0;
            for (int e : m)
                for (int k = 2; k <= e; ++k) fact *= k;
            out.emplace(m, CMatrix((4.0 * fine - coarse) / (3.0 * fact)));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Potential assembly.

struct PotentialParts {
    int n = 0;
    int m = 0;
    int t_degree = 0;
    FrameScale scale = FrameScale::Literal;
    /// Base algebra: A on d/dt^k, B on the frame at the base point.
    CardyFrobeniusAlgebra base;
    /// Terms of degree 4..t_degree of F_A in the shifted coordinates.
    std::vector<MultiMonomial> fa_higher;
    /// For each s-index j, the terms of degree >= 2 of P_j(t).
    std::vector<std::vector<MultiMonomial>> mixed_higher;
    /// max |d_l cAB[k,j] - d_k cAB[l,j]|.
    double closure_residual = 0.0;
    double closure_tol = 0.0;
    /// Largest gap between the cubic part of the shifted F_A and l^A(d_i d_j d_k)/6.
    double cubic_consistency = 0.0;
    /// Fit residual of the reconstructed F_A.
    double fit_residual = 0.0;
};

struct AssemblyOptions {
    FrameScale scale = FrameScale::Literal;
    int samples = 20;
    std::uint64_t seed = 42;
    /// Step of the Taylor stencil in flat coordinates.
    double taylor_step = 1e-2;
};

inline PotentialParts build_potential_parts(const QuaternionLGModel& model, int t_degree, const ToleranceConfig& tol = {},
                                            const AssemblyOptions& opt = {}) {
    if (t_degree < 2) throw Error("assemble_potential: t_degree must be at least 2");
    const int n = model.n();
    PotentialParts parts;
    parts.n = n;
    parts.m = 4 * n;
    parts.t_degree = t_degree;
    parts.scale = opt.scale;
    const LGPolynomial& p0 = model.closed.p;
    parts.base = frame_cf(flat_s_frame(model, p0, opt.scale, tol));
    const CVector t0 = flat_coordinates(p0);

    // F_A around the base point
    const auto rec = reconstruct_potential(n, opt.samples, tol, opt.seed);
    parts.fit_residual = rec.fit_residual;
    const auto shifted = shifted_terms(rec.potential, t0);
    const Tensor3 c0 = structure_tensor(flat_chart(p0));
    for (const auto& term : shifted) {
        const int deg = total_degree(term.exponents);
        if (deg >= 4 && deg <= t_degree) parts.fa_higher.push_back(term);
        if (deg == 3) {
            // coefficient of u^e in (1/6) sum c_ijk u^i u^j u^k is c/prod(e!)
            std::vector<int> idx;
            double fact = 1.0;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < term.exponents[static_cast<std::size_t>(i)]; ++k) {
                    idx.push_back(i);
                    fact *= k + 1;
                }
            const Complex expected = c0(idx[0], idx[1], idx[2]) / fact;
            parts.cubic_consistency = std::max(parts.cubic_consistency, std::abs(term.coeff - expected));
        }
    }

    // mixed block from the Taylor expansion of cAB
    parts.mixed_higher.assign(static_cast<std::size_t>(parts.m), {});
    const int order = std::max(1, t_degree - 2);
    const CMatrix cab0 = bundle_tensors(parts.base).cAB;
    auto f = [&](const CVector& u) {
        CVector t = t0;
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] += u[static_cast<std::size_t>(i)];
        return transition_tensor(model, t, opt.scale, tol);
    };
    const TaylorMap tay = taylor_coefficients(f, n, order, opt.taylor_step);

    parts.closure_tol = 100.0 * tol.fd_step * std::max(1.0, max_abs(cab0));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            std::vector<int> el(static_cast<std::size_t>(n), 0), ek(static_cast<std::size_t>(n), 0);
            el[static_cast<std::size_t>(l)] = 1;
            ek[static_cast<std::size_t>(k)] = 1;
            const CMatrix& dl = tay.at(el);
            const CMatrix& dk = tay.at(ek);
            for (int j = 0; j < parts.m; ++j) parts.closure_residual = std::max(parts.closure_residual, std::abs(dl(k, j) - dk(l, j)));
        }
    if (parts.closure_residual > parts.closure_tol) throw Error("transition tensor not closed");

    // a closed homogeneous 1-form sum_k w_k of degree d integrates to
    // (1/(d+1)) sum_k u^k w_k
    for (int d = 1; d <= t_degree - 2; ++d)
        for (const auto& mi : multi_indices(n, d)) {
            const CMatrix& coeff = tay.at(mi);
            for (int k = 0; k < n; ++k) {
                std::vector<int> e = mi;
                ++e[static_cast<std::size_t>(k)];
                for (int j = 0; j < parts.m; ++j) {
                    const Complex c = coeff(k, j) / static_cast<double>(d + 1);
                    if (c == Complex{}) continue;
                    auto& terms = parts.mixed_higher[static_cast<std::size_t>(j)];
                    bool merged = false;
                    for (auto& tm : terms)
                        if (tm.exponents == e) {
                            tm.coeff += c;
                            merged = true;
                            break;
                        }
                    if (!merged) terms.push_back({e, c});
                }
            }
        }
    return parts;
}

/// F = sum g_ij t^i t^j + (1/6) sum l^A((a_i a_j) a_k) t^i t^j t^k + F_A(deg >= 4)
///   + sum b_ij s^i s^j + sum_j P_j(t) s^j + (1/3) sum l^B((b_i b_j) b_k) s^i s^j s^k.
inline TensorSeries series_from_parts(const PotentialParts& parts) {
    const int n = parts.n;
    const int m = parts.m;
    TensorSeries f(n, m, parts.t_degree);
    const auto& A = parts.base.A;
    const auto& B = parts.base.B;
    const CMatrix ga = A.gram();
    const CMatrix gb = B.gram();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.add({{i, j}, {}}, ga(i, j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CVector ij = A.algebra.multiply(A.algebra.basis(i), A.algebra.basis(j));
            for (int k = 0; k < n; ++k) f.add({{i, j, k}, {}}, A.apply(A.algebra.multiply(ij, A.algebra.basis(k))) / 6.0);
        }
    for (const auto& term : parts.fa_higher) add_symmetric_t(f, term.exponents, term.coeff);

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.add({{}, {i, j}}, gb(i, j));
    for (int k = 0; k < n; ++k) {
        const CVector img = parts.base.phi_apply(A.algebra.basis(k));
        for (int j = 0; j < m; ++j) f.add({{k}, {j}}, B.form(img, B.algebra.basis(j)));
    }
    for (int j = 0; j < m; ++j)
        for (const auto& term : parts.mixed_higher[static_cast<std::size_t>(j)]) add_symmetric_t(f, term.exponents, term.coeff, {j});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const CVector ij = B.algebra.multiply(B.algebra.basis(i), B.algebra.basis(j));
            for (int k = 0; k < m; ++k) f.add({{}, {i, j, k}}, B.apply(B.algebra.multiply(ij, B.algebra.basis(k))) / 3.0);
        }
    return f;
}

inline TensorSeries assemble_potential(const QuaternionLGModel& model, int t_degree, const ToleranceConfig& tol = {},
                                       const AssemblyOptions& opt = {}) {
    return series_from_parts(build_potential_parts(model, t_degree, tol, opt));
}

// ---------------------------------------------------------------------------
// Targeted corruptions of the base algebra.

enum class Corruption { BAssociativity, Centrality, Homomorphism, Cardy, TSymmetry, SwapBlocks };

inline const char* to_string(Corruption c) {
    switch (c) {
        case Corruption::BAssociativity: return "b_associativity";
        case Corruption::Centrality: return "centrality";
        case Corruption::Homomorphism: return "homomorphism";
        case Corruption::Cardy: return "cardy";
        case Corruption::TSymmetry: return "t_symmetry";
        case Corruption::SwapBlocks: return "swap_blocks";
    }
    return "unknown";
}

/// Extended WDVV condition (1-based) expected to flag the corruption.
inline int predicted_condition(Corruption c) {
    switch (c) {
        case Corruption::BAssociativity: return 4;
        case Corruption::Centrality: return 5;
        case Corruption::Homomorphism: return 6;
        case Corruption::Cardy: return 7;
        case Corruption::TSymmetry: return 1;
        case Corruption::SwapBlocks: return 7;
    }
    return 0;
}

/// Name of the pointwise algebraic check expected to flag the corruption.
inline const char* predicted_algebraic_check(Corruption c) {
    switch (c) {
        case Corruption::BAssociativity: return "associativity_B";
        case Corruption::Centrality: return "centrality";
        case Corruption::Homomorphism: return "homomorphism";
        case Corruption::Cardy: return "cardy_trace";
        case Corruption::TSymmetry: return "commutativity";
        case Corruption::SwapBlocks: return "cardy_trace";
    }
    return "";
}

inline PotentialParts corrupt(PotentialParts parts, Corruption c, double eps = 0.1) {
    auto& A = parts.base.A;
    auto& B = parts.base.B;
    auto& phi = parts.base.phi;
    using namespace quaternion;
    switch (c) {
        case Corruption::BAssociativity:
            // IJ = K + eps 1 in the first block
            B.algebra.at(I, J, one) += eps;
            break;
        case Corruption::Centrality:
            // phi(d/dt^n) picks up eps I in the first block
            phi(I, parts.n - 1) += eps;
            break;
        case Corruption::Homomorphism:
            // the first idempotent goes to twice its block unit
            phi.row(0) *= 2.0;
            break;
        case Corruption::Cardy: {
            const double kappa = 1.0 + 5.0 * eps;
            for (auto& x : A.functional) x *= kappa;
            for (auto& t : parts.fa_higher) t.coeff *= kappa;
            break;
        }
        case Corruption::TSymmetry:
            if (parts.n < 2) throw Error("t-symmetry corruption needs n >= 2");
            A.algebra.at(0, 1, 0) += eps;
            break;
        case Corruption::SwapBlocks:
            if (parts.n < 2) throw Error("block swap needs n >= 2");
            for (int v = 0; v < 4; ++v) phi.row(v).swap(phi.row(4 + v));
            break;
    }
    return parts;
}

// ---------------------------------------------------------------------------
// Verification.

struct BundleReport {
    /// Pass/fail entries of both routes.
    VerificationReport report;
    ExtWdvvResult ext;
    bool ext_pass = false;
    bool algebraic_pass = false;
    bool routes_agree = false;
    FrameScale scale = FrameScale::Literal;
    /// Largest relative b_gram drift over the sample points.
    double form_drift = 0.0;
    double closure_residual = 0.0;
    std::vector<CVector> frame_scales;
};

inline VerificationReport algebraic_suite(const CardyFrobeniusAlgebra& cf, double tol) {
    ToleranceConfig tc;
    tc.eq_tol = tol;
    const auto full = verify_cardy_frobenius(cf, tc);
    VerificationReport rep;
    for (const char* name : {"commutativity", "associativity_A", "associativity_B", "centrality", "homomorphism", "cardy_trace"})
        rep.add_residual(name, full.value(name), full.at(name).tol);
    return rep;
}

/// Runs both routes on already assembled parts; `samples` are extra points
/// for the pointwise algebraic suite.
inline BundleReport verify_parts(const QuaternionLGModel& model, const PotentialParts& parts, const std::vector<LGPolynomial>& samples,
                                 double tol, const ToleranceConfig& tc = {}) {
    BundleReport out;
    out.scale = parts.scale;
    out.closure_residual = parts.closure_residual;
    out.ext = ext_wdvv_check(series_from_parts(parts), tol);
    out.ext_pass = out.ext.report.pass();
    out.report.append(out.ext.report, "ext_wdvv.");

    VerificationReport alg = algebraic_suite(parts.base, tol);
    out.report.append(alg, "algebraic.base.");
    out.algebraic_pass = alg.pass();
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto fr = flat_s_frame(model, samples[s], parts.scale, tc);
        out.frame_scales.push_back(fr.lambda);
        out.form_drift = std::max(out.form_drift, frame_form_drift(model, samples[s], parts.scale, tc));
        const auto rep = algebraic_suite(frame_cf(fr), tol);
        out.report.append(rep, "algebraic.sample_" + std::to_string(s) + ".");
        out.algebraic_pass = out.algebraic_pass && rep.pass();
    }
    out.routes_agree = out.ext_pass == out.algebraic_pass;
    return out;
}

/// Assembles the potential at the model's base point and checks it.
inline BundleReport verify_bundle(const QuaternionLGModel& model, int t_degree, const std::vector<LGPolynomial>& samples, double tol,
                                  const ToleranceConfig& tc = {}, const AssemblyOptions& opt = {}) {
    const PotentialParts parts = build_potential_parts(model, t_degree, tc, opt);
    return verify_parts(model, parts, samples, tol, tc);
}

/// Nearby superpotentials a + step * (unit complex direction), seeded.
inline std::vector<LGPolynomial> perturbed_points(const LGPolynomial& p, int count, double step, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LGPolynomial> out;
    const int n = p.n();
    for (int c = 0; c < count; ++c) {
        CVector dir(static_cast<std::size_t>(n));
        double norm = 0.0;
        for (auto& d : dir) {
            d = random_disk_point(rng);
            norm += std::norm(d);
        }
        norm = std::sqrt(norm);
        CVector a = p.a();
        for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] += step * dir[static_cast<std::size_t>(k)] / norm;
        out.emplace_back(n, std::move(a));
    }
    return out;
}

}  // namespace qlg

#endif  // QLG_BUNDLE_HPP
