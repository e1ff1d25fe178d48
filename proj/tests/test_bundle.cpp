#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qlg/bundle.hpp"

using namespace qlg;

namespace {

const LGPolynomial kBase(2, {-3.0, 0.0});

const QuaternionLGModel& base_model() {
    static const auto m = build_quaternion_model(kBase);
    return m;
}

const PotentialParts& base_parts() {
    static const auto p = build_potential_parts(base_model(), 4);
    return p;
}

/// mu and rho at q from Durand-Kerner roots, rho continued from the base.
struct OracleFrame {
    oracle::Vec roots, mu, rho;
};

OracleFrame oracle_frame(const QuaternionLGModel& model, const CVector& a) {
    OracleFrame o;
    const auto raw = oracle::critical_points(a);
    for (auto r0 : model.closed.roots) {
        auto best = std::min_element(raw.begin(), raw.end(), [&](Complex x, Complex y) { return std::abs(x - r0) < std::abs(y - r0); });
        o.roots.push_back(*best);
    }
    o.mu = oracle::mu_at_roots(a, o.roots);
    for (std::size_t i = 0; i < o.mu.size(); ++i) {
        Complex r = std::sqrt(o.mu[i]);
        if (std::abs(r + model.rho[i]) < std::abs(r - model.rho[i])) r = -r;
        o.rho.push_back(r);
    }
    return o;
}

/// dp/dt^k at q, coefficients low to high, by central differences of a(t).
std::vector<oracle::Vec> fd_tangents(const LGPolynomial& q, double h = 1e-5) {
    const int n = q.n();
    const CVector t = flat_coordinates(q);
    std::vector<oracle::Vec> out;
    for (int k = 0; k < n; ++k) {
        CVector tp = t, tm = t;
        tp[static_cast<std::size_t>(k)] += h;
        tm[static_cast<std::size_t>(k)] -= h;
        const auto ap = polynomial_from_flat(n, tp).a(), am = polynomial_from_flat(n, tm).a();
        oracle::Vec c(static_cast<std::size_t>(n), Complex{});
        for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(n - j)] = (ap[static_cast<std::size_t>(j - 1)] - am[static_cast<std::size_t>(j - 1)]) / (2.0 * h);
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST(Frame, IdentityAtBase) {
    const auto fr = flat_s_frame(base_model(), kBase);
    for (auto l : fr.lambda) EXPECT_LT(std::abs(l - 1.0), 1e-14);
    EXPECT_LT(max_abs(CMatrix(fr.b_gram - base_model().cf.B.gram())), 1e-14);
    EXPECT_EQ(fr.labels.size(), 8u);
    EXPECT_EQ(fr.labels[5].block, 1);
    EXPECT_EQ(fr.labels[5].letter, quaternion::I);
}

TEST(Frame, FormPreservingScaleNearby) {
    const CVector a{-3.03, 0.0};
    const LGPolynomial q(2, a);
    const auto fr = flat_s_frame(base_model(), q);
    const auto o = oracle_frame(base_model(), a);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LT(std::abs(fr.rho[i] - o.rho[i]), 1e-12);
        EXPECT_LT(std::abs(fr.lambda[i] - std::sqrt(base_model().rho[i] / o.rho[i])), 1e-12);
    }
    EXPECT_LT(max_abs(CMatrix(fr.b_gram - base_model().cf.B.gram())), 1e-9);
    EXPECT_LT(frame_form_drift(base_model(), q, FrameScale::FormPreserving), 1e-12);
}

TEST(Frame, LiteralScaleDrifts) {
    const CVector a{-3.03, 0.0};
    const LGPolynomial q(2, a);
    const auto o = oracle_frame(base_model(), a);
    // unit pairing through lambda = rho_p / rho_q is 2 rho_p^2 / rho_q instead of 2 rho_p
    double expected = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const Complex rp = base_model().rho[i];
        expected = std::max(expected, 2.0 * std::abs(rp * rp / o.rho[i] - rp));
    }
    const double drift = frame_form_drift(base_model(), q, FrameScale::Literal);
    EXPECT_GT(drift, 1e-4);
    EXPECT_LT(std::abs(drift - expected), 1e-12);
}

TEST(Frame, ContinuationFailureIsReported) {
    // q with a double critical point cannot be matched
    EXPECT_THROW(flat_s_frame(base_model(), LGPolynomial(2, {0.0, 0.0})), DegenerateError);
    EXPECT_THROW(flat_s_frame(base_model(), LGPolynomial(3, {0.0, 1.0, 0.0})), Error);
}

TEST(Frame, QuaternionActionCommutesWithTransfer) {
    const LGPolynomial q(2, {{-2.9, 0.05}, {0.1, -0.02}});
    const auto fr = flat_s_frame(base_model(), q);
    const auto& base = base_model().cf.B;
    for (int i = 0; i < 2; ++i)
        for (int v = 1; v < 4; ++v) {
            // V e_{q,i} in frame coordinates is f_(i,V) / lambda_i
            CVector x(8, Complex{});
            x[static_cast<std::size_t>(4 * i + v)] = 1.0 / fr.lambda[static_cast<std::size_t>(i)];
            const CMatrix moved = fr.pair.algebra.left_matrix(x);
            const CMatrix ref = base.algebra.left_matrix(base.algebra.basis(4 * i + v));
            EXPECT_LT(max_abs(CMatrix(moved - ref)), 1e-13);
        }
}

TEST(Tensors, BaseValues) {
    const auto& model = base_model();
    const auto bt = bundle_tensors(flat_s_frame(model, kBase));
    using namespace quaternion;
    const auto tangents = fd_tangents(kBase);
    for (int i = 0; i < 2; ++i) {
        const Complex rho = model.rho[static_cast<std::size_t>(i)];
        EXPECT_LT(std::abs(bt.b(4 * i, 4 * i, 4 * i) - 2.0 * rho), 1e-14);
        EXPECT_LT(std::abs(bt.b(4 * i + I, 4 * i + J, 4 * i + K) + 2.0 * rho), 1e-14);
        EXPECT_LT(std::abs(bt.b(4 * i + J, 4 * i + I, 4 * i + K) - 2.0 * rho), 1e-14);
        for (int k = 0; k < 2; ++k) {
            const Complex dp = oracle::horner(tangents[static_cast<std::size_t>(k)], model.closed.roots[static_cast<std::size_t>(i)]);
            EXPECT_LT(std::abs(bt.cAB(k, 4 * i) - 2.0 * rho * dp), 1e-8);
            for (int v = 1; v < 4; ++v) EXPECT_EQ(bt.cAB(k, 4 * i + v), Complex{});
        }
    }
    // blocks do not talk to each other
    EXPECT_EQ(bt.b(0, 4, 4), Complex{});
}

TEST(Tensors, TransitionTensorAwayFromBase) {
    const CVector a{{-2.95, 0.03}, {0.02, 0.01}};
    const LGPolynomial q(2, a);
    const auto fr = flat_s_frame(base_model(), q, FrameScale::Literal);
    const auto bt = bundle_tensors(fr);
    const auto o = oracle_frame(base_model(), a);
    const auto tangents = fd_tangents(q);
    for (int i = 0; i < 2; ++i) {
        const Complex lam = base_model().rho[static_cast<std::size_t>(i)] / o.rho[static_cast<std::size_t>(i)];
        for (int k = 0; k < 2; ++k) {
            const Complex dp = oracle::horner(tangents[static_cast<std::size_t>(k)], o.roots[static_cast<std::size_t>(i)]);
            // l^B(1^H e_i * lambda 1^H e_i) = 2 rho_q lambda
            EXPECT_LT(std::abs(bt.cAB(k, 4 * i) - 2.0 * o.rho[static_cast<std::size_t>(i)] * lam * dp), 1e-8);
        }
    }
}

TEST(Tensors, TaylorRemainderIsSecondOrder) {
    const auto& model = base_model();
    const CVector t0 = flat_coordinates(kBase);
    auto f = [&](const CVector& u) {
        CVector t = t0;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += u[i];
        return transition_tensor(model, t, FrameScale::Literal);
    };
    const auto tay = taylor_coefficients(f, 2, 2, 1e-2);
    const CMatrix c0 = f({0.0, 0.0});
    const CVector dir{0.6, -0.8};
    auto remainder = [&](double h) {
        const CMatrix lin = c0 + h * dir[0] * tay.at({1, 0}) + h * dir[1] * tay.at({0, 1});
        return max_abs(CMatrix(f({h * dir[0], h * dir[1]}) - lin));
    };
    const double ratio = remainder(0.02) / remainder(0.01);
    EXPECT_NEAR(ratio, 4.0, 0.2);
}

TEST(Assembly, QuadraticAndMixedBlocks) {
    const auto& model = base_model();
    const auto f = assemble_potential(model, 2);
    for (int i = 0; i < 2; ++i) {
        const Complex rho = model.rho[static_cast<std::size_t>(i)];
        EXPECT_LT(std::abs(f.coeff({{}, {4 * i, 4 * i}}) - 2.0 * rho), 1e-14);
        for (int v = 1; v < 4; ++v) EXPECT_LT(std::abs(f.coeff({{}, {4 * i + v, 4 * i + v}}) + 2.0 * rho), 1e-14);
    }
    EXPECT_EQ(f.coeff({{}, {0, 4}}), Complex{});

    const auto bt = bundle_tensors(base_parts().base);
    const auto g = series_from_parts(base_parts());
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 8; ++j) EXPECT_EQ(g.coeff({{k}, {j}}), bt.cAB(k, j));
}

TEST(Assembly, CubicSBlockMatchesStructureTensor) {
    const auto g = series_from_parts(base_parts());
    const auto bt = bundle_tensors(base_parts().base);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int r = 0; r < 8; ++r) {
                const auto d = d_sss(g, i, j, r);
                // constant: no s- or t-letters left
                for (const auto& [mono, c] : d.terms()) {
                    EXPECT_TRUE(mono.t.empty());
                    EXPECT_TRUE(mono.s.empty());
                }
                EXPECT_LT(std::abs(d.coeff({}) - bt.b(i, j, r)), 1e-13);
            }
}

TEST(Assembly, ClosureAndCubicConsistency) {
    const auto& parts = base_parts();
    EXPECT_LT(parts.closure_residual, parts.closure_tol);
    EXPECT_LT(parts.cubic_consistency, 1e-9);
    EXPECT_LT(parts.fit_residual, 1e-9);
    EXPECT_THROW(build_potential_parts(base_model(), 1), Error);
}

TEST(Assembly, FormPreservingFrameIsNotClosed) {
    AssemblyOptions opt;
    opt.scale = FrameScale::FormPreserving;
    try {
        (void)build_potential_parts(base_model(), 4, {}, opt);
        FAIL() << "expected the closure check to fail";
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "transition tensor not closed");
    }
}

TEST(Verify, BasePointPasses) {
    const auto pts = perturbed_points(kBase, 10, 1e-2, 42);
    const auto br = verify_parts(base_model(), base_parts(), pts, 1e-8);
    EXPECT_TRUE(br.ext_pass);
    EXPECT_TRUE(br.algebraic_pass);
    EXPECT_TRUE(br.routes_agree);
    // residuals[1] holds the Gram margin, not a defect
    for (int c = 0; c < 7; ++c) {
        if (c == 1) continue;
        EXPECT_LT(br.ext.residuals[static_cast<std::size_t>(c)], 1e-8) << "condition " << c + 1;
    }
    EXPECT_GT(br.ext.residuals[1], 1e-8);
    EXPECT_EQ(br.frame_scales.size(), 10u);
}

TEST(Verify, CorruptionsCaughtByPredictedCondition) {
    for (auto c : {Corruption::BAssociativity, Corruption::Centrality, Corruption::Homomorphism, Corruption::Cardy, Corruption::TSymmetry,
                   Corruption::SwapBlocks}) {
        const auto br = verify_parts(base_model(), corrupt(base_parts(), c), {}, 1e-8);
        const int cond = predicted_condition(c);
        EXPECT_GT(br.ext.residuals[static_cast<std::size_t>(cond - 1)], 1e-3) << to_string(c);
        EXPECT_FALSE(br.ext_pass) << to_string(c);
        const auto alg = algebraic_suite(corrupt(base_parts(), c).base, 1e-8);
        EXPECT_FALSE(alg.at(predicted_algebraic_check(c)).pass) << to_string(c);
        EXPECT_TRUE(br.routes_agree) << to_string(c);
    }
}

TEST(Verify, SingleBlock) {
    const auto model = build_quaternion_model(LGPolynomial(1, {-0.5}));
    const auto br = verify_bundle(model, 4, perturbed_points(model.closed.p, 3, 1e-2, 1), 1e-8);
    EXPECT_TRUE(br.ext_pass);
    EXPECT_TRUE(br.algebraic_pass);
}

TEST(Verify, RouteAgreementOnRandomModels) {
    std::mt19937_64 rng(51);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 3;
        const auto model = build_quaternion_model(sample_polynomial(n, rng));
        const auto br = verify_bundle(model, 4, perturbed_points(model.closed.p, 2, 1e-2, 7), 1e-8);
        EXPECT_TRUE(br.routes_agree);
        EXPECT_TRUE(br.ext_pass) << "trial " << trial;
        ++checked;
    }
    EXPECT_EQ(checked, 20);
}
