#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qlg/moduli.hpp"

using namespace qlg;

namespace {

/// t(a) computed entirely by the quadrature oracle.
CVector oracle_flat(const CVector& a) {
    const auto tt = oracle::ttilde(a);
    if (a.size() == 1) return {-2.0 * tt[0]};
    return oracle::flat_from_ttilde(tt);
}

/// dp/dt^i by central differences of a(t), as coefficient vectors low to high.
std::vector<CVector> fd_tangents(int n, const CVector& t, double h = 1e-5) {
    std::vector<CVector> out;
    for (int i = 0; i < n; ++i) {
        CVector tp = t, tm = t;
        tp[static_cast<std::size_t>(i)] += h;
        tm[static_cast<std::size_t>(i)] -= h;
        const auto ap = polynomial_from_flat(n, tp).a(), am = polynomial_from_flat(n, tm).a();
        CVector coeffs(static_cast<std::size_t>(n), Complex{});
        // a_k multiplies z^{n-k}
        for (int k = 1; k <= n; ++k)
            coeffs[static_cast<std::size_t>(n - k)] = (ap[static_cast<std::size_t>(k - 1)] - am[static_cast<std::size_t>(k - 1)]) / (2.0 * h);
        out.push_back(coeffs);
    }
    return out;
}

oracle::Vec product(const oracle::Vec& x, const oracle::Vec& y) {
    oracle::Vec out(x.size() + y.size() - 1, Complex{});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

CVector sample_a(std::mt19937_64& rng, int n) { return oracle::random_a(rng, n, 0.7); }

}  // namespace

TEST(FlatChart, CubicExample) {
    const LGPolynomial p(2, {-3.0, 0.0});
    const auto ch = flat_chart(p);
    EXPECT_LT(max_abs_diff(ch.ttilde, {1.0, 0.0}), 1e-14);
    EXPECT_LT(max_abs_diff(ch.t, {0.0, -1.0}), 1e-14);
    const CMatrix g = flat_metric(ch);
    EXPECT_LT(std::abs(g(0, 1) - 1.0), 1e-14);
    EXPECT_LT(std::abs(g(1, 1)), 1e-14);
    EXPECT_LT(unit_field_residual(ch), 1e-15);
    EXPECT_LT(max_abs_diff(ch.tangents[0].padded(2), {1.0, 0.0}), 1e-15);
}

TEST(FlatChart, CoordinatesMatchQuadrature) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 3; ++trial) {
            const auto a = sample_a(rng, n);
            const LGPolynomial p(n, a);
            EXPECT_LT(max_abs_diff(flat_coordinates(p), oracle_flat(a)), 1e-9) << "n=" << n;
            const auto back = polynomial_from_flat(n, flat_coordinates(p));
            EXPECT_LT(max_abs_diff(back.a(), a), 1e-11);
        }
}

TEST(FlatChart, TangentsMatchFiniteDifferences) {
    std::mt19937_64 rng(32);
    for (int n = 1; n <= 5; ++n) {
        const auto a = sample_a(rng, n);
        const auto ch = flat_chart(LGPolynomial(n, a));
        const auto fd = fd_tangents(n, ch.t);
        for (int i = 0; i < n; ++i)
            EXPECT_LT(max_abs_diff(ch.tangents[static_cast<std::size_t>(i)].padded(static_cast<std::size_t>(n)), fd[static_cast<std::size_t>(i)]), 1e-7)
                << "n=" << n << " i=" << i;
    }
}

TEST(FlatChart, MetricAgainstContourPairing) {
    std::mt19937_64 rng(33);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 4; ++trial) {
            const auto a = sample_a(rng, n);
            const auto ch = flat_chart(LGPolynomial(n, a));
            const auto fd = fd_tangents(n, ch.t);
            const CMatrix target = flat_metric_target(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex g = oracle::residue(product(fd[static_cast<std::size_t>(i)], fd[static_cast<std::size_t>(j)]), a);
                    EXPECT_LT(std::abs(g - target(i, j)), 1e-7) << "n=" << n;
                }
            EXPECT_LT(metric_residual(ch), 1e-10);
            EXPECT_LT(ttilde_metric_residual(ch), 1e-10);
            EXPECT_LT(unit_field_residual(ch), 1e-12);
        }
}

TEST(Euler, Examples) {
    const auto rep = euler_check(LGPolynomial(2, {-3.0, 0.0}));
    EXPECT_TRUE(rep.pass());
    // L_E a_1 = (2/3) a_1 = -2; L_E t^2 = (2/3) t^2
    const auto e = euler_data(2);
    EXPECT_DOUBLE_EQ(e.d[1], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(e.d[0], 1.0);
    const auto zero = euler_check(LGPolynomial(3, CVector(3, Complex{})));
    EXPECT_EQ(zero.value("euler_polynomial"), 0.0);
    EXPECT_EQ(zero.value("euler_flat"), 0.0);
}

TEST(Euler, FlatWeightsByFiniteDifference) {
    // t(exp(s w_k) a_k) differentiated at s = 0 gives d_i t^i
    std::mt19937_64 rng(34);
    for (int n = 2; n <= 5; ++n) {
        const auto a = sample_a(rng, n);
        const double h = 1e-4;
        auto scaled = [&](double s) {
            CVector b = a;
            for (int k = 1; k <= n; ++k) b[static_cast<std::size_t>(k - 1)] *= std::exp(s * (k + 1.0) / (n + 1.0));
            return oracle_flat(b);
        };
        const auto tp = scaled(h), tm = scaled(-h), t0 = oracle_flat(a);
        const auto e = euler_data(n);
        for (int i = 0; i < n; ++i) {
            const Complex lt = (tp[static_cast<std::size_t>(i)] - tm[static_cast<std::size_t>(i)]) / (2.0 * h);
            EXPECT_LT(std::abs(lt - e.d[static_cast<std::size_t>(i)] * t0[static_cast<std::size_t>(i)]), 1e-6);
        }
        EXPECT_TRUE(euler_check(LGPolynomial(n, a)).pass());
    }
}

TEST(Canonical, CubicExampleAndOneForm) {
    const auto ch = canonical_chart(LGPolynomial(2, {-3.0, 0.0}));
    EXPECT_LT(max_abs_diff(ch.x, {2.0, -2.0}), 1e-14);
    EXPECT_LT(ch.tangent_residual, 1e-10);
    EXPECT_LT(ch.fd_residual, 1e-5);
    EXPECT_LT(ch.one_form_residual, 1e-10);
    EXPECT_THROW(canonical_chart(LGPolynomial(2, {0.0, 0.0})), DegenerateError);
}

TEST(Canonical, RandomPolynomials) {
    std::mt19937_64 rng(35);
    for (int n = 1; n <= 5; ++n) {
        const auto a = sample_a(rng, n);
        const auto ch = canonical_chart(LGPolynomial(n, a));
        const auto roots = oracle::critical_points(a);
        for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_LT(std::abs(ch.x[i] - oracle::horner(oracle::lg_coeffs(a), roots[i])), 1e-9);
        EXPECT_LT(ch.tangent_residual, 1e-8);
        EXPECT_LT(ch.one_form_residual, 1e-9);
    }
}

TEST(StructureTensor, CubicExample) {
    const auto c = structure_tensor(flat_chart(LGPolynomial(2, {-3.0, 0.0})));
    EXPECT_LT(std::abs(c(0, 0, 1) - 1.0), 1e-14);
    EXPECT_LT(std::abs(c(0, 0, 0)), 1e-14);
    EXPECT_LT(std::abs(c(0, 1, 1)), 1e-14);
    EXPECT_LT(std::abs(c(1, 1, 1) - 9.0), 1e-13);
}

TEST(StructureTensor, ContourOracleUnitAndSymmetry) {
    std::mt19937_64 rng(36);
    for (int n = 2; n <= 4; ++n) {
        const auto a = sample_a(rng, n);
        const auto ch = flat_chart(LGPolynomial(n, a));
        const auto c = structure_tensor(ch);
        const auto fd = fd_tangents(n, ch.t);
        const CMatrix g = flat_metric(ch);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                EXPECT_LT(std::abs(c(0, i, j) - g(i, j)), 1e-10);
                for (int k = 0; k < n; ++k) {
                    const auto q = product(product(fd[static_cast<std::size_t>(i)], fd[static_cast<std::size_t>(j)]), fd[static_cast<std::size_t>(k)]);
                    EXPECT_LT(std::abs(c(i, j, k) - oracle::residue(q, a)), 1e-6);
                    EXPECT_EQ(c(i, j, k), c(j, k, i));
                    EXPECT_EQ(c(i, j, k), c(k, j, i));
                }
            }
    }
}

TEST(Potential, QuadraticCaseCoefficients) {
    const auto rec = reconstruct_potential(2, 40);
    EXPECT_LT(rec.fit_residual, 1e-9);
    EXPECT_LT(std::abs(rec.potential.coefficient({2, 1}) - 0.5), 1e-8);
    // c_222 = -9 t^2 along this chart, so 24 beta_2 = -9
    EXPECT_LT(std::abs(rec.potential.coefficient({0, 4}) + 3.0 / 8.0), 1e-8);
    EXPECT_EQ(rec.potential.terms.size(), 2u);
}

TEST(Potential, ThirdDerivativesMatchContourOracle) {
    for (int n = 2; n <= 4; ++n) {
        const auto rec = reconstruct_potential(n, 30);
        EXPECT_LT(rec.fit_residual, 1e-9);
        std::mt19937_64 rng(100 + static_cast<unsigned>(n));
        for (int trial = 0; trial < 3; ++trial) {
            const auto a = sample_a(rng, n);
            const auto t = oracle_flat(a);
            const auto f3 = rec.potential.third_derivatives(t);
            const auto fd = fd_tangents(n, t);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k) {
                        const auto q = product(product(fd[static_cast<std::size_t>(i)], fd[static_cast<std::size_t>(j)]), fd[static_cast<std::size_t>(k)]);
                        EXPECT_LT(std::abs(f3(i, j, k) - oracle::residue(q, a)), 1e-6) << "n=" << n;
                    }
        }
    }
}

TEST(Potential, OneVariable) {
    const auto rec = reconstruct_potential(1, 10);
    ASSERT_EQ(rec.potential.terms.size(), 1u);
    EXPECT_EQ(rec.potential.terms[0].exponents, std::vector<int>{3});
    const auto rep = wdvv_check(rec.potential, random_flat_points(1, 5, 7), 1e-7);
    EXPECT_TRUE(rep.pass());
}

TEST(Potential, AnsatzIsQuasiHomogeneous) {
    for (int n = 1; n <= 6; ++n) {
        const auto e = euler_data(n);
        for (const auto& m : quasi_homogeneous_monomials(n)) {
            double deg = 0.0;
            for (int i = 0; i < n; ++i) deg += m[static_cast<std::size_t>(i)] * e.d[static_cast<std::size_t>(i)];
            EXPECT_NEAR(deg, e.v + 3.0, 1e-12);
            EXPECT_GE(total_degree(m), 3);
        }
    }
}

TEST(Wdvv, ReconstructedAndCorrupted) {
    const auto rec = reconstruct_potential(3, 40);
    const auto pts = random_flat_points(3, 20, 777);
    const auto rep = wdvv_check(rec.potential, pts, 1e-7);
    EXPECT_TRUE(rep.pass());
    EXPECT_LT(rep.value("associativity"), 1e-7);

    auto bad = rec.potential;
    bad.coefficient_ref({0, 2, 2}) += 0.1;
    EXPECT_GT(wdvv_check(bad, pts, 1e-7).value("associativity"), 1e-3);

    // n = 2 is vacuous
    const auto f2 = reconstruct_potential(2, 20).potential;
    EXPECT_LT(wdvv_check(f2, random_flat_points(2, 10, 5), 1e-7).value("associativity"), 1e-13);
}

TEST(Wdvv, IndexReversalToggle) {
    const auto f = reconstruct_potential(3, 40).potential;
    const auto pts = random_flat_points(3, 10, 9);
    const auto rev = reverse_indices(f);
    auto rev_pts = pts;
    for (auto& t : rev_pts) std::reverse(t.begin(), t.end());
    EXPECT_TRUE(wdvv_check(rev, rev_pts, 1e-7, true).pass());
    // read without the toggle the normalization no longer holds
    EXPECT_FALSE(wdvv_check(rev, rev_pts, 1e-7, false).at("normalization").pass);
}

TEST(Wdvv, ShiftedTermsExpandExactly) {
    const auto f = reconstruct_potential(3, 30).potential;
    const CVector t0{{0.2, 0.1}, {-0.4, 0.3}, {0.5, -0.2}};
    const CVector u{{0.05, -0.02}, {0.1, 0.0}, {-0.03, 0.07}};
    PotentialPoly shifted{3, shifted_terms(f, t0), f.euler};
    CVector tu(3);
    for (std::size_t i = 0; i < 3; ++i) tu[i] = t0[i] + u[i];
    EXPECT_LT(std::abs(shifted.eval(u) - f.eval(tu)), 1e-13);
}
