#ifndef QLG_TESTS_ORACLES_HPP
#define QLG_TESTS_ORACLES_HPP

// Reference computations used by the tests. Nothing here calls into the
// library's numerics: residues are contour integrals, roots come from
// Durand-Kerner, flat coordinates from Lagrange inversion by quadrature.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = Eigen::MatrixXcd;

/// Coefficients low to high.
inline C horner(const Vec& c, C z) {
    C acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Vec deriv(const Vec& c) {
    Vec out;
    for (std::size_t k = 1; k < c.size(); ++k) out.push_back(static_cast<double>(k) * c[k]);
    return out;
}

/// z^{n+1} + a_1 z^{n-1} + ... + a_n.
inline Vec lg_coeffs(const Vec& a) {
    const std::size_t n = a.size();
    Vec c(n + 2, C{});
    c[n + 1] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) c[n - k] = a[k - 1];
    return c;
}

/// Radius enclosing every root of a monic-up-to-scale polynomial, with margin.
inline double enclosing_radius(const Vec& c) {
    double r = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) r = std::max(r, std::abs(c[k] / c.back()));
    return 2.0 * (1.0 + r);
}

/// (1/2 pi i) times the integral of f over |z| = radius.
template <class F>
C contour(F f, double radius, int nodes = 2048) {
    C acc{};
    for (int k = 0; k < nodes; ++k) {
        const C z = std::polar(radius, 2.0 * std::numbers::pi * k / nodes);
        acc += f(z) * z;
    }
    return acc / static_cast<double>(nodes);
}

/// l_p(q): sum of residues of q / p' at the critical points.
inline C residue(const Vec& q, const Vec& a) {
    const Vec dp = deriv(lg_coeffs(a));
    const double r = enclosing_radius(dp);
    return contour([&](C z) { return horner(q, z) / horner(dp, z); }, r);
}

/// Simultaneous iteration for all roots.
inline Vec durand_kerner(const Vec& c, int iters = 500) {
    const std::size_t d = c.size() - 1;
    Vec monic(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) monic[k] = c[k] / c.back();
    Vec z(d);
    const C seed{0.4, 0.9};
    for (std::size_t k = 0; k < d; ++k) z[k] = std::pow(seed, static_cast<double>(k));
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < d; ++i) {
            C den = 1.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) den *= z[i] - z[j];
            z[i] -= horner(monic, z[i]) / den;
        }
    }
    return z;
}

inline Vec critical_points(const Vec& a) {
    Vec r = durand_kerner(deriv(lg_coeffs(a)));
    std::sort(r.begin(), r.end(), [](C x, C y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    return r;
}

/// mu_i = Res_{alpha_i} e_i / p' = 1 / p''(alpha_i).
inline Vec mu_at_roots(const Vec& a, const Vec& roots) {
    const Vec d2 = deriv(deriv(lg_coeffs(a)));
    Vec out;
    for (auto r : roots) out.push_back(1.0 / horner(d2, r));
    return out;
}

/// tt^k, the coefficient of w^{-k} in z(w) where w^{n+1} = p(z).
inline Vec ttilde(const Vec& a) {
    const std::size_t n = a.size();
    const Vec c = lg_coeffs(a);
    const Vec dc = deriv(c);
    // winding of p / z^{n+1} is zero once every root is inside
    double rmax = 0.0;
    for (auto z : durand_kerner(c)) rmax = std::max(rmax, std::abs(z));
    const double r = 1.5 * rmax + 0.5;
    const double np1 = static_cast<double>(n + 1);
    Vec out;
    for (std::size_t k = 1; k <= n; ++k) {
        out.push_back(contour(
            [&](C z) {
                const C ratio = horner(c, z) / std::pow(z, np1);
                const C w = z * std::pow(ratio, 1.0 / np1);
                return z * std::pow(w, static_cast<double>(k)) * horner(dc, z) / (np1 * horner(c, z));
            },
            r, 4096));
    }
    return out;
}

/// Flat coordinates from tt by the printed substitution (n >= 2).
inline Vec flat_from_ttilde(const Vec& tt) {
    const std::size_t n = tt.size();
    const double np1 = static_cast<double>(n + 1);
    Vec t(n);
    t[0] = -np1 * tt[n - 1];
    t[n - 1] = -tt[0];
    for (std::size_t i = 2; i < n; ++i) t[i - 1] = -std::sqrt(np1) * tt[n - i];
    return t;
}

/// Brute-force Cardy identity on structure constants c[i][j][k] (x_i x_j = sum_k c x_k).
struct Algebra {
    int dim = 0;
    std::vector<C> c;
    Vec l;
    C at(int i, int j, int k) const { return c[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
    Mat gram() const {
        Mat g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                C s{};
                for (int k = 0; k < dim; ++k) s += at(i, j, k) * l[static_cast<std::size_t>(k)];
                g(i, j) = s;
            }
        return g;
    }
};

/// max over basis pairs of |(phi* x, phi* y)_A - tr(b -> x b y)|.
inline double cardy_defect(const Algebra& A, const Algebra& B, const Mat& phi) {
    const Mat ga = A.gram();
    const Mat gb = B.gram();
    // (a, phi* b)_A = (phi a, b)_B for every basis a, b.
    const Mat phistar = ga.fullPivLu().solve(phi.transpose() * gb);
    double worst = 0.0;
    for (int x = 0; x < B.dim; ++x)
        for (int y = 0; y < B.dim; ++y) {
            const C lhs = (phistar.col(x).transpose() * ga * phistar.col(y))(0, 0);
            C tr{};
            for (int b = 0; b < B.dim; ++b)
                for (int k = 0; k < B.dim; ++k) tr += B.at(x, b, k) * B.at(k, y, b);
            worst = std::max(worst, std::abs(lhs - tr));
        }
    return worst;
}

inline Vec random_a(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vec a;
    for (int k = 0; k < n; ++k) a.emplace_back(u(rng), u(rng));
    return a;
}

}  // namespace oracle

#endif  // QLG_TESTS_ORACLES_HPP
