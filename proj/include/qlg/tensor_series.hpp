#ifndef QLG_TENSOR_SERIES_HPP
#define QLG_TENSOR_SERIES_HPP

// Formal series in t-words followed by s-words, with the derivative
// operators of the extended WDVV equations.
//
// Indices are 0-based: t-letters run over 0..n-1 and s-letters over 0..m-1.

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qlg/core.hpp"
#include "qlg/linalg.hpp"
#include "qlg/report.hpp"

namespace qlg {

struct TensorMonomial {
    std::vector<int> t;
    std::vector<int> s;

    int degree() const { return static_cast<int>(t.size() + s.size()); }
    auto operator<=>(const TensorMonomial&) const = default;
};

class TensorSeries {
public:
    TensorSeries() = default;
    TensorSeries(int n, int m, int truncation) : n_(n), m_(m), truncation_(truncation) {
        if (n < 0 || m < 0 || truncation < 0) throw Error("TensorSeries: negative size");
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int truncation() const { return truncation_; }
    const std::map<TensorMonomial, Complex>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Accumulates c into the monomial; terms beyond the truncation are dropped.
    void add(const TensorMonomial& mono, Complex c) {
        for (int i : mono.t)
            if (i < 0 || i >= n_) throw Error("TensorSeries: t-index out of range");
        for (int j : mono.s)
            if (j < 0 || j >= m_) throw Error("TensorSeries: s-index out of range");
        if (mono.degree() > truncation_ || c == Complex{}) return;
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, c);
            return;
        }
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }

    Complex coeff(const TensorMonomial& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Complex{} : it->second;
    }

    /// Same terms with the truncation lowered to `degree`.
    TensorSeries truncated(int degree) const {
        TensorSeries out(n_, m_, std::min(degree, truncation_));
        for (const auto& [mono, c] : terms_) out.add(mono, c);
        return out;
    }

    TensorSeries& operator+=(const TensorSeries& other) {
        for (const auto& [mono, c] : other.terms_) add(mono, c);
        return *this;
    }

    friend TensorSeries operator*(Complex s, const TensorSeries& x) {
        TensorSeries out(x.n_, x.m_, x.truncation_);
        if (s == Complex{}) return out;
        for (const auto& [mono, c] : x.terms_) out.add(mono, s * c);
        return out;
    }

    friend TensorSeries operator+(TensorSeries x, const TensorSeries& y) { return x += y; }
    friend TensorSeries operator-(TensorSeries x, const TensorSeries& y) { return x += (-1.0) * y; }

    /// Concatenates t-words and s-words; truncation is the smaller of the two.
    friend TensorSeries operator*(const TensorSeries& x, const TensorSeries& y) {
        TensorSeries out(std::max(x.n_, y.n_), std::max(x.m_, y.m_), std::min(x.truncation_, y.truncation_));
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                if (mx.degree() + my.degree() > out.truncation_) continue;
                TensorMonomial w = mx;
                w.t.insert(w.t.end(), my.t.begin(), my.t.end());
                w.s.insert(w.s.end(), my.s.begin(), my.s.end());
                out.add(w, cx * cy);
            }
        return out;
    }

private:
    int n_ = 0;
    int m_ = 0;
    int truncation_ = 0;
    std::map<TensorMonomial, Complex> terms_;
};

inline TensorSeries constant_series(int n, int m, int truncation, Complex c) {
    TensorSeries out(n, m, truncation);
    out.add({}, c);
    return out;
}

/// Sum over occurrences of t^i, each deleted once.
inline TensorSeries d_t(const TensorSeries& f, int i) {
    TensorSeries out(f.n(), f.m(), f.truncation());
    for (const auto& [mono, c] : f.terms())
        for (std::size_t p = 0; p < mono.t.size(); ++p) {
            if (mono.t[p] != i) continue;
            TensorMonomial w = mono;
            w.t.erase(w.t.begin() + static_cast<long>(p));
            out.add(w, c);
        }
    return out;
}

inline TensorSeries d_s(const TensorSeries& f, int j) {
    TensorSeries out(f.n(), f.m(), f.truncation());
    for (const auto& [mono, c] : f.terms())
        for (std::size_t p = 0; p < mono.s.size(); ++p) {
            if (mono.s[p] != j) continue;
            TensorMonomial w = mono;
            w.s.erase(w.s.begin() + static_cast<long>(p));
            out.add(w, c);
        }
    return out;
}

/// Cyclic third s-derivative: for every rotation of the s-word that starts
/// with s^i, and positions 0 < p < q carrying s^j and s^r, the three letters
/// are removed and the rest is kept in rotated order.
inline TensorSeries d_sss(const TensorSeries& f, int i, int j, int r) {
    TensorSeries out(f.n(), f.m(), f.truncation());
    for (const auto& [mono, c] : f.terms()) {
        const std::size_t len = mono.s.size();
        if (len < 3) continue;
        for (std::size_t start = 0; start < len; ++start) {
            if (mono.s[start] != i) continue;
            std::vector<int> rot(len);
            for (std::size_t k = 0; k < len; ++k) rot[k] = mono.s[(start + k) % len];
            for (std::size_t p = 1; p < len; ++p) {
                if (rot[p] != j) continue;
                for (std::size_t q = p + 1; q < len; ++q) {
                    if (rot[q] != r) continue;
                    TensorMonomial w{mono.t, {}};
                    for (std::size_t k = 1; k < len; ++k)
                        if (k != p && k != q) w.s.push_back(rot[k]);
                    out.add(w, c);
                }
            }
        }
    }
    return out;
}

using ClassKey = std::pair<std::vector<int>, std::vector<int>>;
using ClassSeries = std::map<ClassKey, Complex>;

inline int class_degree(const ClassKey& k) { return static_cast<int>(k.first.size() + k.second.size()); }

/// Sums coefficients over monomials with equal t- and s-multisets.
inline ClassSeries project(const TensorSeries& f) {
    ClassSeries out;
    for (const auto& [mono, c] : f.terms()) {
        ClassKey key{mono.t, mono.s};
        std::sort(key.first.begin(), key.first.end());
        std::sort(key.second.begin(), key.second.end());
        out[key] += c;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == Complex{})
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

/// Adds the commutative monomial c * prod_i (t^i)^{e_i} (times the s-word),
/// spreading c evenly over the distinct orderings of its t-letters.
inline void add_symmetric_t(TensorSeries& f, const std::vector<int>& exponents, Complex c, const std::vector<int>& sword = {}) {
    std::vector<int> word;
    for (std::size_t i = 0; i < exponents.size(); ++i) word.insert(word.end(), static_cast<std::size_t>(exponents[i]), static_cast<int>(i));
    std::vector<std::vector<int>> orders;
    do {
        orders.push_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    const Complex share = c / static_cast<double>(orders.size());
    for (auto& w : orders) f.add({std::move(w), sword}, share);
}

// ---------------------------------------------------------------------------
// Extended WDVV conditions.

struct ExtWdvvResult {
    /// residuals[c - 1] for condition c; entry 1 (condition 2) holds the
    /// smaller of the two singular-value margins.
    std::array<double, 7> residuals{};
    /// Classes of degree up to this value are compared in conditions 3-7.
    int checked_degree = 0;
    VerificationReport report;
};

namespace detail {

/// Largest class coefficient of x - y over classes of degree <= max_degree.
inline double class_gap(const TensorSeries& x, const TensorSeries& y, int max_degree) {
    const ClassSeries d = project(x - y);
    double worst = 0.0;
    for (const auto& [key, c] : d)
        if (class_degree(key) <= max_degree) worst = std::max(worst, std::abs(c));
    return worst;
}

inline double symmetry_residual(const TensorSeries& f) {
    std::map<std::pair<std::vector<int>, std::vector<int>>, bool> seen;
    double worst = 0.0;
    for (const auto& [mono, c] : f.terms()) {
        if (mono.t.size() < 2) continue;
        std::vector<int> sorted = mono.t;
        std::sort(sorted.begin(), sorted.end());
        if (!seen.emplace(std::make_pair(sorted, mono.s), true).second) continue;
        std::vector<Complex> vals;
        Complex sum{};
        do {
            vals.push_back(f.coeff({sorted, mono.s}));
            sum += vals.back();
        } while (std::next_permutation(sorted.begin(), sorted.end()));
        const Complex avg = sum / static_cast<double>(vals.size());
        for (auto v : vals) worst = std::max(worst, std::abs(v - avg));
    }
    return worst;
}

inline CMatrix quadratic_block(const TensorSeries& f, bool t_side) {
    const int d = t_side ? f.n() : f.m();
    CMatrix q(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            q(i, j) = t_side ? f.coeff({{i, j}, {}}) : f.coeff({{}, {i, j}});
    return q;
}

}  // namespace detail

/// F_a and F_b are the inverses of the literal coefficient matrices c(i,j|)
/// and c(|i,j). Conditions 3-7 compare projected classes of degree below
/// truncation - 3, where every third derivative is exact.
inline ExtWdvvResult ext_wdvv_check(const TensorSeries& f, double tol) {
    const int n = f.n();
    const int m = f.m();
    ExtWdvvResult res;
    res.checked_degree = f.truncation() - 4;
    const int dmax = res.checked_degree;

    res.residuals[0] = detail::symmetry_residual(f);

    const CMatrix qa = detail::quadratic_block(f, true);
    const CMatrix qb = detail::quadratic_block(f, false);
    const double ma = singular_value_margin(qa);
    const double mb = singular_value_margin(qb);
    res.residuals[1] = std::min(ma, mb);
    if (ma <= tol || mb <= tol) throw DegenerateError("no inverse Gram");
    const CMatrix fa = qa.size() == 0 ? qa : CMatrix(qa.inverse());
    const CMatrix fb = qb.size() == 0 ? qb : CMatrix(qb.inverse());

    if (dmax >= 0) {
        // only terms of degree <= dmax + 3 can reach a checked class
        const TensorSeries g = f.truncated(dmax + 3);
        auto cut = [&](const TensorSeries& x) { return x.truncated(dmax); };

        std::vector<TensorSeries> dt1, ds1;
        for (int i = 0; i < n; ++i) dt1.push_back(d_t(g, i));
        for (int j = 0; j < m; ++j) ds1.push_back(d_s(g, j));

        // dttt[(i*n + j)*n + p], dts[k*m + p] = d_t^k d_s^p, dsss[(i*m + j)*m + p]
        std::vector<TensorSeries> dttt(static_cast<std::size_t>(n * n * n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const TensorSeries dij = d_t(dt1[static_cast<std::size_t>(i)], j);
                for (int p = 0; p < n; ++p) dttt[static_cast<std::size_t>((i * n + j) * n + p)] = cut(d_t(dij, p));
            }
        std::vector<TensorSeries> dts(static_cast<std::size_t>(n * m));
        for (int k = 0; k < n; ++k)
            for (int p = 0; p < m; ++p) dts[static_cast<std::size_t>(k * m + p)] = cut(d_s(dt1[static_cast<std::size_t>(k)], p));
        std::vector<TensorSeries> dsss(static_cast<std::size_t>(m * m * m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int p = 0; p < m; ++p) dsss[static_cast<std::size_t>((i * m + j) * m + p)] = cut(d_sss(g, i, j, p));

        auto T3 = [&](int i, int j, int p) -> const TensorSeries& { return dttt[static_cast<std::size_t>((i * n + j) * n + p)]; };
        auto S3 = [&](int i, int j, int p) -> const TensorSeries& { return dsss[static_cast<std::size_t>((i * m + j) * m + p)]; };
        // d_t^k d_s^p F
        auto TS = [&](int k, int p) -> const TensorSeries& { return dts[static_cast<std::size_t>(k * m + p)]; };
        const TensorSeries zero(n, m, dmax);

        // condition 3
        {
            // A(i,j)_q = sum_p F_{ijp} F_a^{pq}
            std::vector<TensorSeries> a(static_cast<std::size_t>(n * n * n), zero);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int q = 0; q < n; ++q)
                        for (int p = 0; p < n; ++p)
                            if (fa(p, q) != Complex{}) a[static_cast<std::size_t>((i * n + j) * n + q)] += fa(p, q) * T3(i, j, p);
            auto A = [&](int i, int j, int q) -> const TensorSeries& { return a[static_cast<std::size_t>((i * n + j) * n + q)]; };
            double worst = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            TensorSeries lhs = zero, rhs = zero;
                            for (int q = 0; q < n; ++q) {
                                lhs += A(i, j, q) * T3(q, k, l);
                                rhs += A(k, j, q) * T3(q, i, l);
                            }
                            worst = std::max(worst, detail::class_gap(lhs, rhs, dmax));
                        }
            res.residuals[2] = worst;
        }

        // B(i,j)_q = sum_p dsss(i,j,p) F_b^{pq}
        std::vector<TensorSeries> b(static_cast<std::size_t>(m * m * m), zero);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int q = 0; q < m; ++q)
                    for (int p = 0; p < m; ++p)
                        if (fb(p, q) != Complex{}) b[static_cast<std::size_t>((i * m + j) * m + q)] += fb(p, q) * S3(i, j, p);
        auto B = [&](int i, int j, int q) -> const TensorSeries& { return b[static_cast<std::size_t>((i * m + j) * m + q)]; };

        // condition 4
        {
            double worst = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k)
                        for (int l = 0; l < m; ++l) {
                            TensorSeries lhs = zero, rhs = zero;
                            for (int q = 0; q < m; ++q) {
                                lhs += B(i, j, q) * S3(q, k, l);
                                rhs += B(l, i, q) * S3(q, j, k);
                            }
                            worst = std::max(worst, detail::class_gap(lhs, rhs, dmax));
                        }
            res.residuals[3] = worst;
        }

        // C(k)_q = sum_p d_t^k d_s^p F F_b^{pq}
        std::vector<TensorSeries> cvec(static_cast<std::size_t>(n * m), zero);
        for (int k = 0; k < n; ++k)
            for (int q = 0; q < m; ++q)
                for (int p = 0; p < m; ++p)
                    if (fb(p, q) != Complex{}) cvec[static_cast<std::size_t>(k * m + q)] += fb(p, q) * TS(k, p);
        auto C = [&](int k, int q) -> const TensorSeries& { return cvec[static_cast<std::size_t>(k * m + q)]; };

        // condition 5
        {
            double worst = 0.0;
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        TensorSeries lhs = zero, rhs = zero;
                        for (int q = 0; q < m; ++q) {
                            lhs += C(k, q) * S3(q, i, j);
                            rhs += C(k, q) * S3(q, j, i);
                        }
                        worst = std::max(worst, detail::class_gap(lhs, rhs, dmax));
                    }
            res.residuals[4] = worst;
        }

        // D(k)_q = sum_p d_s^k d_t^p F F_a^{pq}
        std::vector<TensorSeries> dvec(static_cast<std::size_t>(m * n), zero);
        for (int k = 0; k < m; ++k)
            for (int q = 0; q < n; ++q)
                for (int p = 0; p < n; ++p)
                    if (fa(p, q) != Complex{}) dvec[static_cast<std::size_t>(k * n + q)] += fa(p, q) * TS(p, k);
        auto D = [&](int k, int q) -> const TensorSeries& { return dvec[static_cast<std::size_t>(k * n + q)]; };

        // condition 6: free t-indices i, j and s-index k
        {
            double worst = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < m; ++k) {
                        TensorSeries lhs = zero, rhs = zero;
                        for (int q = 0; q < n; ++q) lhs += D(k, q) * T3(q, i, j);
                        for (int q = 0; q < m; ++q) {
                            const TensorSeries& left = C(i, q);
                            if (left.empty()) continue;
                            for (int l = 0; l < m; ++l) rhs += left * B(q, k, l) * TS(j, l);
                        }
                        worst = std::max(worst, detail::class_gap(lhs, rhs, dmax));
                    }
            res.residuals[5] = worst;
        }

        // condition 7: free s-indices u, v
        {
            double worst = 0.0;
            for (int u = 0; u < m; ++u)
                for (int v = 0; v < m; ++v) {
                    TensorSeries lhs = zero, rhs = zero;
                    for (int q = 0; q < n; ++q) lhs += D(u, q) * TS(q, v);
                    for (int p = 0; p < m; ++p)
                        for (int l = 0; l < m; ++l) {
                            const TensorSeries& left = B(u, p, l);
                            if (left.empty()) continue;
                            for (int q = 0; q < m; ++q)
                                if (fb(p, q) != Complex{}) rhs += fb(p, q) * (left * S3(l, v, q));
                        }
                    worst = std::max(worst, detail::class_gap(lhs, rhs, dmax));
                }
            res.residuals[6] = worst;
        }
    }

    const char* names[7] = {"t_symmetry", "nondegeneracy", "associativity_A", "associativity_B",
                            "centrality", "homomorphism", "cardy"};
    for (int c = 0; c < 7; ++c) {
        const std::string name = "condition_" + std::to_string(c + 1) + "_" + names[c];
        if (c == 1)
            res.report.add_margin(name, res.residuals[1], tol);
        else
            res.report.add_residual(name, res.residuals[static_cast<std::size_t>(c)], tol);
    }
    return res;
}

}  // namespace qlg

#endif  // QLG_TENSOR_SERIES_HPP
