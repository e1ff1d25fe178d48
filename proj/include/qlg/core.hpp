#ifndef QLG_CORE_HPP
#define QLG_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlg {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Term of a commutative polynomial in several variables.
struct MultiMonomial {
    std::vector<int> exponents;
    Complex coeff;
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input lies outside the region where the requested structure exists
/// (coalescing critical points, vanishing functional, non-semisimple algebra).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Numerical thresholds shared by every residual check.
///
/// `eq_tol` is used relative to max(1, magnitude) wherever the compared
/// quantities can exceed one.
struct ToleranceConfig {
    double eq_tol = 1e-9;
    double root_sep_tol = 1e-8;
    double fd_step = 1e-6;

    void validate() const {
        if (!(eq_tol > 0.0) || !(root_sep_tol > 0.0) || !(fd_step > 0.0)) {
            throw Error("tolerances must be strictly positive");
        }
    }
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double max_abs(const CVector& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
    const std::size_t len = std::max(a.size(), b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const Complex x = i < a.size() ? a[i] : Complex{};
        const Complex y = i < b.size() ? b[i] : Complex{};
        m = std::max(m, std::abs(x - y));
    }
    return m;
}

inline double min_pairwise_distance(const CVector& roots) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) best = std::min(best, std::abs(roots[i] - roots[j]));
    return best;
}

/// Lexicographic (re, im) ordering; real parts closer than `tol` count as equal.
inline bool lex_less(Complex a, Complex b, double tol = 1e-10) {
    if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace qlg

#endif  // QLG_CORE_HPP
