#ifndef QLG_LINALG_HPP
#define QLG_LINALG_HPP

#include <Eigen/Dense>

#include "qlg/core.hpp"

namespace qlg {

using CMatrix = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CVec to_eigen(const CVector& v) {
    CVec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

inline CVector from_eigen(const CVec& v) {
    CVector out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v(i);
    return out;
}

/// sigma_min / sigma_max; 1 for the empty matrix, 0 for the zero matrix.
inline double singular_value_margin(const CMatrix& m) {
    if (m.size() == 0) return 1.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    if (smax == 0.0) return 0.0;
    return s(s.size() - 1) / smax;
}

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Inverse of a matrix whose singular-value margin exceeds `tol`.
inline CMatrix checked_inverse(const CMatrix& m, double tol, const char* what) {
    if (m.rows() != m.cols()) throw Error(std::string(what) + ": matrix not square");
    if (m.size() == 0) return m;
    if (singular_value_margin(m) <= tol) throw DegenerateError(what);
    return m.fullPivLu().inverse();
}

}  // namespace qlg

#endif  // QLG_LINALG_HPP
