#ifndef QLG_IO_HPP
#define QLG_IO_HPP

// JSON and CSV serialization. Complex numbers are [re, im] pairs.

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qlg/bundle.hpp"

namespace qlg::io {

using nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const CVector& v) {
    json out = json::array();
    for (auto z : v) out.push_back(to_json(z));
    return out;
}

inline CVector cvector_from_json(const json& j) {
    if (!j.is_array()) throw Error("expected an array of complex numbers");
    CVector out;
    for (const auto& x : j) out.push_back(complex_from_json(x));
    return out;
}

inline json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix cmatrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) throw Error("matrix has the wrong number of rows");
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error("matrix has the wrong number of columns");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

inline json to_json(const FrobeniusPair& p) {
    return {{"dim", p.dim()}, {"structure", to_json(p.algebra.structure())}, {"functional", to_json(p.functional)},
            {"unit", to_json(p.algebra.unit())}};
}

inline FrobeniusPair pair_from_json(const json& j) {
    const int d = j.at("dim").get<int>();
    FrobeniusPair p{FiniteAlgebra(d, cvector_from_json(j.at("structure")), cvector_from_json(j.at("unit"))),
                    cvector_from_json(j.at("functional"))};
    p.check_dims();
    return p;
}

inline json to_json(const CardyFrobeniusAlgebra& cf) { return {{"A", to_json(cf.A)}, {"B", to_json(cf.B)}, {"phi", to_json(cf.phi)}}; }

inline CardyFrobeniusAlgebra cf_from_json(const json& j) {
    CardyFrobeniusAlgebra cf{pair_from_json(j.at("A")), pair_from_json(j.at("B")), {}};
    cf.phi = cmatrix_from_json(j.at("phi"), cf.B.dim(), cf.A.dim());
    return cf;
}

inline json to_json(const QuaternionLGModel& m) {
    return {{"n", m.n()},
            {"a", to_json(m.closed.p.a())},
            {"roots", to_json(m.closed.roots)},
            {"mu", to_json(m.closed.mu)},
            {"rho", to_json(m.rho)},
            {"branch", m.branch},
            {"closed", to_json(m.closed.pair)},
            {"cf", to_json(m.cf)}};
}

/// {"n", "a"} with optional "branch"; extra fields of a model dump are ignored.
inline QuaternionLGModel model_from_json(const json& j, const ToleranceConfig& tol = {}) {
    const int n = j.at("n").get<int>();
    std::vector<int> branch;
    if (j.contains("branch")) branch = j.at("branch").get<std::vector<int>>();
    return build_quaternion_model(LGPolynomial(n, cvector_from_json(j.at("a"))), branch, tol);
}

inline json to_json(const PotentialPoly& f) {
    json mons = json::array();
    for (const auto& m : f.terms) mons.push_back({{"exponents", m.exponents}, {"coeff", to_json(m.coeff)}});
    return {{"n", f.n}, {"monomials", std::move(mons)}};
}

inline PotentialPoly potential_from_json(const json& j) {
    PotentialPoly f;
    f.n = j.at("n").get<int>();
    f.euler = euler_data(f.n);
    for (const auto& m : j.at("monomials")) {
        auto e = m.at("exponents").get<std::vector<int>>();
        if (e.size() != static_cast<std::size_t>(f.n)) throw Error("monomial exponent vector has the wrong length");
        for (int x : e)
            if (x < 0) throw Error("negative exponent");
        f.terms.push_back({std::move(e), complex_from_json(m.at("coeff"))});
    }
    return f;
}

inline json to_json(const TensorSeries& s) {
    json terms = json::array();
    for (const auto& [mono, c] : s.terms()) terms.push_back({{"t", mono.t}, {"s", mono.s}, {"coeff", to_json(c)}});
    return {{"n", s.n()}, {"m", s.m()}, {"truncation", s.truncation()}, {"terms", std::move(terms)}};
}

inline TensorSeries series_from_json(const json& j) {
    TensorSeries s(j.at("n").get<int>(), j.at("m").get<int>(), j.at("truncation").get<int>());
    for (const auto& t : j.at("terms"))
        s.add({t.at("t").get<std::vector<int>>(), t.at("s").get<std::vector<int>>()}, complex_from_json(t.at("coeff")));
    return s;
}

inline json to_json(const VerificationReport& r) {
    json out = json::array();
    for (const auto& e : r.entries()) {
        json v = std::isfinite(e.value) ? json(e.value) : json(nullptr);
        out.push_back({{"name", e.name}, {"value", v}, {"tol", e.tol}, {"pass", e.pass}});
    }
    return out;
}

/// One row per point: t^1..t^n as re/im pairs, then c_ijk for i <= j <= k.
inline void write_structure_csv(std::ostream& os, int n, const std::vector<CVector>& points) {
    os << std::setprecision(17);
    for (int i = 1; i <= n; ++i) os << (i > 1 ? "," : "") << "t" << i << "_re,t" << i << "_im";
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) os << ",c" << i << j << k << "_re,c" << i << j << k << "_im";
    os << "\n";
    for (const auto& t : points) {
        const Tensor3 c = structure_tensor_at(n, t);
        for (int i = 0; i < n; ++i) os << (i > 0 ? "," : "") << t[static_cast<std::size_t>(i)].real() << "," << t[static_cast<std::size_t>(i)].imag();
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k) os << "," << c(i, j, k).real() << "," << c(i, j, k).imag();
        os << "\n";
    }
}

}  // namespace qlg::io

#endif  // QLG_IO_HPP
