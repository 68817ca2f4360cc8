#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tke {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rational>;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Parses "num", "num/den" or a plain integer literal. Den must be nonzero.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    }
}

inline std::string format_rational(const Rational& q) {
    Int n = rat_num(q), d = rat_den(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Rational dot(const IntVec& l, const RatVec& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < l.size(); ++i) s += Rational(l[i]) * p[i];
    return s;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Exact solve of an n-by-n rational system (n <= 3 in practice).
// Returns false if the matrix is singular.
inline bool solve_linear(std::vector<RatVec> A, RatVec b, RatVec& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            Rational f = A[r][col] / A[col][col];
            for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return true;
}

inline Rational det3(const RatVec& a, const RatVec& b, const RatVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Rank of the span of {rows}, exact.
inline int rat_rank(std::vector<RatVec> rows) {
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < rows.size() && col < n; ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][col] == 0) continue;
            Rational f = rows[k][col] / rows[r][col];
            for (std::size_t c = col; c < n; ++c) rows[k][c] -= f * rows[r][c];
        }
        ++r;
        ++rank;
    }
    return rank;
}

}  // namespace tke
