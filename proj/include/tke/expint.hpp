#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace tke {

// Divided differences of exp and closed-form integrals of exponentials of
// affine functions over simplices. These are the workhorse of all cell-mass
// and energy integrals: no quadrature error enters there.
//
// exp[x0,...,xm] is computed by the explicit recursive formula when the
// nodes are well separated and by the Opitz bidiagonal-matrix exponential
// (scaling-and-squaring Taylor) when any gap is below `kExpddSwitch`. Both
// branches agree to ~1e-15 relative around the switch; the overlap is
// asserted in the unit tests.

inline constexpr double kExpddSwitch = 1e-4;

namespace detail {

// All divided differences over subranges of the node list come out of one
// matrix exponential: (e^Z)_{0,m} = exp[x0..xm] for the upper bidiagonal Z.
inline double expdd_opitz(const double* x, int m1) {
    double mu = 0;
    for (int i = 0; i < m1; ++i) mu += x[i];
    mu /= m1;
    double Z[6][6] = {};
    double nrm = 0;
    for (int i = 0; i < m1; ++i) {
        Z[i][i] = x[i] - mu;
        nrm = std::max(nrm, std::abs(Z[i][i]) + 1.0);
        if (i + 1 < m1) Z[i][i + 1] = 1.0;
    }
    int s = 0;
    while (nrm > 0.25) {
        nrm /= 2;
        ++s;
    }
    double sc = std::ldexp(1.0, -s);
    for (int i = 0; i < m1; ++i) {
        Z[i][i] *= sc;
        if (i + 1 < m1) Z[i][i + 1] *= sc;
    }
    double E[6][6] = {}, T[6][6] = {};
    for (int i = 0; i < m1; ++i) E[i][i] = T[i][i] = 1.0;
    for (int k = 1; k <= 22; ++k) {
        double Tn[6][6] = {};
        for (int i = 0; i < m1; ++i)
            for (int j = i; j < m1; ++j) {
                double v = 0;
                for (int l = i; l <= j; ++l) v += T[i][l] * Z[l][j];
                Tn[i][j] = v / k;
            }
        for (int i = 0; i < m1; ++i)
            for (int j = i; j < m1; ++j) {
                T[i][j] = Tn[i][j];
                E[i][j] += Tn[i][j];
            }
    }
    for (; s > 0; --s) {
        double E2[6][6] = {};
        for (int i = 0; i < m1; ++i)
            for (int j = i; j < m1; ++j) {
                double v = 0;
                for (int l = i; l <= j; ++l) v += E[i][l] * E[l][j];
                E2[i][j] = v;
            }
        for (int i = 0; i < m1; ++i)
            for (int j = i; j < m1; ++j) E[i][j] = E2[i][j];
    }
    return std::exp(mu) * E[0][m1 - 1];
}

inline double expdd_recursive(const double* x, int m1) {
    if (m1 == 1) return std::exp(x[0]);
    std::vector<double> col(x, x + m1);
    std::vector<double> f(m1);
    for (int i = 0; i < m1; ++i) f[i] = std::exp(col[i]);
    for (int lvl = 1; lvl < m1; ++lvl)
        for (int i = 0; i + lvl < m1; ++i) f[i] = (f[i + 1] - f[i]) / (col[i + lvl] - col[i]);
    return f[0];
}

}  // namespace detail

// Divided difference exp[x0,...,x_{m}] for up to 6 nodes (repetitions allowed).
inline double expdd(const double* x, int count) {
    double gap = 1e300;
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
    if (count >= 2 && gap < kExpddSwitch) return detail::expdd_opitz(x, count);
    return detail::expdd_recursive(x, count);
}

inline double expdd(std::initializer_list<double> xs) {
    std::array<double, 6> buf;
    int n = 0;
    for (double v : xs) buf[n++] = v;
    return expdd(buf.data(), n);
}

// ---- segments ----------------------------------------------------------

// int_{t in [0,1]} exp(a + b t) dt
inline double seg_exp01(double a, double b) { return std::exp(a) * expdd({0.0, b}); }

// int_{t} t * exp(a + b t) dt on [0,1]
inline double seg_texp01(double a, double b) { return std::exp(a) * expdd({0.0, b, b}); }

// ---- triangles ---------------------------------------------------------
// Reference map x = v0 + s (v1-v0) + t (v2-v0) over {s,t>=0, s+t<=1}.

struct TriExp {
    double jac;      // |det|, = 2*area
    double e0;       // exp(<c,v0> + d)
    double b1, b2;   // exponent increments along the two edges
};

inline TriExp tri_exp_setup(const double* v0, const double* v1, const double* v2, const double* c,
                            double d) {
    TriExp t;
    double e1x = v1[0] - v0[0], e1y = v1[1] - v0[1];
    double e2x = v2[0] - v0[0], e2y = v2[1] - v0[1];
    t.jac = std::abs(e1x * e2y - e2x * e1y);
    t.e0 = std::exp(c[0] * v0[0] + c[1] * v0[1] + d);
    t.b1 = c[0] * e1x + c[1] * e1y;
    t.b2 = c[0] * e2x + c[1] * e2y;
    return t;
}

// int over triangle of exp(<c,x> + d)
inline double tri_exp(const TriExp& t) { return t.jac * t.e0 * expdd({0.0, t.b1, t.b2}); }

// int over triangle of (l0 + l1 s + l2 t) exp(<c,x> + d) in reference coords
inline double tri_affine_exp(const TriExp& t, double l0, double l1, double l2) {
    double v = l0 * expdd({0.0, t.b1, t.b2});
    if (l1 != 0) v += l1 * expdd({0.0, t.b1, t.b1, t.b2});
    if (l2 != 0) v += l2 * expdd({0.0, t.b1, t.b2, t.b2});
    return t.jac * t.e0 * v;
}

// Convenience: integral of exp(<c,x>+d) over a convex polygon (fan split).
inline double polygon_exp(const std::vector<std::array<double, 2>>& poly, const double* c,
                          double d) {
    double s = 0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        TriExp t = tri_exp_setup(poly[0].data(), poly[i].data(), poly[i + 1].data(), c, d);
        s += tri_exp(t);
    }
    return s;
}

// Integral of (<m,x> + q) exp(<c,x> + d) over a convex polygon.
inline double polygon_affine_exp(const std::vector<std::array<double, 2>>& poly, const double* m,
                                 double q, const double* c, double d) {
    double s = 0;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const auto &a = poly[0], &b = poly[i], &cc = poly[i + 1];
        TriExp t = tri_exp_setup(a.data(), b.data(), cc.data(), c, d);
        double l0 = m[0] * a[0] + m[1] * a[1] + q;
        double l1 = m[0] * (b[0] - a[0]) + m[1] * (b[1] - a[1]);
        double l2 = m[0] * (cc[0] - a[0]) + m[1] * (cc[1] - a[1]);
        s += tri_affine_exp(t, l0, l1, l2);
    }
    return s;
}

}  // namespace tke
