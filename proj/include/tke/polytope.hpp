#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tke/errors.hpp"
#include "tke/quadrature.hpp"
#include "tke/rational.hpp"

namespace tke {

// Half space <l, p> >= -a with l a primitive integer inward normal.
struct Facet {
    IntVec l;
    Rational a;
};

struct FacetData {
    int index = 0;
    double euclidean_area = 0;
    double sigma_canonical_density = 0;  // a_F / ||l_F||
    double sigma_lattice_density = 0;    // 1 / ||l_F||
    Rational sigma_canonical_mass;       // exact facet mass under sigma_P
    Rational sigma_lattice_mass;         // exact facet mass under sigma'_P
};

enum class BoundaryMeasure { canonical, lattice };

struct Polytope {
    int dim = 0;
    std::vector<Facet> facets;
    std::vector<RatVec> vertices;  // exact extreme points, lexicographic order

    // Triangulation: simplices index into tri_points (= vertices in boundary
    // order, plus the vertex centroid as the last point when dim == 3).
    std::vector<RatVec> tri_points;
    std::vector<std::array<int, 4>> simplices;  // dim+1 entries used

    // Facet decomposition into (dim-1)-simplices with exact sigma factors:
    // tau is Euclidean measure divided by ||l_F||, a rational number.
    struct FacetSimplex {
        int facet;
        std::array<int, 3> v;  // indices into `vertices`, dim entries used
        Rational tau;
    };
    std::vector<FacetSimplex> facet_simplices;

    Rational volume;    // exact
    RatVec barycenter;  // exact

    bool contains(const RatVec& p) const {
        for (const auto& f : facets)
            if (dot(f.l, p) < -f.a) return false;
        return true;
    }

    double support(const double* x) const {  // phi_P(x), max over vertices
        double best = -1e300;
        for (const auto& v : vertices) {
            double s = 0;
            for (int i = 0; i < dim; ++i) s += to_double(v[i]) * x[i];
            best = std::max(best, s);
        }
        return best;
    }

    double inradius0() const {  // radius of largest origin-centered ball inside P
        double r = 1e300;
        for (const auto& f : facets) {
            double n2 = 0;
            for (const auto& li : f.l) n2 += to_double(Rational(li)) * to_double(Rational(li));
            r = std::min(r, to_double(f.a) / std::sqrt(n2));
        }
        return r;
    }

    double circumradius() const {
        double r = 0;
        for (const auto& v : vertices) {
            double n2 = 0;
            for (const auto& vi : v) n2 += to_double(vi) * to_double(vi);
            r = std::max(r, std::sqrt(n2));
        }
        return r;
    }

    std::vector<std::array<double, 3>> vertices_d() const {
        std::vector<std::array<double, 3>> out;
        for (const auto& v : vertices) {
            std::array<double, 3> p = {0, 0, 0};
            for (int i = 0; i < dim; ++i) p[i] = to_double(v[i]);
            out.push_back(p);
        }
        return out;
    }

    std::vector<FacetData> facet_data() const {
        std::vector<FacetData> out(facets.size());
        for (std::size_t i = 0; i < facets.size(); ++i) {
            double n2 = 0;
            for (const auto& li : facets[i].l) {
                double d = to_double(Rational(li));
                n2 += d * d;
            }
            double nl = std::sqrt(n2);
            out[i].index = static_cast<int>(i);
            out[i].sigma_canonical_density = to_double(facets[i].a) / nl;
            out[i].sigma_lattice_density = 1.0 / nl;
        }
        for (const auto& fs : facet_simplices) {
            double n2 = 0;
            for (const auto& li : facets[fs.facet].l) {
                double d = to_double(Rational(li));
                n2 += d * d;
            }
            out[fs.facet].euclidean_area += to_double(fs.tau) * std::sqrt(n2);
            out[fs.facet].sigma_lattice_mass += fs.tau;
            out[fs.facet].sigma_canonical_mass += fs.tau * facets[fs.facet].a;
        }
        return out;
    }
};

namespace detail {

inline void primitivize(IntVec& l, bool& changed) {
    Int g = 0;
    for (const auto& li : l) g = int_gcd(g, li);
    changed = false;
    if (g == 0) throw Error(ErrorCode::BAD_INPUT, "zero facet normal");
    if (g != 1) {
        for (auto& li : l) li /= g;
        changed = true;
    }
}

inline std::string ivec_str(const IntVec& l) {
    std::string s = "(";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + l[i].str();
    return s + ")";
}

// Exact test: does any nonzero direction d satisfy <l,d> >= 0 for all facets?
// Candidates: nullspace directions and extreme rays tight on n-1 normals.
inline bool recession_nontrivial(const std::vector<Facet>& fs, int n) {
    std::vector<RatVec> rows;
    for (const auto& f : fs) {
        RatVec r(n);
        for (int i = 0; i < n; ++i) r[i] = Rational(f.l[i]);
        rows.push_back(r);
    }
    if (rat_rank(rows) < n) return true;
    auto feasible = [&](const RatVec& d) {
        bool nonzero = false;
        for (const auto& di : d)
            if (di != 0) nonzero = true;
        if (!nonzero) return false;
        for (const auto& r : rows) {
            Rational s = 0;
            for (int i = 0; i < n; ++i) s += r[i] * d[i];
            if (s < 0) return false;
        }
        return true;
    };
    std::vector<RatVec> cands;
    if (n == 1) {
        cands.push_back({Rational(1)});
        cands.push_back({Rational(-1)});
    } else if (n == 2) {
        for (const auto& r : rows) {
            cands.push_back({-r[1], r[0]});
            cands.push_back({r[1], -r[0]});
        }
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                RatVec c = {rows[i][1] * rows[j][2] - rows[i][2] * rows[j][1],
                            rows[i][2] * rows[j][0] - rows[i][0] * rows[j][2],
                            rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]};
                cands.push_back(c);
                cands.push_back({-c[0], -c[1], -c[2]});
            }
    }
    for (const auto& d : cands)
        if (feasible(d)) return true;
    return false;
}

// Cyclic boundary order of planar points around an interior point, CCW,
// exact predicates. `center` must be strictly inside.
inline std::vector<int> angular_order(const std::vector<RatVec>& pts, const RatVec& center) {
    auto half = [&](int i) {
        Rational dy = pts[i][1] - center[1];
        Rational dx = pts[i][0] - center[0];
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        int hi = half(i), hj = half(j);
        if (hi != hj) return hi < hj;
        Rational cross = (pts[i][0] - center[0]) * (pts[j][1] - center[1]) -
                         (pts[j][0] - center[0]) * (pts[i][1] - center[1]);
        if (cross != 0) return cross > 0;
        return lex_less(pts[i], pts[j]);
    });
    return idx;
}

inline Rational simplex_volume(const std::vector<RatVec>& pts, const std::array<int, 4>& s,
                               int n) {
    if (n == 1) {
        Rational d = pts[s[1]][0] - pts[s[0]][0];
        return d < 0 ? -d : d;
    }
    if (n == 2) {
        RatVec a = sub(pts[s[1]], pts[s[0]]), b = sub(pts[s[2]], pts[s[0]]);
        Rational d = a[0] * b[1] - a[1] * b[0];
        if (d < 0) d = -d;
        return d / 2;
    }
    RatVec a = sub(pts[s[1]], pts[s[0]]), b = sub(pts[s[2]], pts[s[0]]),
           c = sub(pts[s[3]], pts[s[0]]);
    Rational d = det3(a, b, c);
    if (d < 0) d = -d;
    return d / 6;
}

}  // namespace detail

// Enumerate the vertices of {p : <l_i,p> >= -a_i} exactly, no assumptions on
// the origin. Shared by from_hrep and the piecewise-linear decompositions.
inline std::vector<RatVec> enumerate_cell_vertices(const std::vector<Facet>& cons, int n) {
    std::vector<RatVec> verts;
    const std::size_t m = cons.size();
    std::vector<std::size_t> pick(n);
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int k) {
        if (k == n) {
            std::vector<RatVec> A(n, RatVec(n));
            RatVec b(n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) A[r][c] = Rational(cons[pick[r]].l[c]);
                b[r] = -cons[pick[r]].a;
            }
            RatVec x;
            if (!solve_linear(A, b, x)) return;
            for (const auto& f : cons)
                if (dot(f.l, x) < -f.a) return;
            for (const auto& v : verts)
                if (v == x) return;
            verts.push_back(x);
            return;
        }
        for (std::size_t i = start; i + (n - 1 - k) < m; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    if (static_cast<int>(m) >= n) rec(0, 0);
    std::sort(verts.begin(), verts.end(), lex_less);
    return verts;
}

inline Polytope from_hrep(std::vector<Facet> input) {
    if (input.empty()) throw Error(ErrorCode::BAD_INPUT, "no facets");
    const int n = static_cast<int>(input[0].l.size());
    if (n < 1 || n > 3) throw Error(ErrorCode::BAD_INPUT, "dim must be 1, 2 or 3");
    for (auto& f : input) {
        if (static_cast<int>(f.l.size()) != n)
            throw Error(ErrorCode::BAD_INPUT, "inconsistent normal length");
        IntVec reduced = f.l;
        bool changed;
        detail::primitivize(reduced, changed);
        if (changed)
            throw Error(ErrorCode::NONPRIMITIVE_NORMAL, "normal " + detail::ivec_str(f.l) +
                                                            " is not primitive; reduced form is " +
                                                            detail::ivec_str(reduced));
    }
    for (const auto& f : input)
        if (f.a <= 0)
            throw Error(ErrorCode::ORIGIN_OUTSIDE,
                        "facet " + detail::ivec_str(f.l) + " has a <= 0");

    // identical normals: keep the binding (smallest a) copy
    std::vector<Facet> fs;
    for (const auto& f : input) {
        bool merged = false;
        for (auto& g : fs)
            if (g.l == f.l) {
                g.a = std::min(g.a, f.a);
                merged = true;
                break;
            }
        if (!merged) fs.push_back(f);
    }

    if (detail::recession_nontrivial(fs, n))
        throw Error(ErrorCode::UNBOUNDED, "half-space intersection is unbounded");

    Polytope P;
    P.dim = n;
    P.vertices = enumerate_cell_vertices(fs, n);
    if (P.vertices.empty()) throw Error(ErrorCode::EMPTY_OR_LOWDIM, "no vertices found");
    {
        std::vector<RatVec> diffs;
        for (std::size_t i = 1; i < P.vertices.size(); ++i)
            diffs.push_back(sub(P.vertices[i], P.vertices[0]));
        if (rat_rank(diffs) < n)
            throw Error(ErrorCode::EMPTY_OR_LOWDIM, "intersection is not full-dimensional");
    }

    // drop facets without n affinely independent tight vertices
    for (const auto& f : fs) {
        std::vector<RatVec> tight;
        for (const auto& v : P.vertices)
            if (dot(f.l, v) == -f.a) tight.push_back(v);
        bool keep = false;
        if (static_cast<int>(tight.size()) >= n) {
            if (n == 1)
                keep = true;
            else {
                std::vector<RatVec> diffs;
                for (std::size_t i = 1; i < tight.size(); ++i)
                    diffs.push_back(sub(tight[i], tight[0]));
                keep = rat_rank(diffs) >= n - 1;
            }
        }
        if (keep) P.facets.push_back(f);
    }
    std::sort(P.facets.begin(), P.facets.end(), [](const Facet& a, const Facet& b) {
        for (std::size_t i = 0; i < a.l.size(); ++i)
            if (a.l[i] != b.l[i]) return a.l[i] < b.l[i];
        return a.a < b.a;
    });

    // remove vertices that are not extreme w.r.t. the kept facet list (none
    // should remain, but duplicates from near-parallel inputs are possible)
    // and build the triangulation.
    RatVec zero(n, Rational(0));
    if (n == 1) {
        P.tri_points = P.vertices;
        P.simplices.push_back({0, 1, 0, 0});
    } else if (n == 2) {
        auto order = detail::angular_order(P.vertices, zero);
        // rotate so the lexicographically smallest vertex is first
        std::size_t lo = 0;
        for (std::size_t i = 1; i < order.size(); ++i)
            if (lex_less(P.vertices[order[i]], P.vertices[order[lo]])) lo = i;
        std::rotate(order.begin(), order.begin() + lo, order.end());
        for (int i : order) P.tri_points.push_back(P.vertices[i]);
        for (std::size_t i = 1; i + 1 < P.tri_points.size(); ++i)
            P.simplices.push_back({0, static_cast<int>(i), static_cast<int>(i) + 1, 0});
    } else {
        // vertex centroid as apex, facets fanned from their first vertex
        RatVec cen(n, Rational(0));
        for (const auto& v : P.vertices)
            for (int i = 0; i < n; ++i) cen[i] += v[i];
        for (int i = 0; i < n; ++i) cen[i] /= static_cast<int>(P.vertices.size());
        P.tri_points = P.vertices;
        P.tri_points.push_back(cen);
        int apex = static_cast<int>(P.tri_points.size()) - 1;
        for (const auto& f : P.facets) {
            std::vector<int> tight;
            for (std::size_t vi = 0; vi < P.vertices.size(); ++vi)
                if (dot(f.l, P.vertices[vi]) == -f.a) tight.push_back(static_cast<int>(vi));
            // order the facet polygon: project out the largest |l| coordinate
            int drop = 0;
            for (int i = 1; i < 3; ++i)
                if (abs(f.l[i]) > abs(f.l[drop])) drop = i;
            std::vector<RatVec> proj;
            RatVec fc(2, Rational(0));
            for (int vi : tight) {
                RatVec q;
                for (int i = 0; i < 3; ++i)
                    if (i != drop) q.push_back(P.vertices[vi][i]);
                fc[0] += q[0];
                fc[1] += q[1];
                proj.push_back(q);
            }
            fc[0] /= static_cast<int>(tight.size());
            fc[1] /= static_cast<int>(tight.size());
            auto ord = detail::angular_order(proj, fc);
            std::size_t lo = 0;
            for (std::size_t i = 1; i < ord.size(); ++i)
                if (lex_less(P.vertices[tight[ord[i]]], P.vertices[tight[ord[lo]]])) lo = i;
            std::rotate(ord.begin(), ord.begin() + lo, ord.end());
            for (std::size_t i = 1; i + 1 < ord.size(); ++i)
                P.simplices.push_back({apex, tight[ord[0]], tight[ord[i]], tight[ord[i + 1]]});
        }
    }

    // facet simplices with exact tau
    for (std::size_t fi = 0; fi < P.facets.size(); ++fi) {
        const auto& f = P.facets[fi];
        std::vector<int> tight;
        for (std::size_t vi = 0; vi < P.vertices.size(); ++vi)
            if (dot(f.l, P.vertices[vi]) == -f.a) tight.push_back(static_cast<int>(vi));
        if (n == 1) {
            P.facet_simplices.push_back({static_cast<int>(fi), {tight[0], 0, 0}, Rational(1)});
        } else if (n == 2) {
            const RatVec &v = P.vertices[tight[0]], &w = P.vertices[tight[1]];
            RatVec d = sub(w, v);
            Rational t = (f.l[1] != 0) ? d[0] / Rational(-f.l[1]) : d[1] / Rational(f.l[0]);
            if (t < 0) t = -t;
            P.facet_simplices.push_back({static_cast<int>(fi), {tight[0], tight[1], 0}, t});
        } else {
            int drop = 0;
            for (int i = 1; i < 3; ++i)
                if (abs(f.l[i]) > abs(f.l[drop])) drop = i;
            std::vector<RatVec> proj;
            RatVec fc(2, Rational(0));
            for (int vi : tight) {
                RatVec q;
                for (int i = 0; i < 3; ++i)
                    if (i != drop) q.push_back(P.vertices[vi][i]);
                fc[0] += q[0];
                fc[1] += q[1];
                proj.push_back(q);
            }
            fc[0] /= static_cast<int>(tight.size());
            fc[1] /= static_cast<int>(tight.size());
            auto ord = detail::angular_order(proj, fc);
            for (std::size_t i = 1; i + 1 < ord.size(); ++i) {
                const RatVec &a = P.vertices[tight[ord[0]]], &b = P.vertices[tight[ord[i]]],
                             &c = P.vertices[tight[ord[i + 1]]];
                RatVec e1 = sub(b, a), e2 = sub(c, a);
                RatVec cr = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                             e1[0] * e2[1] - e1[1] * e2[0]};
                Rational s = 0;
                for (int i3 = 0; i3 < 3; ++i3)
                    if (f.l[i3] != 0) {
                        s = cr[i3] / Rational(f.l[i3]);
                        break;
                    }
                if (s < 0) s = -s;
                P.facet_simplices.push_back(
                    {static_cast<int>(fi), {tight[ord[0]], tight[ord[i]], tight[ord[i + 1]]},
                     s / 2});
            }
        }
    }

    // exact volume and barycenter
    P.volume = 0;
    P.barycenter.assign(n, Rational(0));
    for (const auto& s : P.simplices) {
        Rational v = detail::simplex_volume(P.tri_points, s, n);
        P.volume += v;
        for (int i = 0; i < n; ++i) {
            Rational c = 0;
            for (int k = 0; k <= n; ++k) c += P.tri_points[s[k]][i];
            P.barycenter[i] += v * c / (n + 1);
        }
    }
    if (P.volume == 0) throw Error(ErrorCode::EMPTY_OR_LOWDIM, "zero volume");
    for (int i = 0; i < n; ++i) P.barycenter[i] /= P.volume;
    return P;
}

inline Polytope from_vrep(const std::vector<RatVec>& pts) {
    if (pts.empty()) throw Error(ErrorCode::BAD_INPUT, "no points");
    const int n = static_cast<int>(pts[0].size());
    if (n < 1 || n > 3) throw Error(ErrorCode::BAD_INPUT, "dim must be 1, 2 or 3");
    {
        std::vector<RatVec> diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
        if (rat_rank(diffs) < n) throw Error(ErrorCode::LOWDIM, "points do not span");
    }
    // brute-force supporting hyperplanes through n-subsets
    std::vector<Facet> facets;
    const std::size_t m = pts.size();
    std::vector<std::size_t> pick(n);
    auto try_plane = [&](const RatVec& normal_rat) {
        // normalize to primitive integer, orient inward (0 inside), offset
        Int den_lcm = 1;
        for (const auto& c : normal_rat) den_lcm = int_lcm(den_lcm, rat_den(c));
        IntVec l(n);
        for (int i = 0; i < n; ++i) l[i] = rat_num(normal_rat[i] * den_lcm);
        Int g = 0;
        for (const auto& li : l) g = int_gcd(g, li);
        if (g == 0) return;
        for (auto& li : l) li /= g;
        Rational c0 = 0;
        for (int i = 0; i < n; ++i) c0 += Rational(l[i]) * pts[pick[0]][i];
        // side test
        bool all_ge = true, all_le = true;
        for (const auto& p : pts) {
            Rational s = 0;
            for (int i = 0; i < n; ++i) s += Rational(l[i]) * p[i];
            if (s < c0) all_ge = false;
            if (s > c0) all_le = false;
        }
        if (!all_ge && !all_le) return;
        if (all_le) {
            for (auto& li : l) li = -li;
            c0 = -c0;
        }
        // now <l,p> >= c0 for all points; inward with a = -c0
        Rational a = -c0;
        if (a <= 0) throw Error(ErrorCode::ORIGIN_OUTSIDE, "origin not strictly inside hull");
        for (const auto& f : facets)
            if (f.l == l && f.a == a) return;
        facets.push_back({l, a});
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int k) {
        if (k == n) {
            if (n == 1) {
                try_plane({Rational(1)});
            } else if (n == 2) {
                RatVec d = sub(pts[pick[1]], pts[pick[0]]);
                if (d[0] == 0 && d[1] == 0) return;
                try_plane({-d[1], d[0]});
            } else {
                RatVec e1 = sub(pts[pick[1]], pts[pick[0]]), e2 = sub(pts[pick[2]], pts[pick[0]]);
                RatVec cr = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                             e1[0] * e2[1] - e1[1] * e2[0]};
                if (cr[0] == 0 && cr[1] == 0 && cr[2] == 0) return;
                try_plane(cr);
            }
            return;
        }
        for (std::size_t i = start; i + (n - 1 - k) < m; ++i) {
            pick[k] = i;
            rec(i + 1, k + 1);
        }
    };
    rec(0, 0);
    return from_hrep(facets);
}

inline Polytope scale(const Polytope& P, const Rational& t) {
    if (t <= 0) throw Error(ErrorCode::BAD_INPUT, "scale factor must be positive");
    std::vector<Facet> fs = P.facets;
    for (auto& f : fs) f.a *= t;
    return from_hrep(fs);
}

// P - v (so the new body still has to contain 0 strictly)
inline Polytope recenter(const Polytope& P, const RatVec& v) {
    std::vector<Facet> fs = P.facets;
    for (auto& f : fs) {
        f.a += dot(f.l, v);
        if (f.a <= 0)
            throw Error(ErrorCode::ORIGIN_OUTSIDE,
                        "recentered polytope no longer contains 0");
    }
    return from_hrep(fs);
}

// ---- integrals ----------------------------------------------------------

struct Measures {
    Rational volume;
    RatVec barycenter;
    bool weighted = false;
    double volume_g = 0;                                     // int_P e^<a,p>
    std::array<double, 3> moment1_g = {0, 0, 0};             // int_P p e^<a,p>
    std::array<std::array<double, 3>, 3> moment2_g = {{}};   // int_P p p^T e^<a,p>
    double quad_error = 0;
};

namespace detail {

template <typename F>
void quad_over_simplices(const Polytope& P, int subdivide, bool refined_rule, F&& accum) {
    const int n = P.dim;
    auto rule = simplex_rule(n, refined_rule);
    // uniform midpoint refinement of each simplex, in doubles
    struct DS {
        std::array<std::array<double, 3>, 4> v;
    };
    std::vector<DS> stack;
    for (const auto& s : P.simplices) {
        DS d{};
        for (int k = 0; k <= n; ++k)
            for (int i = 0; i < n; ++i) d.v[k][i] = to_double(P.tri_points[s[k]][i]);
        stack.push_back(d);
    }
    for (int lvl = 0; lvl < subdivide; ++lvl) {
        std::vector<DS> next;
        for (const auto& d : stack) {
            auto mid = [&](int a, int b) {
                std::array<double, 3> m{};
                for (int i = 0; i < n; ++i) m[i] = 0.5 * (d.v[a][i] + d.v[b][i]);
                return m;
            };
            if (n == 1) {
                auto m01 = mid(0, 1);
                next.push_back({{d.v[0], m01}});
                next.push_back({{m01, d.v[1]}});
            } else if (n == 2) {
                auto m01 = mid(0, 1), m12 = mid(1, 2), m02 = mid(0, 2);
                next.push_back({{d.v[0], m01, m02}});
                next.push_back({{m01, d.v[1], m12}});
                next.push_back({{m02, m12, d.v[2]}});
                next.push_back({{m01, m12, m02}});
            } else {
                // 8-way split of a tetrahedron
                auto m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3), m12 = mid(1, 2),
                     m13 = mid(1, 3), m23 = mid(2, 3);
                next.push_back({{d.v[0], m01, m02, m03}});
                next.push_back({{m01, d.v[1], m12, m13}});
                next.push_back({{m02, m12, d.v[2], m23}});
                next.push_back({{m03, m13, m23, d.v[3]}});
                next.push_back({{m01, m12, m02, m03}});
                next.push_back({{m01, m13, m12, m03}});
                next.push_back({{m02, m12, m23, m03}});
                next.push_back({{m12, m13, m23, m03}});
            }
        }
        stack.swap(next);
    }
    for (const auto& d : stack) {
        double jac;  // n! * volume
        if (n == 1) {
            jac = std::abs(d.v[1][0] - d.v[0][0]);
        } else if (n == 2) {
            jac = std::abs((d.v[1][0] - d.v[0][0]) * (d.v[2][1] - d.v[0][1]) -
                           (d.v[2][0] - d.v[0][0]) * (d.v[1][1] - d.v[0][1]));
        } else {
            double e[3][3];
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 3; ++i) e[k][i] = d.v[k + 1][i] - d.v[0][i];
            jac = std::abs(e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) -
                           e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
                           e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]));
        }
        for (const auto& q : rule) {
            std::array<double, 3> x{};
            for (int i = 0; i < n; ++i) {
                x[i] = d.v[0][i];
                for (int k = 0; k < n; ++k) x[i] += q.s[k] * (d.v[k + 1][i] - d.v[0][i]);
            }
            accum(x.data(), jac * q.w);
        }
    }
}

}  // namespace detail

inline Measures measures(const Polytope& P) {
    Measures m;
    m.volume = P.volume;
    m.barycenter = P.barycenter;
    return m;
}

inline Measures measures(const Polytope& P, const std::vector<double>& a, int subdivide = 2) {
    Measures m;
    m.volume = P.volume;
    m.barycenter = P.barycenter;
    m.weighted = true;
    const int n = P.dim;
    auto run = [&](bool refined) {
        Measures t;
        detail::quad_over_simplices(P, subdivide, refined, [&](const double* x, double w) {
            double e = 0;
            for (int i = 0; i < n; ++i) e += a[i] * x[i];
            double f = w * std::exp(e);
            t.volume_g += f;
            for (int i = 0; i < n; ++i) {
                t.moment1_g[i] += f * x[i];
                for (int j = 0; j < n; ++j) t.moment2_g[i][j] += f * x[i] * x[j];
            }
        });
        return t;
    };
    Measures lo = run(false), hi = run(true);
    m.volume_g = hi.volume_g;
    m.moment1_g = hi.moment1_g;
    m.moment2_g = hi.moment2_g;
    m.quad_error = std::abs(hi.volume_g - lo.volume_g);
    for (int i = 0; i < n; ++i)
        m.quad_error = std::max(m.quad_error, std::abs(hi.moment1_g[i] - lo.moment1_g[i]));
    return m;
}

// Integral of u over P by per-simplex quadrature (degree 7 by default).
inline double integral(const Polytope& P, const std::function<double(const double*)>& u,
                       int subdivide = 0) {
    double s = 0;
    detail::quad_over_simplices(P, subdivide, false,
                                [&](const double* x, double w) { s += w * u(x); });
    return s;
}

// Exact integral of <m,p> + c over P.
inline Rational integral_affine_exact(const Polytope& P, const RatVec& m, const Rational& c) {
    Rational s = 0;
    const int n = P.dim;
    for (const auto& sp : P.simplices) {
        Rational v = detail::simplex_volume(P.tri_points, sp, n);
        RatVec cen(n, Rational(0));
        for (int k = 0; k <= n; ++k)
            for (int i = 0; i < n; ++i) cen[i] += P.tri_points[sp[k]][i];
        Rational val = c;
        for (int i = 0; i < n; ++i) val += m[i] * cen[i] / (n + 1);
        s += v * val;
    }
    return s;
}

inline Rational sigma_total_exact(const Polytope& P, BoundaryMeasure bm) {
    Rational s = 0;
    for (const auto& fs : P.facet_simplices)
        s += (bm == BoundaryMeasure::canonical) ? fs.tau * P.facets[fs.facet].a : fs.tau;
    return s;
}

// Exact integral of <m,p> + c over the boundary against sigma (affine u).
inline Rational boundary_integral_affine_exact(const Polytope& P, const RatVec& m,
                                               const Rational& c, BoundaryMeasure bm) {
    Rational s = 0;
    const int n = P.dim;
    for (const auto& fs : P.facet_simplices) {
        Rational mass = (bm == BoundaryMeasure::canonical) ? fs.tau * P.facets[fs.facet].a
                                                           : fs.tau;
        Rational val = c;
        for (int i = 0; i < n; ++i) {
            Rational cen = 0;
            for (int k = 0; k < n; ++k) cen += P.vertices[fs.v[k]][i];
            val += m[i] * cen / n;
        }
        s += mass * val;
    }
    return s;
}

struct BoundaryIntegral {
    double boundary_integral = 0;  // int_dP u dsigma
    double lin_functional = 0;     // L_sigma(u)
    double sigma_total = 0;        // sigma(dP)
    double coefficient = 0;        // sigma(dP)/vol(P), = dim exactly for canonical
};

// Facet quadrature of a generic u against sigma, and L_sigma(u).
inline BoundaryIntegral boundary_functional(const Polytope& P,
                                            const std::function<double(const double*)>& u,
                                            BoundaryMeasure bm, int subdivide = 0) {
    BoundaryIntegral out;
    const int n = P.dim;
    out.sigma_total = to_double(sigma_total_exact(P, bm));
    if (n == 1) {
        for (const auto& fs : P.facet_simplices) {
            double mass = (bm == BoundaryMeasure::canonical)
                              ? to_double(Rational(fs.tau * P.facets[fs.facet].a))
                              : to_double(fs.tau);
            double x = to_double(P.vertices[fs.v[0]][0]);
            out.boundary_integral += mass * u(&x);
        }
    } else {
        auto rule = simplex_rule(n - 1, true);
        for (const auto& fs : P.facet_simplices) {
            double mass = (bm == BoundaryMeasure::canonical)
                              ? to_double(Rational(fs.tau * P.facets[fs.facet].a))
                              : to_double(fs.tau);
            std::array<std::array<double, 3>, 3> v{};
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i) v[k][i] = to_double(P.vertices[fs.v[k]][i]);
            // int_S u dsigma = mass * (n-1)! * sum w u(x)  (weights sum to 1/(n-1)!)
            double fact = (n - 1 == 1) ? 1.0 : 2.0;
            double s = 0;
            for (const auto& q : rule) {
                std::array<double, 3> x{};
                for (int i = 0; i < n; ++i) {
                    x[i] = v[0][i];
                    for (int k = 0; k + 1 < n; ++k) x[i] += q.s[k] * (v[k + 1][i] - v[0][i]);
                }
                s += q.w * u(x.data());
            }
            out.boundary_integral += mass * fact * s;
        }
    }
    out.coefficient = out.sigma_total / to_double(P.volume);
    out.lin_functional = out.boundary_integral - out.coefficient * integral(P, u, subdivide);
    return out;
}

}  // namespace tke
