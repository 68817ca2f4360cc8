#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace tke {

// Product Gauss rules on the unit simplex built from collapsed (Duffy)
// coordinates so all weights are positive. The 4-point factors are exact
// for total degree 7, the 5-point factors for degree 9 (used to estimate
// quadrature error by comparison).

struct QPoint1 {
    double x, w;
};

// Gauss-Legendre on [0,1], weight 1.
inline const std::array<QPoint1, 4>& gl4() {
    static const std::array<QPoint1, 4> r = {{{0.069431844202973712388, 0.17392742256872692869},
                                              {0.3300094782075718676, 0.32607257743127307131},
                                              {0.6699905217924281324, 0.32607257743127307131},
                                              {0.93056815579702628761, 0.17392742256872692869}}};
    return r;
}

inline const std::array<QPoint1, 5>& gl5() {
    static const std::array<QPoint1, 5> r = {{{0.046910077030668003601, 0.11846344252809454376},
                                              {0.23076534494715845448, 0.23931433524968323402},
                                              {0.5, 0.28444444444444444444},
                                              {0.76923465505284154552, 0.23931433524968323402},
                                              {0.9530899229693319964, 0.11846344252809454376}}};
    return r;
}

// Gauss-Jacobi on [0,1], weight s (integrates s*f(s) ds).
inline const std::array<QPoint1, 4>& gj1_4() {
    static const std::array<QPoint1, 4> r = {{{0.13975986434378055215, 0.031180970950008082174},
                                              {0.41640956763108317994, 0.12984754760823244083},
                                              {0.72315698636187617232, 0.20346456801027136079},
                                              {0.94289580388548231781, 0.13550691343148811621}}};
    return r;
}

inline const std::array<QPoint1, 5>& gj1_5() {
    static const std::array<QPoint1, 5> r = {{{0.098535085798826426123, 0.015747914521692276185},
                                              {0.30453572664636390549, 0.073908870072616670351},
                                              {0.56202518975261385599, 0.1463869870846698087},
                                              {0.80198658212639182746, 0.16717463809436956549},
                                              {0.96019014294853125766, 0.096781590226651679274}}};
    return r;
}

// Gauss-Jacobi on [0,1], weight s^2.
inline const std::array<QPoint1, 4>& gj2_4() {
    static const std::array<QPoint1, 4> r = {{{0.2041485821032271367, 0.010352240749918065284},
                                              {0.48295270489563249766, 0.068633887172923075317},
                                              {0.76139926244813769494, 0.14345878979921420905},
                                              {0.9514994505530026707, 0.11088841561127798368}}};
    return r;
}

inline const std::array<QPoint1, 5>& gj2_5() {
    static const std::array<QPoint1, 5> r = {{{0.14894578705298358188, 0.0041138252030990079586},
                                              {0.36566652736911322765, 0.032055600722961919255},
                                              {0.61011361293448067176, 0.089200161221590000186},
                                              {0.8265196792283042769, 0.12619896189991148803},
                                              {0.96542106008178490848, 0.081764784285770917905}}};
    return r;
}

// Barycentric quadrature node on the unit n-simplex {s_i >= 0, sum <= 1}.
struct SimplexNode {
    std::array<double, 3> s;  // reference coordinates, unused tail = 0
    double w;                 // weight, relative to unit simplex volume measure ds
};

// Rules integrate f over the unit simplex: int f(s) ds ~= sum w_i f(s_i).
// (Weights sum to 1/n!.)
inline std::vector<SimplexNode> simplex_rule(int n, bool refined = false) {
    std::vector<SimplexNode> out;
    if (n == 1) {
        if (!refined)
            for (auto& q : gl4()) out.push_back({{q.x, 0, 0}, q.w});
        else
            for (auto& q : gl5()) out.push_back({{q.x, 0, 0}, q.w});
    } else if (n == 2) {
        // x = 1-xi, y = eta*xi with xi = 1-s: int_T f = int01 int01 f(..)(1-xi) deta dxi
        // Collapse: s1 = a, s2 = b*(1-a); Jacobian (1-a): weight from gj1 mirrored.
        auto dims2 = [&out](auto& ja, auto& gl) {
            for (auto& qa : ja)
                for (auto& qb : gl) {
                    double a = 1.0 - qa.x;  // weight s on qa.x == weight (1-a)
                    out.push_back({{a, qb.x * (1.0 - a), 0}, qa.w * qb.w});
                }
        };
        if (!refined)
            dims2(gj1_4(), gl4());
        else
            dims2(gj1_5(), gl5());
    } else {
        // s1 = a, s2 = b(1-a), s3 = c(1-a)(1-b); Jacobian (1-a)^2 (1-b)
        auto dims3 = [&out](auto& j2, auto& j1, auto& gl) {
            for (auto& qa : j2)
                for (auto& qb : j1)
                    for (auto& qc : gl) {
                        double a = 1.0 - qa.x, b = 1.0 - qb.x;
                        out.push_back(
                            {{a, b * (1.0 - a), qc.x * (1.0 - a) * (1.0 - b)}, qa.w * qb.w * qc.w});
                    }
        };
        if (!refined)
            dims3(gj2_4(), gj1_4(), gl4());
        else
            dims3(gj2_5(), gj1_5(), gl5());
    }
    return out;
}

}  // namespace tke
