#include <cmath>

#include "qes/razavy.hpp"

namespace qes::razavy {

VplusCoefficients vplus_coefficients(const Params& p) {
    const double e0 = p.eps0;
    const double e1 = p.eps1;
    const double s = p.s;
    VplusCoefficients t;
    auto& a = t.a;
    auto& b = t.b;

    a[0] = 16 * e0 * e0 * e1 * e1;
    a[1] = -8 * s * e0 * (2 - 5 * e0 + 2 * e0 * e0);
    a[2] = -12 * e0 * (1 - 2 * e0 - 2 * e0 * e0 + 4 * e0 * e0 * e0);
    a[3] = 8 * s * (1 + 3 * e0 - 12 * e0 * e0 + 6 * e0 * e0 * e0);
    a[4] = 1 + 16 * e0 - 48 * e0 * e0 * (1 - e0 * e0);
    a[5] = -6 * s * (1 + 2 * e0 - 12 * e0 * e0 + 8 * e0 * e0 * e0);
    a[6] = -8 * e1 * e1 * e0 * (3 + 2 * e0);
    a[7] = 16 * e1 * e1 * e0 * s;

    b[0] = 8 * e1 * e0 * e0 * e0;
    b[1] = 8 * e0 * e0 * s;
    b[2] = -2 * e0 * e0 * (1 - 12 * e0 + 16 * e0 * e0);
    b[3] = -8 * e0 * s * (3 * e0 - 1);
    b[4] = e0 * (1 + 10 * e0 - 48 * e0 * e0 * (1 - e0));
    b[5] = 2 * s * (1 - 8 * e0 + 12 * e0 * e0);
    b[6] = -2 * e1 * e1 * (-1 - 4 * e0 + 16 * e0 * e0);
    b[7] = -8 * e1 * e1 * s;
    b[8] = 8 * e0 * e1 * e1 * e1;
    return t;
}

PsiPlusCoefficients psi_plus_coefficients(const Params& p) {
    const double e0 = p.eps0;
    const double e1 = p.eps1;
    const double s = p.s;
    const double r2 = std::sqrt(2.0);
    const double r2e0e1 = std::sqrt(2 * e0 * e1);
    const double r2e0 = std::sqrt(2 * e0);
    const double dr = std::sqrt(e1) - std::sqrt(e0);
    PsiPlusCoefficients t;
    auto& k = t.k;
    auto& l = t.l;
    auto& m = t.m;
    auto& n = t.n;

    k[0] = 4 * r2 * e0 * e1;
    k[1] = 4 * r2e0e1;
    k[2] = -r2 * (8 * e0 * e1 - 1);
    k[3] = -4 * r2e0e1;
    k[4] = 4 * r2 * e0 * e1;

    l[0] = 4 * e0 * s;
    l[1] = 2 * e0;
    l[2] = 2 * (1 - 4 * e0) * s;
    l[3] = -2 * e1;  // sign corrected; +2 eps1 does not reproduce the partner eigenfunction
    l[4] = 4 * e1 * s;

    m[0] = -4 * r2 * e0 * e1 * (4 * e0 - 1) * (e1 - s);
    m[1] = 2 * r2e0 * dr * (8 * e0 * e0 * e0 - 14 * e0 * e0 + 7 * e0 - 1);
    m[2] = -r2 * (s - e1) * (1 - 4 * e0 - 4 * e0 * e0 + 16 * e0 * e0 * e0);
    m[3] = -4 * e1 * e1 * r2e0 * dr * (4 * e0 - 1);

    n[0] = 2 * e0 * s;
    n[1] = e0;
    n[2] = -2 * (e0 + e1) * s;
    n[3] = -e1;
    n[4] = 2 * e1 * s;
    return t;
}

}  // namespace qes::razavy
