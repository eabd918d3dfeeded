#include "qes/razavy.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include "qes/errors.hpp"

namespace qes::razavy {

namespace {

template <class T>
T polyval(const std::vector<double>& c, const T& t) {
    T acc = t * 0.0 + c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * t + c[i];
    return acc;
}

double scale_at(const std::vector<double>& c, double t) {
    double acc = 0.0, tp = 1.0;
    for (double ci : c) {
        acc += std::abs(ci) * tp;
        tp *= std::max(1.0, std::abs(t));
    }
    return acc;
}

// (c - r) q(c) + remainder = p(c)
std::vector<double> divide_root(const std::vector<double>& p, double r) {
    std::vector<double> q(p.size() - 1);
    double carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    return q;
}

RationalCos deflate(std::vector<double> num, std::vector<double> den, double root) {
    constexpr double tol = 1e-10;
    while (den.size() > 1 && num.size() > 1) {
        const bool den_zero = std::abs(polyval(den, root)) <= tol * scale_at(den, root);
        const bool num_zero = std::abs(polyval(num, root)) <= tol * scale_at(num, root);
        if (!den_zero || !num_zero) break;
        den = divide_root(den, root);
        num = divide_root(num, root);
    }
    return {std::move(num), std::move(den)};
}

template <std::size_t N>
std::vector<double> as_vector(const std::array<double, N>& a) {
    return {a.begin(), a.end()};
}

using std::cos;
using std::exp;
using std::sin;

template <class T>
T envelope(const Params& p, const T& x) {
    const T half = (1.0 + cos(x)) * 0.5;
    return exp(2.0 * p.s * half);
}

template <class T>
T psi_minus_t(const Params& p, const T& x, int which) {
    const T half = (1.0 + cos(x)) * 0.5;
    const T e = exp(2.0 * p.s * half);
    switch (which) {
        case 0: return e * (1.0 + 4.0 * (p.s + p.eps1) * half);
        case 1: return e * p.eps0 * sin(x);
        case 2: return e * (2.0 * p.eps1) * (1.0 + 4.0 * (p.s - p.eps0) * half);
        default: throw InvalidArgument("psi_minus index must be 0, 1 or 2");
    }
}

template <class T>
T v_minus_t(const Params& p, const T& x) {
    const double ee = p.eps0 * p.eps1;
    return p.eps0 - 0.5 + 0.25 * (ee - 6.0 * p.s * cos(x) - ee * cos(2.0 * x));
}

double checked_den(double den, const std::vector<double>& coeffs, double c, double x) {
    if (std::abs(den) <= 1e-13 * scale_at(coeffs, c)) {
        throw ReferenceDenominatorZero("closed-form denominator vanishes", x);
    }
    return den;
}

Jet checked_den(const Jet& den, const std::vector<double>& coeffs, const Jet& c, double x) {
    checked_den(den[0], coeffs, c[0], x);
    return den;
}

template <class T>
T v_plus_t(const Params& p, const RationalCos& f, const T& x, double xv) {
    const T c = cos(x);
    const T head = 0.5 * (p.eps0 * p.eps0 + 1.5 * p.eps0 - 1.0 - p.s * c - p.eps0 * p.eps1 * c * c);
    const T den = checked_den(polyval(f.den, c), f.den, c, xv);
    return head + polyval(f.num, c) / (2.0 * den);
}

template <class T>
T psi_plus_t(const Params& p, const RationalCos& f1, const RationalCos& f2, const T& x, double xv, int which) {
    const T c = cos(x);
    const T e = envelope(p, x);
    if (which == 1) {
        const T den = checked_den(polyval(f1.den, c), f1.den, c, xv);
        return p.eps0 * e * polyval(f1.num, c) / (2.0 * den);
    }
    if (which == 2) {
        const T den = checked_den(polyval(f2.den, c), f2.den, c, xv);
        return e * sin(x) * polyval(f2.num, c) / (2.0 * den);
    }
    throw InvalidArgument("psi_plus index must be 1 or 2");
}

}  // namespace

Params Params::from_eps0(double eps0) {
    if (!(eps0 >= 0.5) || !std::isfinite(eps0)) {
        throw InvalidArgument("the trigonometric Razavy system needs eps0 >= 1/2");
    }
    Params p;
    p.eps0 = eps0;
    p.eps1 = eps0 - 0.5;
    p.s = std::sqrt(p.eps0 * p.eps1);
    return p;
}

Reference::Reference(double eps0)
    : p_(Params::from_eps0(eps0)), vt_(vplus_coefficients(p_)), pt_(psi_plus_coefficients(p_)) {
    const double root = -std::sqrt(p_.eps1 / p_.eps0);
    vplus_ = deflate(as_vector(vt_.a), as_vector(vt_.b), root);
    psi1p_ = deflate(as_vector(pt_.k), as_vector(pt_.l), root);
    psi2p_ = deflate(as_vector(pt_.m), as_vector(pt_.n), root);
}

double Reference::v_minus(double x) const { return v_minus_t(p_, x); }
double Reference::v_plus(double x) const { return v_plus_t(p_, vplus_, x, x); }
double Reference::psi_minus(double x, int which, double c) const { return c * psi_minus_t(p_, x, which); }
double Reference::psi_plus(double x, int which, double c) const {
    return c * psi_plus_t(p_, psi1p_, psi2p_, x, x, which);
}

Jet Reference::v_minus_jet(double x) const { return v_minus_t(p_, Jet::variable(x)); }
Jet Reference::v_plus_jet(double x) const { return v_plus_t(p_, vplus_, Jet::variable(x), x); }
Jet Reference::psi_minus_jet(double x, int which, double c) const {
    return c * psi_minus_t(p_, Jet::variable(x), which);
}
Jet Reference::psi_plus_jet(double x, int which, double c) const {
    return c * psi_plus_t(p_, psi1p_, psi2p_, Jet::variable(x), x, which);
}

double Reference::w(double x, int which) const {
    try {
        switch (which) {
            case 0: {
                const Jet g = psi_minus_jet(x, 0);
                return -(g.differentiated() / g)[0];
            }
            case 1: {
                const Jet g = psi_plus_jet(x, 1);
                return -(g.differentiated() / g)[0];
            }
            case 2: {
                const Jet g1 = psi_plus_jet(x, 1);
                const Jet w1 = -(g1.differentiated() / g1);
                const Jet g2 = psi_plus_jet(x, 2);
                const Jet phi = g2.differentiated() + w1 * g2;
                return -(phi.differentiated() / phi)[0];
            }
            default: throw InvalidArgument("superpotential index must be 0, 1 or 2");
        }
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    } catch (const ReferenceDenominatorZero&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

double ref_v_minus(double x, const Params& p) { return v_minus_t(p, x); }

double ref_v_plus(double x, const Params& p) { return Reference(p.eps0).v_plus(x); }

double ref_psi_minus(double x, const Params& p, int which) { return psi_minus_t(p, x, which); }

double ref_psi_plus(double x, const Params& p, int which) { return Reference(p.eps0).psi_plus(x, which); }

double turbiner_potential(double x, double a) {
    const double c = std::cos(x);
    return 0.5 * (-a * a * c * c - 3.0 * a * c);
}

TurbinerFit turbiner_form_fit(const Params& p) {
    constexpr int n = 1024;
    TurbinerFit fit;
    fit.a = std::sqrt(p.eps0 * p.eps1);
    std::vector<double> d(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = 2.0 * std::numbers::pi * i / n;
        d[static_cast<std::size_t>(i)] = ref_v_minus(x, p) - turbiner_potential(x, fit.a);
        mean += d[static_cast<std::size_t>(i)];
    }
    mean /= n;
    for (double v : d) fit.max_deviation = std::max(fit.max_deviation, std::abs(v - mean));
    return fit;
}

}  // namespace qes::razavy
