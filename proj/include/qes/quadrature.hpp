#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "qes/errors.hpp"

namespace qes::quad {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct Estimate {
    Vec<N> value{};
    double error = 0.0;
};

// One G7/K15 panel on [a, b] of a vector-valued integrand.
template <std::size_t N, class F>
Estimate<N> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Vec<N> kronrod{};
    Vec<N> gauss{};
    const Vec<N> fc = f(c);
    for (std::size_t q = 0; q < N; ++q) {
        kronrod[q] = kKronrodWeights[7] * fc[q];
        gauss[q] = kGaussWeights[3] * fc[q];
    }
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const Vec<N> f1 = f(c - dx);
        const Vec<N> f2 = f(c + dx);
        for (std::size_t q = 0; q < N; ++q) {
            const double s = f1[q] + f2[q];
            kronrod[q] += kKronrodWeights[j] * s;
            if (j % 2 == 1) gauss[q] += kGaussWeights[j / 2] * s;
        }
    }
    Estimate<N> e;
    for (std::size_t q = 0; q < N; ++q) {
        e.value[q] = h * kronrod[q];
        e.error = std::max(e.error, std::abs(h * (kronrod[q] - gauss[q])));
    }
    return e;
}

namespace detail {

template <std::size_t N, class F>
Vec<N> adapt(F& f, double a, double b, const Estimate<N>& whole, double tol, int depth, int max_depth) {
    if (whole.error <= tol || b - a <= 1e-14 * std::max(1.0, std::abs(a))) {
        return whole.value;
    }
    if (depth >= max_depth) {
        throw QuadratureNonconvergence("adaptive quadrature exceeded its depth limit", 0.5 * (a + b));
    }
    const double m = 0.5 * (a + b);
    const Estimate<N> left = gk15<N>(f, a, m);
    const Estimate<N> right = gk15<N>(f, m, b);
    const Vec<N> l = adapt<N>(f, a, m, left, 0.5 * tol, depth + 1, max_depth);
    const Vec<N> r = adapt<N>(f, m, b, right, 0.5 * tol, depth + 1, max_depth);
    Vec<N> out{};
    for (std::size_t q = 0; q < N; ++q) out[q] = l[q] + r[q];
    return out;
}

}  // namespace detail

// Adaptive bisection on G7/K15 panels; tol bounds the estimated absolute error of
// every component. Reversed limits give the negated integral.
template <std::size_t N, class F>
Vec<N> integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 40) {
    if (a == b) return Vec<N>{};
    if (b < a) {
        Vec<N> r = integrate<N>(f, b, a, abs_tol, max_depth);
        for (auto& v : r) v = -v;
        return r;
    }
    const Estimate<N> whole = gk15<N>(f, a, b);
    return detail::adapt<N>(f, a, b, whole, abs_tol, 0, max_depth);
}

template <class F>
double integrate_scalar(F&& f, double a, double b, double abs_tol = 1e-10, int max_depth = 40) {
    auto g = [&](double x) { return Vec<1>{f(x)}; };
    return integrate<1>(g, a, b, abs_tol, max_depth)[0];
}

// Fixed 8-point Gauss-Legendre rule, exact for polynomials of degree <= 15.
inline constexpr std::array<double, 4> kLegendre8Nodes = {
    0.183434642495649804939476142360184, 0.525532409916328985817739049189246,
    0.796666477413626739591553936475830, 0.960289856497536231683560868569473};
inline constexpr std::array<double, 4> kLegendre8Weights = {
    0.362683783378361982965150449277196, 0.313706645877887287337962201986601,
    0.222381034453374470544355994426241, 0.101228536290376259152531354309962};

template <class F>
double gauss_legendre8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        acc += kLegendre8Weights[j] * (f(c - h * kLegendre8Nodes[j]) + f(c + h * kLegendre8Nodes[j]));
    }
    return h * acc;
}

}  // namespace qes::quad
