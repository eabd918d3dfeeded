#include "qes/jet.hpp"

#include <cmath>
#include <limits>

#include "qes/errors.hpp"

namespace qes {

namespace {

constexpr int N = Jet::order;

constexpr std::array<double, Jet::size> kFactorials = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0};

}  // namespace

double Jet::derivative(int k) const {
    if (k < 0 || k > order) {
        throw InvalidArgument("jet derivative order out of range");
    }
    return kFactorials[static_cast<std::size_t>(k)] * c_[static_cast<std::size_t>(k)];
}

Jet Jet::differentiated() const noexcept {
    Coeffs d{};
    for (int k = 0; k < N; ++k) {
        d[k] = (k + 1) * c_[k + 1];
    }
    return Jet(x0_, d);
}

Jet Jet::integrated(double constant) const noexcept {
    Coeffs d{};
    d[0] = constant;
    for (int k = 1; k <= N; ++k) {
        d[k] = c_[k - 1] / k;
    }
    return Jet(x0_, d);
}

double Jet::evaluate_offset(double dx) const noexcept {
    double acc = c_[N];
    for (int k = N - 1; k >= 0; --k) {
        acc = acc * dx + c_[k];
    }
    return acc;
}

Jet& Jet::operator+=(const Jet& o) noexcept {
    for (std::size_t k = 0; k < size; ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) noexcept {
    for (std::size_t k = 0; k < size; ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) noexcept {
    *this = *this * o;
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
}

Jet& Jet::operator*=(double s) noexcept {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet& Jet::operator/=(double s) {
    if (s == 0.0) {
        throw DomainError("division by zero", x0_);
    }
    for (auto& v : c_) v /= s;
    return *this;
}

Jet operator-(const Jet& a) noexcept {
    Jet r = a;
    r *= -1.0;
    return r;
}

Jet operator+(Jet a, const Jet& b) noexcept { return a += b; }
Jet operator-(Jet a, const Jet& b) noexcept { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) noexcept {
    Jet::Coeffs r{};
    for (int k = 0; k <= N; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
        r[k] = acc;
    }
    return Jet(a.base(), r);
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b[0] == 0.0) {
        throw DomainError("division by zero", a.base());
    }
    Jet::Coeffs r{};
    for (int k = 0; k <= N; ++k) {
        double acc = a[k];
        for (int i = 1; i <= k; ++i) acc -= b[i] * r[k - i];
        r[k] = acc / b[0];
    }
    return Jet(a.base(), r);
}

Jet operator+(Jet a, double s) noexcept { return a += s; }
Jet operator+(double s, Jet a) noexcept { return a += s; }
Jet operator-(Jet a, double s) noexcept { return a -= s; }
Jet operator-(double s, const Jet& a) noexcept { return -a + s; }
Jet operator*(Jet a, double s) noexcept { return a *= s; }
Jet operator*(double s, Jet a) noexcept { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a) { return Jet::constant(a.base(), s) / a; }

Jet sqrt(const Jet& a) {
    if (!(a[0] > 0.0)) {
        throw DomainError(a[0] < 0.0 ? "square root of negative value" : "square root at zero", a.base());
    }
    Jet::Coeffs r{};
    r[0] = std::sqrt(a[0]);
    for (int k = 1; k <= N; ++k) {
        double acc = a[k];
        for (int i = 1; i < k; ++i) acc -= r[i] * r[k - i];
        r[k] = acc / (2.0 * r[0]);
    }
    return Jet(a.base(), r);
}

Jet exp(const Jet& a) noexcept {
    Jet::Coeffs r{};
    r[0] = std::exp(a[0]);
    for (int k = 1; k <= N; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * a[i] * r[k - i];
        r[k] = acc / k;
    }
    return Jet(a.base(), r);
}

namespace {

// Shared recurrence for (sin, cos) when sign = -1 and (sinh, cosh) when sign = +1.
void trig_pair(const Jet& a, double s0, double c0, double sign, Jet& s, Jet& c) noexcept {
    Jet::Coeffs rs{};
    Jet::Coeffs rc{};
    rs[0] = s0;
    rc[0] = c0;
    for (int k = 1; k <= N; ++k) {
        double as = 0.0;
        double ac = 0.0;
        for (int i = 1; i <= k; ++i) {
            as += i * a[i] * rc[k - i];
            ac += i * a[i] * rs[k - i];
        }
        rs[k] = as / k;
        rc[k] = sign * ac / k;
    }
    s = Jet(a.base(), rs);
    c = Jet(a.base(), rc);
}

}  // namespace

void sincos(const Jet& a, Jet& s, Jet& c) noexcept {
    trig_pair(a, std::sin(a[0]), std::cos(a[0]), -1.0, s, c);
}

Jet sin(const Jet& a) noexcept {
    Jet s, c;
    sincos(a, s, c);
    return s;
}

Jet cos(const Jet& a) noexcept {
    Jet s, c;
    sincos(a, s, c);
    return c;
}

Jet tan(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    if (std::abs(c[0]) <= 4.0 * std::numeric_limits<double>::epsilon()) {
        throw DomainError("tangent at an odd multiple of pi/2", a.base());
    }
    return s / c;
}

Jet sinh(const Jet& a) noexcept {
    Jet s, c;
    trig_pair(a, std::sinh(a[0]), std::cosh(a[0]), 1.0, s, c);
    return s;
}

Jet cosh(const Jet& a) noexcept {
    Jet s, c;
    trig_pair(a, std::sinh(a[0]), std::cosh(a[0]), 1.0, s, c);
    return c;
}

Jet tanh(const Jet& a) noexcept {
    // t' = a' (1 - t^2) stays finite where sinh and cosh overflow.
    Jet::Coeffs t{}, g{};
    t[0] = std::tanh(a[0]);
    g[0] = 1.0 - t[0] * t[0];
    for (std::size_t k = 1; k < Jet::size; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * g[k - j];
        t[k] = acc / static_cast<double>(k);
        double sq = 0.0;
        for (std::size_t j = 0; j <= k; ++j) sq += t[j] * t[k - j];
        g[k] = -sq;
    }
    return Jet(a.base(), t);
}

Jet pow(const Jet& a, int n) {
    if (n < 0) {
        return 1.0 / pow(a, -n);
    }
    Jet result = Jet::constant(a.base(), 1.0);
    Jet base = a;
    unsigned e = static_cast<unsigned>(n);
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

}  // namespace qes
