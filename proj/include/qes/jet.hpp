#pragma once

#include <array>
#include <cstddef>

namespace qes {

// Truncated Taylor series about x0: c[k] = f^(k)(x0) / k!.
// All operations are exact up to the truncation order; coefficient k of a
// result depends only on coefficients 0..k of the operands.
class Jet {
public:
    static constexpr int order = 6;
    static constexpr std::size_t size = order + 1;
    using Coeffs = std::array<double, size>;

    constexpr Jet() noexcept : x0_(0.0), c_{} {}
    constexpr Jet(double x0, const Coeffs& c) noexcept : x0_(x0), c_(c) {}

    static constexpr Jet constant(double x0, double value) noexcept {
        Coeffs c{};
        c[0] = value;
        return Jet(x0, c);
    }
    static constexpr Jet variable(double x0) noexcept {
        Coeffs c{};
        c[0] = x0;
        c[1] = 1.0;
        return Jet(x0, c);
    }

    constexpr double base() const noexcept { return x0_; }
    constexpr double value() const noexcept { return c_[0]; }
    constexpr double operator[](std::size_t k) const noexcept { return c_[k]; }
    constexpr double& operator[](std::size_t k) noexcept { return c_[k]; }
    constexpr const Coeffs& coeffs() const noexcept { return c_; }

    // k-th derivative at the base point, k! * c[k].
    double derivative(int k) const;

    // d/dx as a jet; the top coefficient becomes 0 (one order of depth is lost).
    Jet differentiated() const noexcept;

    // Antiderivative with the given constant term; the top input coefficient is dropped.
    Jet integrated(double constant) const noexcept;

    // Value of the Taylor polynomial at x0 + dx.
    double evaluate_offset(double dx) const noexcept;

    Jet& operator+=(const Jet& o) noexcept;
    Jet& operator-=(const Jet& o) noexcept;
    Jet& operator*=(const Jet& o) noexcept;
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double s) noexcept { c_[0] += s; return *this; }
    Jet& operator-=(double s) noexcept { c_[0] -= s; return *this; }
    Jet& operator*=(double s) noexcept;
    Jet& operator/=(double s);

private:
    double x0_;
    Coeffs c_;
};

Jet operator-(const Jet& a) noexcept;
Jet operator+(Jet a, const Jet& b) noexcept;
Jet operator-(Jet a, const Jet& b) noexcept;
Jet operator*(const Jet& a, const Jet& b) noexcept;
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double s) noexcept;
Jet operator+(double s, Jet a) noexcept;
Jet operator-(Jet a, double s) noexcept;
Jet operator-(double s, const Jet& a) noexcept;
Jet operator*(Jet a, double s) noexcept;
Jet operator*(double s, Jet a) noexcept;
Jet operator/(Jet a, double s);
Jet operator/(double s, const Jet& a);

// Elementary functions. Domain violations throw DomainError carrying the base point.
Jet sqrt(const Jet& a);
Jet exp(const Jet& a) noexcept;
Jet sin(const Jet& a) noexcept;
Jet cos(const Jet& a) noexcept;
Jet tan(const Jet& a);
Jet sinh(const Jet& a) noexcept;
Jet cosh(const Jet& a) noexcept;
Jet tanh(const Jet& a) noexcept;
Jet pow(const Jet& a, int n);

// Simultaneous sine and cosine (shares the recurrence).
void sincos(const Jet& a, Jet& s, Jet& c) noexcept;

}  // namespace qes
