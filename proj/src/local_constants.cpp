#include "qes/local_constants.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "qes/errors.hpp"

namespace qes {

namespace {

double derivative(const Jet& u, int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return u[static_cast<std::size_t>(k)] * f;
}

}  // namespace

FirstOrderConstants first_order_constants(const Jet& u, const EnergyPair& eps) {
    const double e0 = eps.eps0;
    const double e1 = eps.eps1;
    const double u1 = derivative(u, 1);
    const double u2 = derivative(u, 2);
    const double u3 = derivative(u, 3);
    if (u1 == 0.0) throw InvalidArgument("not a simple zero");

    FirstOrderConstants c{};
    c.a0_plus = -(8.0 * e0 * e0 * e1 + u1 * u1 - e0 * u2) / (2.0 * e0 * u1);
    c.a1_plus = -c.a0_plus;
    c.a1_minus = (u1 * u1 + e1 * (u2 - 8.0 * e0 * e1)) / (2.0 * e1 * u1);
    c.a2_minus = -c.a1_minus;
    c.a0_minus = -(u2 - 8.0 * e0 * e1) / (2.0 * u1);
    c.a2_plus = -c.a0_minus;

    c.alpha_minus_minus = -(64.0 * e0 * e0 * e1 * e1 + 8.0 * e1 * u1 * u1 + u2 * u2 - 16.0 * e0 * (u1 * u1 + e1 * u2) -
                            2.0 * u1 * u3) /
                          (8.0 * u1 * u1);
    c.alpha_minus_plus = -3.0 * c.alpha_minus_minus + 4.0 * e0 + u3 / (2.0 * u1);
    c.alpha_plus_plus = c.alpha_minus_minus + 2.0 * e1 + (u1 * u1 - 2.0 * e0 * u2) / (4.0 * e0 * e0);
    c.alpha_plus_minus = c.alpha_minus_plus - 2.0 * e1;
    return c;
}

SecondOrderConstants second_order_constants(const Jet& u, const EnergyPair& eps) {
    const double e0 = eps.eps0;
    const double e1 = eps.eps1;
    const double u4 = derivative(u, 4);
    const double u5 = derivative(u, 5);
    SecondOrderConstants c{};
    const double arg = 32.0 * (e0 - e1) + u4 / (2.0 * e0 * e1);
    c.b = 0.25 * std::sqrt(std::max(arg, 0.0));
    const double base = e0 + u4 / (64.0 * e0 * e1);
    const double odd = std::abs(u5) <= 1e-8 * (1.0 + std::abs(u4)) ? 0.0 : u5 / (320.0 * e0 * e1 * c.b);
    c.beta_minus_plus = base - odd;
    c.beta_minus_minus = base + odd;
    c.beta_plus_plus = base - 2.0 * e1 + odd;
    c.beta_plus_minus = base - 2.0 * e1 - odd;
    return c;
}

double fit_constant(const std::function<double(double)>& f, double x0, double w, int degree, int samples) {
    if (degree < 0 || samples <= degree) throw InvalidArgument("fit needs more samples than coefficients");
    const std::size_t m = static_cast<std::size_t>(degree) + 1;
    std::vector<double> ata(m * m, 0.0), atb(m, 0.0);
    for (int i = 0; i < samples; ++i) {
        // Half the samples on each side, skipping the immediate neighbourhood of x0.
        const double frac = 0.125 + 0.875 * (i / 2) / std::max(1, samples / 2 - 1);
        const double u = (i % 2 == 0 ? 1.0 : -1.0) * frac;
        const double y = f(x0 + u * w);
        std::vector<double> row(m);
        double p = 1.0;
        for (std::size_t k = 0; k < m; ++k, p *= u) row[k] = p;
        for (std::size_t r = 0; r < m; ++r) {
            atb[r] += row[r] * y;
            for (std::size_t c = 0; c < m; ++c) ata[r * m + c] += row[r] * row[c];
        }
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(ata[r * m + col]) > std::abs(ata[piv * m + col])) piv = r;
        for (std::size_t c = 0; c < m; ++c) std::swap(ata[col * m + c], ata[piv * m + c]);
        std::swap(atb[col], atb[piv]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = ata[r * m + col] / ata[col * m + col];
            for (std::size_t c = col; c < m; ++c) ata[r * m + c] -= factor * ata[col * m + c];
            atb[r] -= factor * atb[col];
        }
    }
    std::vector<double> coef(m);
    for (std::size_t r = m; r-- > 0;) {
        double acc = atb[r];
        for (std::size_t c = r + 1; c < m; ++c) acc -= ata[r * m + c] * coef[c];
        coef[r] = acc / ata[r * m + r];
    }
    return coef[0];
}

}  // namespace qes
