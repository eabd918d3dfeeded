#include "qes/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/errors.hpp"

namespace qes {

EnergyPair::EnergyPair(double e0, double e1) : eps0(e0), eps1(e1) {
    if (!(e0 > 0.0) || !std::isfinite(e0)) throw InvalidArgument("eps0 must be positive");
    if (!(e1 > 0.0) || !std::isfinite(e1)) throw InvalidArgument("eps1 must be positive");
}

GeneratingFunction::GeneratingFunction(Expression u, EnergyPair eps, double period)
    : u_(std::move(u)), eps_(eps), period_(period) {
    if (!(period > 0.0) || !std::isfinite(period)) throw InvalidArgument("period must be positive");
    slots_ = u_.bind(parameters());
    double amp = std::numeric_limits<double>::min();
    for (int i = 0; i < scan_points; ++i) {
        amp = std::max(amp, std::abs((*this)(period_ * i / scan_points)));
    }
    amplitude_ = amp;
}

GeneratingFunction GeneratingFunction::parse(std::string_view source, EnergyPair eps, double period) {
    return GeneratingFunction(Expression::parse(source), eps, period);
}

ParamMap GeneratingFunction::parameters() const { return {{"eps0", eps_.eps0}, {"eps1", eps_.eps1}}; }

double GeneratingFunction::reduce(double x) const noexcept {
    double r = std::fmod(x, period_);
    if (r < 0.0) r += period_;
    if (r >= period_) r = 0.0;
    return r;
}

Jet stable_discriminant(const Jet& u, const EnergyPair& eps) {
    const Jet du = u.differentiated();
    return du * du + 4.0 * u * (u + 2.0 * eps.eps0) * (u - 2.0 * eps.eps1);
}

double discriminant_scale(const Jet& u, const EnergyPair& eps) {
    const double d = u[1];
    const double v = u[0];
    return d * d + std::abs(4.0 * v * (v + 2.0 * eps.eps0) * (v - 2.0 * eps.eps1));
}

}  // namespace qes
