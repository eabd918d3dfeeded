#pragma once

#include <string_view>
#include <vector>

#include "qes/expr.hpp"
#include "qes/jet.hpp"

namespace qes {

// Level spacings of the three-state chain; both strictly positive.
struct EnergyPair {
    double eps0;
    double eps1;

    EnergyPair(double e0, double e1);
};

// U(x) bound to its energies and period.
class GeneratingFunction {
public:
    GeneratingFunction(Expression u, EnergyPair eps, double period);
    static GeneratingFunction parse(std::string_view source, EnergyPair eps, double period);

    const Expression& expression() const noexcept { return u_; }
    const EnergyPair& energies() const noexcept { return eps_; }
    double period() const noexcept { return period_; }
    double midpoint() const noexcept { return 0.5 * period_; }
    ParamMap parameters() const;

    double operator()(double x) const { return u_.evaluate(x, slots_); }
    Jet jet(double x) const { return u_.eval_jet(x, slots_); }

    // max |U| on the scan grid; never below the smallest normal double.
    double amplitude() const noexcept { return amplitude_; }

    // x mapped into [0, L).
    double reduce(double x) const noexcept;

    static constexpr int scan_points = 4096;

private:
    Expression u_;
    EnergyPair eps_;
    double period_;
    std::vector<double> slots_;
    double amplitude_ = 0.0;
};

// S = U'^2 + 4 U (U + 2 eps0)(U - 2 eps1), one order shallower than U.
Jet stable_discriminant(const Jet& u, const EnergyPair& eps);

// Magnitude of the two summands of S, the natural scale for its roundoff.
double discriminant_scale(const Jet& u, const EnergyPair& eps);

}  // namespace qes
