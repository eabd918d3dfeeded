#pragma once

#include <functional>

#include "qes/generator.hpp"
#include "qes/jet.hpp"

namespace qes {

// Limits of the superpotentials and potentials at a simple zero of U, for both
// choices of the root sign R (R = + makes W+ vanish there).
struct FirstOrderConstants {
    double a0_plus, a1_plus, a2_plus;
    double a0_minus, a1_minus, a2_minus;
    double alpha_minus_plus, alpha_minus_minus;  // V-
    double alpha_plus_plus, alpha_plus_minus;    // V+
};

// Limits at a double zero of U. The U^(5)/B terms are dropped when U^(5) vanishes.
struct SecondOrderConstants {
    double b;
    double beta_minus_plus, beta_minus_minus;
    double beta_plus_plus, beta_plus_minus;
};

FirstOrderConstants first_order_constants(const Jet& u_at_zero, const EnergyPair& eps);
SecondOrderConstants second_order_constants(const Jet& u_at_zero, const EnergyPair& eps);

// Constant term of a least-squares polynomial fit of f(x0 + t) on |t| in [w/8, w].
double fit_constant(const std::function<double(double)>& f, double x0, double w, int degree = 4, int samples = 48);

}  // namespace qes
