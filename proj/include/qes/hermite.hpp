#pragma once

#include <vector>

#include "qes/jet.hpp"

namespace qes {

// Two-point Hermite interpolant on [a, b] matching the Taylor coefficients
// 0..depth of the jets supplied at both ends (degree 2*depth + 1).
class HermitePatch {
public:
    HermitePatch() = default;
    HermitePatch(const Jet& left, const Jet& right, int depth);

    double lo() const noexcept { return a_; }
    double hi() const noexcept { return b_; }
    int depth() const noexcept { return depth_; }

    double value(double x) const noexcept;
    Jet jet(double x) const;
    double integral(double from, double to) const;

private:
    double a_ = 0.0;
    double b_ = 0.0;
    int depth_ = 0;
    std::vector<double> nodes_;  // in the scaled variable u = (x - a) / (b - a)
    std::vector<double> newton_;
};

}  // namespace qes
