#pragma once

#include <string>
#include <vector>

#include "qes/expr.hpp"
#include "qes/generator.hpp"

namespace qes {

enum class ZeroClass { FirstOrder, SecondOrder, SecondOrderMidpoint, ForbiddenHigherOrder };

std::string to_string(ZeroClass c);

struct ZeroRecord {
    double x = 0.0;  // in [0, L)
    int order = 0;   // 7 means every available derivative vanished
    ZeroClass classification = ZeroClass::FirstOrder;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    bool informational = false;  // never affects the overall verdict
    double value = 0.0;
    double location = 0.0;
    bool has_location = false;
    std::string detail;
};

struct AdmissibilityReport {
    bool passed = false;
    std::vector<ZeroRecord> zeros;
    double parity_defect = 0.0;
    double curvature = 0.0;
    double curvature_target = 0.0;
    double third_derivative = 0.0;
    double quartic = 0.0;
    double quartic_target = 0.0;
    double min_discriminant = 0.0;
    double min_discriminant_at = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    bool range_ok = false;
    std::vector<CheckResult> checks;

    const CheckResult* find(const std::string& name) const;
    std::vector<std::string> failed_checks() const;
};

// Zeros of U on [0, L) with jet-based order classification.
std::vector<ZeroRecord> locate_zeros(const GeneratingFunction& g);

// Runs every check even after a failure.
AdmissibilityReport check_admissibility(const GeneratingFunction& g);

// Same, but bad energies or period become failed checks instead of exceptions.
AdmissibilityReport check_admissibility(const Expression& u, double eps0, double eps1, double period);

struct VplusRegularity {
    enum class Mode { RangeOk, BranchSwitchRequired };
    Mode mode = Mode::RangeOk;
    std::vector<double> c0_points;  // U = -2 eps0
    std::vector<double> b0_points;  // U = 2 eps1
};

std::string to_string(VplusRegularity::Mode m);

VplusRegularity vplus_regularity_mode(const GeneratingFunction& g);

// Roots of U - level on [0, L), both crossings and touches.
std::vector<double> level_points(const GeneratingFunction& g, double level);

// Zeros of the discriminant S on [0, L) (S touches zero from above).
std::vector<double> discriminant_zeros(const GeneratingFunction& g);

}  // namespace qes
