#include "qes/validator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qes/errors.hpp"
#include "qes/scan.hpp"

namespace qes {

namespace {

constexpr int kScan = GeneratingFunction::scan_points;
constexpr double kOrderThreshold = 1e-10;
constexpr double kCoarseOrderThreshold = 1e-4;
constexpr double kTouchThreshold = 1e-9;
constexpr double kParityTolerance = 1e-8;
constexpr double kConditionTolerance = 1e-8;
constexpr double kQuarticTolerance = 1e-7;

double derivative_scale(const GeneratingFunction& g, int k) {
    return g.amplitude() * std::pow(2.0 * std::numbers::pi / g.period(), k);
}

int order_at(const GeneratingFunction& g, double x, double threshold) {
    const Jet j = g.jet(x);
    for (int k = 1; k <= Jet::order; ++k) {
        if (std::abs(j[static_cast<std::size_t>(k)]) > threshold * derivative_scale(g, k)) return k;
    }
    return Jet::order + 1;
}

double refine_zero(const GeneratingFunction& g, double x, int order) {
    if (order < 2 || order > Jet::order) return x;
    const int k = order - 1;
    const double h = g.period() / kScan;
    const scan::Fn dk = [&](double t) { return g.jet(t).derivative(k); };
    const double lo = dk(x - h);
    const double hi = dk(x + h);
    if (lo == 0.0 || hi == 0.0 || (lo < 0.0) != (hi < 0.0)) return scan::bisect(dk, x - h, x + h);
    return x;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

CheckResult make_check(std::string name, bool ok, double value, std::string detail) {
    CheckResult c;
    c.name = std::move(name);
    c.passed = ok;
    c.value = value;
    c.detail = std::move(detail);
    return c;
}

CheckResult located(CheckResult c, double x) {
    c.location = x;
    c.has_location = true;
    return c;
}

}  // namespace

std::string to_string(ZeroClass c) {
    switch (c) {
        case ZeroClass::FirstOrder: return "first_order";
        case ZeroClass::SecondOrder: return "second_order";
        case ZeroClass::SecondOrderMidpoint: return "second_order_midpoint";
        case ZeroClass::ForbiddenHigherOrder: return "forbidden_higher_order";
    }
    return "unknown";
}

std::string to_string(VplusRegularity::Mode m) {
    return m == VplusRegularity::Mode::RangeOk ? "range_ok" : "branch_switch_required";
}

const CheckResult* AdmissibilityReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<std::string> AdmissibilityReport::failed_checks() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed && !c.informational) out.push_back(c.name);
    return out;
}

std::vector<ZeroRecord> locate_zeros(const GeneratingFunction& g) {
    const double L = g.period();
    const scan::Fn u = [&](double t) { return g(t); };
    const scan::Fn du = [&](double t) { return g.jet(t)[1]; };
    std::vector<double> pts = scan::sign_change_roots(u, L, kScan);
    const auto touches = scan::touch_points(u, du, L, kScan, kTouchThreshold * g.amplitude());
    pts.insert(pts.end(), touches.begin(), touches.end());
    pts = scan::merge_points(std::move(pts), L, 1e-9 * L);

    std::vector<ZeroRecord> out;
    for (double x : pts) {
        const int coarse = order_at(g, x, kCoarseOrderThreshold);
        const double xr = g.reduce(refine_zero(g, x, coarse));
        ZeroRecord z;
        z.x = xr;
        z.order = order_at(g, xr, kOrderThreshold);
        if (z.order == 1) {
            z.classification = ZeroClass::FirstOrder;
        } else if (z.order == 2) {
            const bool mid = std::abs(scan::circular_offset(xr, g.midpoint(), L)) <= 1e-6 * L;
            z.classification = mid ? ZeroClass::SecondOrderMidpoint : ZeroClass::SecondOrder;
        } else {
            z.classification = ZeroClass::ForbiddenHigherOrder;
        }
        out.push_back(z);
    }
    return out;
}

std::vector<double> level_points(const GeneratingFunction& g, double level) {
    const double L = g.period();
    const scan::Fn f = [&](double t) { return g(t) - level; };
    const scan::Fn df = [&](double t) { return g.jet(t)[1]; };
    std::vector<double> pts = scan::sign_change_roots(f, L, kScan);
    const double thr = kTouchThreshold * std::max(g.amplitude(), std::abs(level));
    const auto touches = scan::touch_points(f, df, L, kScan, thr);
    pts.insert(pts.end(), touches.begin(), touches.end());
    return scan::merge_points(std::move(pts), L, 1e-9 * L);
}

std::vector<double> discriminant_zeros(const GeneratingFunction& g) {
    const double L = g.period();
    const EnergyPair& eps = g.energies();
    const scan::Fn s = [&](double t) { return stable_discriminant(g.jet(t), eps)[0]; };
    const scan::Fn ds = [&](double t) { return stable_discriminant(g.jet(t), eps)[1]; };
    double smax = 0.0;
    for (int i = 0; i < kScan; ++i) smax = std::max(smax, std::abs(s(L * i / kScan)));
    if (smax == 0.0) return {};
    std::vector<double> pts = scan::touch_points(s, ds, L, kScan, kTouchThreshold * smax);
    return scan::merge_points(std::move(pts), L, 1e-9 * L);
}

VplusRegularity vplus_regularity_mode(const GeneratingFunction& g) {
    const EnergyPair& eps = g.energies();
    VplusRegularity r;
    r.c0_points = level_points(g, -2.0 * eps.eps0);
    r.b0_points = level_points(g, 2.0 * eps.eps1);
    double lo = g(0.0), hi = lo;
    for (int i = 0; i < kScan; ++i) {
        const double v = g(g.period() * i / kScan);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const bool inside = lo > -2.0 * eps.eps0 && hi < 2.0 * eps.eps1;
    r.mode = inside && r.c0_points.empty() && r.b0_points.empty() ? VplusRegularity::Mode::RangeOk
                                                                  : VplusRegularity::Mode::BranchSwitchRequired;
    return r;
}

AdmissibilityReport check_admissibility(const Expression& u, double eps0, double eps1, double period) {
    AdmissibilityReport r;
    const bool period_ok = period > 0.0 && std::isfinite(period);
    const bool energies_ok = eps0 > 0.0 && eps1 > 0.0 && std::isfinite(eps0) && std::isfinite(eps1);
    if (period_ok && energies_ok) return check_admissibility(GeneratingFunction(u, EnergyPair(eps0, eps1), period));
    r.checks.push_back(make_check("period_positive", period_ok, period, period_ok ? "" : "period must be positive"));
    r.checks.push_back(make_check("energies_positive", energies_ok, std::min(eps0, eps1),
                                  energies_ok ? "" : "eps0 and eps1 must both be positive; other checks skipped"));
    r.passed = false;
    return r;
}

AdmissibilityReport check_admissibility(const GeneratingFunction& g) {
    AdmissibilityReport r;
    const EnergyPair& eps = g.energies();
    const double L = g.period();
    const double xm = g.midpoint();
    const double A = g.amplitude();
    const double e01 = eps.eps0 * eps.eps1;

    r.checks.push_back(make_check("period_positive", true, L, ""));
    r.checks.push_back(make_check("energies_positive", true, std::min(eps.eps0, eps.eps1), ""));

    try {
        // periodicity of U itself
        double per = 0.0, per_at = 0.0;
        for (int i = 0; i < 256; ++i) {
            const double x = L * i / 256.0;
            const double d = std::abs(g(x + L) - g(x));
            if (d > per) {
                per = d;
                per_at = x;
            }
        }
        r.checks.push_back(located(make_check("periodic", per <= kParityTolerance * A, per,
                                              "max |U(x+L) - U(x)| = " + fmt(per)),
                                   per_at));

        r.zeros = locate_zeros(g);

        const ZeroRecord* mid = nullptr;
        for (const auto& z : r.zeros)
            if (std::abs(scan::circular_offset(z.x, xm, L)) <= 1e-6 * L) mid = &z;
        {
            const double umid = g(xm);
            bool ok = mid != nullptr && mid->order == 2;
            std::string detail;
            if (mid == nullptr) {
                detail = "U(x_m) = " + fmt(umid) + " is not zero";
            } else if (mid->order != 2) {
                detail = "zero at x_m has order " + std::to_string(mid->order) + ", expected 2";
            } else {
                detail = "second-order zero at x_m";
            }
            r.checks.push_back(located(make_check("midpoint_zero", ok, mid ? mid->order : umid, detail), xm));
        }

        {
            double defect = 0.0, at = 0.0;
            const int n = 1024;
            for (int i = 1; i <= n; ++i) {
                const double t = 0.5 * L * i / n;
                const double d = std::abs(g(xm + t) - g(xm - t));
                if (d > defect) {
                    defect = d;
                    at = xm + t;
                }
            }
            r.parity_defect = defect;
            r.checks.push_back(located(make_check("parity", defect <= kParityTolerance * A, defect,
                                                  "max |U(x_m+t) - U(x_m-t)| = " + fmt(defect)),
                                       at));
        }

        const Jet jm = g.jet(xm);
        r.curvature = jm.derivative(2);
        r.curvature_target = 8.0 * e01;
        {
            const double tol = kConditionTolerance * std::max(1.0, r.curvature_target);
            const bool ok = std::abs(r.curvature - r.curvature_target) <= tol;
            r.checks.push_back(located(make_check("curvature", ok, r.curvature,
                                                  "U''(x_m) = " + fmt(r.curvature) + ", required 8 eps0 eps1 = " +
                                                      fmt(r.curvature_target)),
                                       xm));
        }
        r.third_derivative = jm.derivative(3);
        {
            const bool ok = std::abs(r.third_derivative) <= kConditionTolerance * std::max(1.0, derivative_scale(g, 3));
            r.checks.push_back(located(make_check("third_derivative", ok, r.third_derivative,
                                                  "U'''(x_m) = " + fmt(r.third_derivative)),
                                       xm));
        }
        r.quartic = jm.derivative(4);
        r.quartic_target = -64.0 * e01 * (eps.eps0 - eps.eps1);
        {
            const double tol = kQuarticTolerance * std::max({1.0, std::abs(r.quartic_target), std::abs(r.quartic)});
            const bool ok = std::abs(r.quartic - r.quartic_target) <= tol;
            r.checks.push_back(located(make_check("midpoint_quartic", ok, r.quartic,
                                                  "U''''(x_m) = " + fmt(r.quartic) + ", required " +
                                                      fmt(r.quartic_target)),
                                       xm));
        }

        {
            bool ok = true;
            CheckResult c = make_check("no_higher_order_zeros", true, 0.0, "");
            for (const auto& z : r.zeros) {
                if (z.classification == ZeroClass::ForbiddenHigherOrder) {
                    ok = false;
                    c = located(make_check("no_higher_order_zeros", false, z.order,
                                           "zero of order " + std::to_string(z.order)),
                                z.x);
                    break;
                }
            }
            c.passed = ok;
            r.checks.push_back(c);
        }

        {
            CheckResult c = make_check("second_order_zero_conditions", true, 0.0, "");
            for (const auto& z : r.zeros) {
                if (z.classification != ZeroClass::SecondOrder) continue;
                const Jet j = g.jet(z.x);
                const double u2 = j.derivative(2);
                const double u3 = j.derivative(3);
                const bool curv = std::abs(u2 - 8.0 * e01) <= kConditionTolerance * std::max(1.0, 8.0 * e01);
                const bool third = std::abs(u3) <= kConditionTolerance * std::max(1.0, derivative_scale(g, 3));
                if (!curv || !third) {
                    c = located(make_check("second_order_zero_conditions", false, curv ? u3 : u2,
                                           curv ? "U''' = " + fmt(u3) + " at a second-order zero"
                                                : "U'' = " + fmt(u2) + " at a second-order zero, required " +
                                                      fmt(8.0 * e01)),
                                z.x);
                    break;
                }
            }
            r.checks.push_back(c);
        }

        {
            double smin = 0.0, at = 0.0, scale = 0.0;
            bool first = true;
            auto probe = [&](double x) {
                const Jet j = g.jet(x);
                const double s = stable_discriminant(j, eps)[0];
                scale = std::max(scale, discriminant_scale(j, eps));
                if (first || s < smin) {
                    smin = s;
                    at = x;
                    first = false;
                }
            };
            for (int i = 0; i < kScan; ++i) probe(L * i / kScan);
            for (const auto& z : r.zeros) probe(z.x);
            r.min_discriminant = smin;
            r.min_discriminant_at = at;
            const bool ok = smin >= -1e-12 * scale;
            r.checks.push_back(located(
                make_check("discriminant", ok, smin, "min S = " + fmt(smin) + (ok ? "" : ", construction impossible")),
                at));

            const Jet jb = g.jet(0.0);
            const double sb = stable_discriminant(jb, eps)[0];
            bool bok = std::abs(sb) <= kTouchThreshold * std::max(scale, std::numeric_limits<double>::min());
            std::string detail = "S(x_m - L/2) = " + fmt(sb);
            if (bok && std::abs(jb[0]) <= kOrderThreshold * A) {
                const double q = jb.derivative(4);
                const double tol = kQuarticTolerance * std::max({1.0, std::abs(r.quartic_target), std::abs(q)});
                if (std::abs(q - r.quartic_target) > tol) {
                    bok = false;
                    detail = "U''''(x_m - L/2) = " + fmt(q) + ", required " + fmt(r.quartic_target);
                }
            }
            r.checks.push_back(located(make_check("boundary_discriminant", bok, sb, detail), 0.0));
        }

        {
            double lo = g(0.0), hi = lo;
            for (int i = 0; i < kScan; ++i) {
                const double v = g(L * i / kScan);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            r.u_min = lo;
            r.u_max = hi;
            r.range_ok = lo > -2.0 * eps.eps0 && hi < 2.0 * eps.eps1;
            CheckResult c = make_check("range", r.range_ok, hi,
                                       "U in [" + fmt(lo) + ", " + fmt(hi) + "], open interval (" +
                                           fmt(-2.0 * eps.eps0) + ", " + fmt(2.0 * eps.eps1) + ")");
            c.informational = true;
            r.checks.push_back(c);
        }
    } catch (const LocatedError& e) {
        r.checks.push_back(located(make_check("evaluable", false, 0.0, e.what()), e.location()));
    }

    r.passed = r.failed_checks().empty();
    return r;
}

}  // namespace qes
