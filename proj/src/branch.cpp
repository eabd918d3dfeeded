#include "qes/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/errors.hpp"
#include "qes/local.hpp"
#include "qes/scan.hpp"
#include "qes/validator.hpp"

namespace qes {

int BranchMap::sign_at(double x) const {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
    return signs[static_cast<std::size_t>(it - breakpoints.begin())];
}

namespace {

constexpr double kSnap = 1e-6;
// High-order touches of S are flat, so their located position is loose.
constexpr double kStructuralSnap = 1e-3;
constexpr double kContinuity = 1e-6;
constexpr double kOddness = 1e-8;

double wp_value(const GeneratingFunction& g, double x, int sign) {
    try {
        return w_plus(g, x, sign)[0];
    } catch (const LocatedError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

bool wp_jet(const GeneratingFunction& g, double x, int sign, Jet& out) {
    try {
        out = w_plus(g, x, sign);
        return std::isfinite(out[0]);
    } catch (const LocatedError&) {
        return false;
    }
}

// Half-width for probing either side of a breakpoint.
double probe_width(double L, double left_gap, double right_gap) {
    return std::min({1e-3 * L, 0.25 * left_gap, 0.25 * right_gap});
}

}  // namespace

BranchMap build_branch_map(const GeneratingFunction& g) {
    const double L = g.period();
    const double xm = g.midpoint();

    std::vector<double> uz;
    for (const auto& z : locate_zeros(g)) uz.push_back(z.x);
    std::vector<double> zs;
    for (double z : discriminant_zeros(g)) {
        for (double u : uz)
            if (std::abs(scan::circular_offset(z, u, L)) <= kStructuralSnap * L) z = u;
        if (std::abs(scan::circular_offset(z, 0.0, L)) <= kStructuralSnap * L) z = 0.0;
        if (std::abs(scan::circular_offset(z, xm, L)) <= kStructuralSnap * L) z = xm;
        zs.push_back(z);
    }
    zs = scan::merge_points(std::move(zs), L, kSnap * L);

    std::vector<double> left, right;
    for (double z : zs) {
        if (z > 0.0 && z < xm) left.push_back(z);
        if (z > xm && z < L) right.push_back(z);
    }
    for (double z : right) {
        const double mirror = L - z;
        const bool matched = std::any_of(left.begin(), left.end(),
                                         [&](double l) { return std::abs(l - mirror) <= kSnap * L; });
        if (!matched) throw BranchInconsistency("discriminant zero has no mirror image about the midpoint", z);
    }

    // Left half: intervals (b0=0, l1), ..., (lk, xm).
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), left.begin(), left.end());
    edges.push_back(xm);
    const std::size_t nl = edges.size() - 1;
    std::vector<int> lsigns(nl, 1);
    for (std::size_t j = nl - 1; j >= 1; --j) {
        const double z = edges[j];
        const double h = probe_width(L, z - edges[j - 1], edges[j + 1] - z);
        const int sr = lsigns[j];
        Jet jr;
        int choice = sr;
        if (wp_jet(g, z + h, sr, jr)) {
            const double target = jr.evaluate_offset(-2.0 * h);
            const double keep = wp_value(g, z - h, sr);
            const double flip = wp_value(g, z - h, -sr);
            const double dk = std::isfinite(keep) ? std::abs(keep - target) : std::numeric_limits<double>::infinity();
            const double df = std::isfinite(flip) ? std::abs(flip - target) : std::numeric_limits<double>::infinity();
            choice = df < dk ? -sr : sr;
        }
        lsigns[j - 1] = choice;
    }

    BranchMap map;
    map.period = L;
    for (std::size_t j = 1; j < edges.size() - 1; ++j) map.breakpoints.push_back(edges[j]);
    map.breakpoints.push_back(xm);
    for (auto it = left.rbegin(); it != left.rend(); ++it) map.breakpoints.push_back(L - *it);
    map.signs = lsigns;
    for (auto it = lsigns.rbegin(); it != lsigns.rend(); ++it) map.signs.push_back(-*it);

    // Continuity across every breakpoint, including x_m and the period boundary.
    std::vector<double> all{0.0};
    all.insert(all.end(), map.breakpoints.begin(), map.breakpoints.end());
    for (std::size_t j = 0; j < all.size(); ++j) {
        const double z = all[j];
        const double prev = j == 0 ? all.back() - L : all[j - 1];
        const double next = j + 1 < all.size() ? all[j + 1] : L;
        const double h = probe_width(L, z - prev, next - z);
        Jet jl, jr;
        const bool okl = wp_jet(g, z - h, map.sign_at(z - h), jl);
        const bool okr = wp_jet(g, z + h, map.sign_at(z + h), jr);
        if (!okl || !okr) continue;
        const double vl = jl.evaluate_offset(h);
        const double vr = jr.evaluate_offset(-h);
        if (std::abs(vl - vr) > kContinuity * std::max({1.0, std::abs(vl), std::abs(vr)})) {
            throw BranchInconsistency("W+ is discontinuous across a branch point", z);
        }
    }

    // Oddness about x_m away from the discriminant zeros.
    const int probes = 512;
    for (int i = 0; i < probes; ++i) {
        const double t = 0.5 * L * (i + 0.5) / probes;
        bool near = false;
        for (double z : all)
            near = near || std::abs(scan::circular_offset(z, xm - t, L)) < 1e-3 * L ||
                   std::abs(scan::circular_offset(z, xm + t, L)) < 1e-3 * L;
        if (near) continue;
        const double a = wp_value(g, xm - t, map.sign_at(xm - t));
        const double b = wp_value(g, xm + t, map.sign_at(xm + t));
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if (std::abs(a) > 1e6 || std::abs(b) > 1e6) continue;
        if (std::abs(a + b) > kOddness * std::max({1.0, std::abs(a), std::abs(b)})) {
            throw BranchInconsistency("W+ is not odd about the midpoint", xm + t);
        }
    }
    return map;
}

}  // namespace qes
