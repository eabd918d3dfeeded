#pragma once

#include <functional>
#include <vector>

namespace qes::scan {

using Fn = std::function<double(double)>;

// Bisection to full precision on a bracket with f(lo) f(hi) <= 0.
double bisect(const Fn& f, double lo, double hi);

// Sign changes and exact zeros of a periodic f on [0, L), scanned on n points.
std::vector<double> sign_change_roots(const Fn& f, double period, int n);

// Local minima of |f| on the scan with no adjacent sign change, refined by
// bisection on df when df brackets a root, kept when |f| <= threshold there.
std::vector<double> touch_points(const Fn& f, const Fn& df, double period, int n, double threshold);

// Signed distance from a to b on the circle of circumference L, in (-L/2, L/2].
double circular_offset(double a, double b, double period);

// Sorted union of points with near-duplicates (closer than tol on the circle) removed.
std::vector<double> merge_points(std::vector<double> pts, double period, double tol);

}  // namespace qes::scan
