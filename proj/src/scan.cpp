#include "qes/scan.hpp"

#include <algorithm>
#include <cmath>

namespace qes::scan {

double bisect(const Fn& f, double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (f(hi) == 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double circular_offset(double a, double b, double period) {
    double d = std::fmod(b - a, period);
    if (d > 0.5 * period) d -= period;
    if (d <= -0.5 * period) d += period;
    return d;
}

std::vector<double> merge_points(std::vector<double> pts, double period, double tol) {
    for (auto& p : pts) {
        p = std::fmod(p, period);
        if (p < 0.0) p += period;
        if (p >= period) p = 0.0;
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        if (!out.empty() && std::abs(circular_offset(out.back(), p, period)) <= tol) continue;
        out.push_back(p);
    }
    if (out.size() > 1 && std::abs(circular_offset(out.back(), out.front(), period)) <= tol) out.pop_back();
    return out;
}

std::vector<double> sign_change_roots(const Fn& f, double period, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n) + 1), fs(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        xs[static_cast<std::size_t>(i)] = period * i / n;
        fs[static_cast<std::size_t>(i)] = i == n ? fs[0] : f(xs[static_cast<std::size_t>(i)]);
    }
    std::vector<double> roots;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
        } else if (fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0)) {
            roots.push_back(bisect(f, xs[i], xs[i + 1]));
        }
    }
    return merge_points(std::move(roots), period, 1e-12 * period);
}

std::vector<double> touch_points(const Fn& f, const Fn& df, double period, int n, double threshold) {
    const auto N = static_cast<std::size_t>(n);
    std::vector<double> xs(N), fs(N);
    for (std::size_t i = 0; i < N; ++i) {
        xs[i] = period * static_cast<double>(i) / n;
        fs[i] = f(xs[i]);
    }
    std::vector<double> out;
    const double h = period / n;
    for (std::size_t i = 0; i < N; ++i) {
        const double fl = fs[(i + N - 1) % N];
        const double fr = fs[(i + 1) % N];
        const double fi = fs[i];
        if (std::abs(fi) > std::abs(fl) || std::abs(fi) > std::abs(fr)) continue;
        const bool same_side = (fl > 0.0 && fr > 0.0 && fi >= 0.0) || (fl < 0.0 && fr < 0.0 && fi <= 0.0);
        if (!same_side) continue;
        const double lo = xs[i] - h;
        const double hi = xs[i] + h;
        double x = xs[i];
        const double dl = df(lo);
        const double dr = df(hi);
        if ((dl < 0.0) != (dr < 0.0) || dl == 0.0 || dr == 0.0) x = bisect(df, lo, hi);
        if (std::abs(f(x)) <= threshold) out.push_back(x);
    }
    return merge_points(std::move(out), period, 1e-9 * period);
}

}  // namespace qes::scan
