#include "qes/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qes/errors.hpp"
#include "qes/quadrature.hpp"
#include "qes/scan.hpp"
#include "qes/validator.hpp"

namespace qes {

namespace {

constexpr double kSnap = 1e-6;

Jet rebased(const Jet& j, double x0) { return Jet(x0, j.coeffs()); }

// (pi/L) cot(pi (x - p) / L): L-periodic with unit residue at p.
Jet kappa(double x, double p, double L) {
    const double k = std::numbers::pi / L;
    const Jet y = (Jet::variable(x) - p) * k;
    Jet s, c;
    sincos(y, s, c);
    return k * c / s;
}

Jet sine_jet(double x, double p, double L) { return sin((Jet::variable(x) - p) * (std::numbers::pi / L)); }

const char* fn_name(int f) {
    static const char* names[] = {"W+", "W~+", "W0", "W1", "W2", "V-", "V+", "psi0-", "psi1-", "psi2-", "psi1+", "psi2+"};
    return names[f];
}

}  // namespace

const char* state_name(State s) {
    switch (s) {
        case State::Psi0Minus: return "psi0_m";
        case State::Psi1Minus: return "psi1_m";
        case State::Psi2Minus: return "psi2_m";
        case State::Psi1Plus: return "psi1_p";
        case State::Psi2Plus: return "psi2_p";
    }
    return "?";
}

std::array<double, 3> ConstructedSystem::energy_levels() const {
    const auto& e = energies();
    return {0.0, e.eps0, e.eps0 + e.eps1};
}

double ConstructedSystem::energy(State s) const {
    const auto lv = energy_levels();
    switch (s) {
        case State::Psi0Minus: return lv[0];
        case State::Psi1Minus:
        case State::Psi1Plus: return lv[1];
        default: return lv[2];
    }
}

ConstructedSystem ConstructedSystem::build(GeneratingFunction g, const BuildOptions& o) {
    ConstructedSystem sys(std::move(g));
    sys.h_ = o.window_fraction * sys.period();
    sys.quad_tol_ = o.quadrature_tolerance;
    sys.branch_ = build_branch_map(sys.g_);
    sys.locate_special_points();
    sys.compute_residues(o);
    sys.choose_radii(o);
    sys.check_seams(o);
    return sys;
}

void ConstructedSystem::locate_special_points() {
    const double L = period();
    const auto& eps = energies();
    std::vector<SpecialPoint> raw;
    auto add = [&](double x, unsigned kind) { raw.push_back({g_.reduce(x), kind}); };
    for (const auto& z : locate_zeros(g_)) add(z.x, SpecialPoint::UZero);
    for (double x : level_points(g_, 2.0 * eps.eps1)) add(x, SpecialPoint::B0);
    for (double x : level_points(g_, -2.0 * eps.eps0)) add(x, SpecialPoint::C0);
    for (double x : branch_.breakpoints) add(x, SpecialPoint::SZero);
    add(midpoint(), SpecialPoint::Midpoint | SpecialPoint::SZero);
    add(0.0, SpecialPoint::Boundary | SpecialPoint::SZero);

    std::sort(raw.begin(), raw.end(), [](const SpecialPoint& a, const SpecialPoint& b) { return a.x < b.x; });
    special_.clear();
    for (const auto& p : raw) {
        bool merged = false;
        for (auto& q : special_) {
            if (std::abs(scan::circular_offset(q.x, p.x, L)) <= kSnap * L) {
                // Structural points keep their exact coordinates.
                if (p.kinds & (SpecialPoint::Midpoint | SpecialPoint::Boundary)) q.x = p.x;
                q.kinds |= p.kinds;
                merged = true;
                break;
            }
        }
        if (!merged) special_.push_back(p);
    }
    std::sort(special_.begin(), special_.end(),
              [](const SpecialPoint& a, const SpecialPoint& b) { return a.x < b.x; });
}

void ConstructedSystem::compute_residues(const BuildOptions& o) {
    const double L = period();
    poles_.clear();
    for (std::size_t i = 0; i < special_.size(); ++i) {
        const double p = special_[i].x;
        double gap = L;
        for (std::size_t j = 0; j < special_.size(); ++j)
            if (j != i) gap = std::min(gap, std::abs(scan::circular_offset(p, special_[j].x, L)));
        const double r = std::min(h_, 0.45 * gap);
        const double a = p - r;
        const double b = p + r;
        const LocalJets la = local_jets(g_, a, sign_at(a));
        const LocalJets lb = local_jets(g_, b, sign_at(b));
        const Jet ya = Jet::variable(a) - p;
        const Jet yb = Jet::variable(b) - p;
        const std::array<const Jet*, 5> fa = {&la.wp, &la.wt, &la.w0, &la.w1, &la.w2};
        const std::array<const Jet*, 5> fb = {&lb.wp, &lb.wt, &lb.w0, &lb.w1, &lb.w2};
        Pole pole;
        pole.x = p;
        bool any = false;
        for (int f = 0; f < 5; ++f) {
            const HermitePatch patch(ya * *fa[f], yb * *fb[f], kDepth[f]);
            const double v = patch.value(p);
            const double n = std::round(v);
            if (!std::isfinite(v) || std::abs(v - n) > o.residue_tolerance * std::max(1.0, std::abs(v))) {
                throw UnremovablePole(std::string(fn_name(f)) + " has a non-integer residue " + std::to_string(v), p);
            }
            pole.residue[static_cast<std::size_t>(f)] = static_cast<int>(n);
            any = any || n != 0.0;
        }
        const int r0 = pole.residue[2];
        if (r0 != 0 && r0 != -1) {
            throw UnremovablePole("W0 pole with residue " + std::to_string(r0) + " makes V- singular", p);
        }
        if (any) poles_.push_back(pole);
    }
    residue_sum_ = {0, 0, 0};
    for (const auto& p : poles_)
        for (int i = 0; i < 3; ++i) residue_sum_[static_cast<std::size_t>(i)] += p.residue[static_cast<std::size_t>(2 + i)];
}

Jet ConstructedSystem::pole_terms(int f, double x) const {
    Jet acc = Jet::constant(x, 0.0);
    for (const auto& p : poles_) {
        const int r = p.residue[static_cast<std::size_t>(f)];
        if (r != 0) acc += static_cast<double>(r) * kappa(x, p.x, period());
    }
    return acc;
}

double ConstructedSystem::pole_value(int f, double x) const {
    const double k = std::numbers::pi / period();
    double acc = 0.0;
    for (const auto& p : poles_) {
        const int r = p.residue[static_cast<std::size_t>(f)];
        if (r == 0) continue;
        const double sn = std::sin(k * (x - p.x));
        if (sn == 0.0 || std::abs(x - p.x) < 1e-300) return std::numeric_limits<double>::quiet_NaN();
        acc += r * k * std::cos(k * (x - p.x)) / sn;
    }
    return acc;
}

Jet ConstructedSystem::psi_factor(int i, double x) const {
    const double L = period();
    Jet acc = Jet::constant(x, 1.0);
    for (const auto& p : poles_) {
        const int r = p.residue[static_cast<std::size_t>(2 + i)];
        if (r == 0) continue;
        const double sm = std::sin(std::numbers::pi * (midpoint() - p.x) / L);
        const double norm = std::abs(sm) > 1e-12 ? sm : std::numbers::pi / L;
        const Jet s = std::abs(sm) > 1e-12 ? sine_jet(x, p.x, L) / norm : sine_jet(x, p.x, L) * (L / std::numbers::pi);
        acc *= pow(s, -r);
    }
    return acc;
}

ConstructedSystem::Direct ConstructedSystem::direct(double x) const {
    Direct d;
    d.l = local_jets(g_, x, sign_at(x));
    const std::array<const Jet*, 5> w = {&d.l.wp, &d.l.wt, &d.l.w0, &d.l.w1, &d.l.w2};
    for (int f = 0; f < 5; ++f) d.reg[static_cast<std::size_t>(f)] = *w[static_cast<std::size_t>(f)] - pole_terms(f, x);
    return d;
}

void ConstructedSystem::build_windows() {
    const double L = period();
    windows_.clear();
    for (std::size_t i = 0; i < special_.size(); ++i) {
        const double x = special_[i].x;
        const double r = radius_[i];
        if (!windows_.empty() && windows_.back().hi >= x - r) {
            windows_.back().hi = std::max(windows_.back().hi, x + r);
        } else {
            Window w;
            w.lo = x - r;
            w.hi = x + r;
            windows_.push_back(std::move(w));
        }
        windows_.back().points.push_back(x);
        windows_.back().radii.push_back(r);
    }
    if (windows_.size() > 1 && windows_.back().hi - L >= windows_.front().lo) {
        Window& f = windows_.front();
        Window& b = windows_.back();
        f.lo = std::min(f.lo, b.lo - L);
        f.hi = std::max(f.hi, b.hi - L);
        std::vector<double> pts;
        for (double x : b.points) pts.push_back(x - L);
        pts.insert(pts.end(), f.points.begin(), f.points.end());
        std::vector<double> rad = b.radii;
        rad.insert(rad.end(), f.radii.begin(), f.radii.end());
        f.points = std::move(pts);
        f.radii = std::move(rad);
        windows_.pop_back();
    }
    for (auto& w : windows_) build_window_patches(w);
}

void ConstructedSystem::build_window_patches(Window& w) const {
    const double L = period();
    for (const auto& p : poles_) {
        for (double q : w.points)
            if (std::abs(scan::circular_offset(q, p.x, L)) <= kSnap * L && p.residue[2] == -1) w.vplus_singular = true;
    }
    const Direct a = direct(w.lo);
    const Direct b = direct(w.hi);
    for (std::size_t f = 0; f < 5; ++f) {
        w.patch[f] = HermitePatch(a.reg[f], b.reg[f], kDepth[f]);
        w.ready[f] = true;
    }
    // Where W0 is regular both potentials follow from its patch, which keeps V+ - V- = W0' exact.
    if (w.vplus_singular) w.patch[VM] = HermitePatch(a.l.vm, b.l.vm, kDepth[VM]);
    w.ready[VM] = true;
    w.ready[VP] = !w.vplus_singular;
}

Jet ConstructedSystem::window_potential(const Window& w, int f, double local) const {
    if (!w.vplus_singular) {
        const Jet w0 = w.patch[WR0].jet(local) + pole_terms(2, local);
        const Jet d = w0.differentiated();
        return f == VM ? 0.5 * (w0 * w0 - d) : 0.5 * (w0 * w0 + d);
    }
    if (f == VP) throw VplusPole("V+ is singular on this branch near a c0 point", g_.reduce(local));
    return w.patch[VM].jet(local);
}

void ConstructedSystem::choose_radii(const BuildOptions& o) {
    const double L = period();
    const std::size_t n = special_.size();
    std::vector<double> cap(n, L / 16.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) cap[i] = std::min(cap[i], 0.45 * std::abs(scan::circular_offset(special_[i].x, special_[j].x, L)));

    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<double> chosen(n, h_);
    for (int k = 0; k <= o.max_window_doublings; ++k) {
        radius_.resize(n);
        for (std::size_t i = 0; i < n; ++i) radius_[i] = std::min(h_ * std::ldexp(1.0, k), std::max(cap[i], h_));
        double ratio_all = 0.0;
        std::vector<double> ratio(n, std::numeric_limits<double>::infinity());
        try {
            build_windows();
            build_integral_table(o);
            build_psi_patches();
            for (const auto& w : windows_) {
                const double r = seam_ratio(w, true, o.seam_tolerance, nullptr, nullptr);
                ratio_all = std::max(ratio_all, r);
                for (double q : w.points) {
                    for (std::size_t i = 0; i < n; ++i)
                        if (std::abs(scan::circular_offset(q, special_[i].x, L)) <= kSnap * L) ratio[i] = r;
                }
            }
        } catch (const LocatedError&) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            // Insist on a clear improvement before trading locality for it.
            if (ratio[i] < 0.5 * best[i]) {
                best[i] = ratio[i];
                chosen[i] = radius_[i];
            }
        }
        if (ratio_all < 1e-3) break;
    }
    radius_ = chosen;
    build_windows();
    build_integral_table(o);
    build_psi_patches();
}

double ConstructedSystem::seam_ratio(const Window& w, bool with_psi, double tol, int* worst_fn, double* worst_x) const {
    const double L = period();
    const double probes[2] = {w.lo + 0.5 * w.radii.front(), w.hi - 0.5 * w.radii.back()};
    const double edges[2] = {w.lo, w.hi};
    double worst = 0.0;
    for (int side = 0; side < 2; ++side) {
        const double x = probes[side];
        const Direct d = direct(x);
        std::array<double, FnCount> ref{};
        for (std::size_t f = 0; f < 5; ++f) ref[f] = d.reg[f][0];
        ref[VM] = d.l.vm[0];
        ref[VP] = d.l.vp[0];
        int last = VP;
        if (with_psi) {
            last = FnCount - 1;
            const double edge = edges[side];
            const double er = g_.reduce(edge);
            const int n = static_cast<int>(std::lround((edge - er) / L));
            const double xr = er + (x - edge);
            auto integral = anchored_integral(er);
            const auto seg = direct_segment(er, xr);
            for (std::size_t i = 0; i < 3; ++i) integral[i] += seg[i];
            const auto ps = direct_psi(xr, direct(xr), integral);
            const auto ext = extension(n);
            for (std::size_t s = 0; s < 5; ++s) ref[PS0 + s] = ps[s][0] * ext[s];
        }
        for (int f = 0; f <= last; ++f) {
            const auto fi = static_cast<std::size_t>(f);
            if (!w.ready[fi]) continue;
            const double v = (f == VM || f == VP) ? window_potential(w, f, x)[0] : w.patch[fi].value(x);
            const double r = ref[fi];
            double ratio = std::abs(v - r) / (tol * std::max(1.0, std::abs(r)));
            if (!std::isfinite(ratio)) ratio = std::numeric_limits<double>::infinity();
            if (ratio > worst || (worst_fn != nullptr && *worst_fn < 0)) {
                worst = std::max(worst, ratio);
                if (worst_fn != nullptr && ratio >= worst) *worst_fn = f;
                if (worst_x != nullptr && ratio >= worst) *worst_x = x;
            }
        }
    }
    return worst;
}

const ConstructedSystem::Window* ConstructedSystem::window_for(double x, double& local) const {
    const double L = period();
    const double xr = g_.reduce(x);
    for (const auto& w : windows_) {
        for (double c : {xr, xr - L, xr + L}) {
            if (c >= w.lo && c <= w.hi) {
                local = c;
                return &w;
            }
        }
    }
    return nullptr;
}

bool ConstructedSystem::in_window(double x) const {
    double local = 0.0;
    return window_for(x, local) != nullptr;
}

std::array<double, 3> ConstructedSystem::direct_segment(double a, double b) const {
    auto f = [this](double x) {
        const Direct d = direct(x);
        return quad::Vec<3>{d.reg[2][0], d.reg[3][0], d.reg[4][0]};
    };
    return quad::integrate<3>(f, a, b, quad_tol_);
}

std::array<double, 3> ConstructedSystem::window_segment(const Window& w, double a, double b) const {
    const double L = period();
    double shift = 0.0;
    const double mid = 0.5 * (a + b);
    for (double s : {0.0, -L, L})
        if (mid + s >= w.lo && mid + s <= w.hi) shift = s;
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = w.patch[static_cast<std::size_t>(WR0 + i)].integral(a + shift, b + shift);
    return out;
}

void ConstructedSystem::build_integral_table(const BuildOptions& o) {
    const double L = period();
    std::vector<double> k;
    for (int i = 0; i <= o.knots_per_period; ++i) k.push_back(L * i / o.knots_per_period);
    for (const auto& w : windows_) {
        for (double e : {w.lo, w.hi}) {
            double r = e;
            if (r < 0.0) r += L;
            if (r > L) r -= L;
            k.push_back(r);
        }
    }
    k.push_back(midpoint());
    std::sort(k.begin(), k.end());
    knots_.clear();
    for (double x : k)
        if (knots_.empty() || x - knots_.back() > 1e-13 * L) knots_.push_back(x);
    knots_.back() = L;

    table_.assign(knots_.size(), {0.0, 0.0, 0.0});
    knot_window_.assign(knots_.size(), -1);
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        double local = 0.0;
        const Window* w = window_for(0.5 * (knots_[i] + knots_[i + 1]), local);
        knot_window_[i] = w ? static_cast<int>(w - windows_.data()) : -1;
        const auto seg = w ? window_segment(*w, knots_[i], knots_[i + 1]) : direct_segment(knots_[i], knots_[i + 1]);
        for (int c = 0; c < 3; ++c) table_[i + 1][static_cast<std::size_t>(c)] = table_[i][static_cast<std::size_t>(c)] + seg[static_cast<std::size_t>(c)];
    }
    period_integral_ = table_.back();
    anchor_ = cumulative(midpoint());
}

std::array<double, 3> ConstructedSystem::cumulative(double xr) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), xr);
    std::size_t k = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (k + 1 >= knots_.size()) k = knots_.size() - 2;
    if (xr == knots_[k]) return table_[k];
    const int wi = knot_window_[k];
    const auto seg = wi >= 0 ? window_segment(windows_[static_cast<std::size_t>(wi)], knots_[k], xr) : direct_segment(knots_[k], xr);
    std::array<double, 3> out = table_[k];
    for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(c)] += seg[static_cast<std::size_t>(c)];
    return out;
}

std::array<double, 3> ConstructedSystem::anchored_integral(double xr) const {
    auto c = cumulative(xr);
    for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] -= anchor_[static_cast<std::size_t>(i)];
    return c;
}

std::array<double, 5> ConstructedSystem::extension(int n) const {
    std::array<double, 3> f{};
    for (int i = 0; i < 3; ++i) {
        const double sign = ((n * residue_sum_[static_cast<std::size_t>(i)]) % 2 == 0) ? 1.0 : -1.0;
        f[static_cast<std::size_t>(i)] = sign * std::exp(-n * period_integral_[static_cast<std::size_t>(i)]);
    }
    return {f[0], f[1], f[2], f[1], f[2]};
}

std::array<Jet, 5> ConstructedSystem::direct_psi(double x, const Direct& d, const std::array<double, 3>& integral) const {
    std::array<Jet, 3> e;
    for (int i = 0; i < 3; ++i) {
        const Jet I = d.reg[static_cast<std::size_t>(2 + i)].integrated(integral[static_cast<std::size_t>(i)]);
        e[static_cast<std::size_t>(i)] = exp(-I) * psi_factor(i, x);
    }
    std::array<Jet, 5> out;
    out[0] = e[0];
    out[1] = d.l.wp * e[1];
    out[2] = d.l.p2 * e[2];
    const double r2 = std::numbers::sqrt2;
    out[3] = (out[1].differentiated() + d.l.w0 * out[1]) / r2;
    out[4] = (out[2].differentiated() + d.l.w0 * out[2]) / r2;
    return out;
}

void ConstructedSystem::build_psi_patches() {
    const double L = period();
    for (auto& w : windows_) {
        std::array<std::array<Jet, 5>, 2> edge;
        const double ends[2] = {w.lo, w.hi};
        for (int e = 0; e < 2; ++e) {
            const double x = ends[e];
            const double xr = g_.reduce(x);
            const int n = static_cast<int>(std::lround((x - xr) / L));
            const auto ps = direct_psi(xr, direct(xr), anchored_integral(xr));
            const auto ext = extension(n);
            for (int s = 0; s < 5; ++s) edge[static_cast<std::size_t>(e)][static_cast<std::size_t>(s)] = rebased(ps[static_cast<std::size_t>(s)] * ext[static_cast<std::size_t>(s)], x);
        }
        for (int s = 0; s < 5; ++s) {
            w.patch[static_cast<std::size_t>(PS0 + s)] = HermitePatch(edge[0][static_cast<std::size_t>(s)], edge[1][static_cast<std::size_t>(s)], kDepth[static_cast<std::size_t>(PS0 + s)]);
            w.ready[static_cast<std::size_t>(PS0 + s)] = true;
        }
    }
}

void ConstructedSystem::check_seams(const BuildOptions& o) const {
    for (const auto& w : windows_) {
        int fn = -1;
        double x = 0.0;
        const double r = seam_ratio(w, true, o.seam_tolerance, &fn, &x);
        if (r > 1.0) {
            throw PatchFailure(std::string("patch seam mismatch for ") + fn_name(fn) + " (" + std::to_string(r) +
                                   " times the tolerance)",
                               g_.reduce(x));
        }
    }
}

Jet ConstructedSystem::function_jet(int f, double x) const {
    const double L = period();
    double local = 0.0;
    const Window* w = window_for(x, local);
    if (w != nullptr) {
        if (f == VM || f == VP) return rebased(window_potential(*w, f, local), x);
        Jet j = w->patch[static_cast<std::size_t>(f)].jet(local);
        if (f >= PS0) {
            const int n = static_cast<int>(std::lround((x - local) / L));
            j *= extension(n)[static_cast<std::size_t>(f - PS0)];
        }
        return rebased(j, x);
    }
    const double xr = g_.reduce(x);
    const Direct d = direct(xr);
    switch (f) {
        case WP:
        case WT:
        case WR0:
        case WR1:
        case WR2: return rebased(d.reg[static_cast<std::size_t>(f)], x);
        case VM: return rebased(d.l.vm, x);
        case VP: return rebased(d.l.vp, x);
        default: break;
    }
    const int n = static_cast<int>(std::lround((x - xr) / L));
    const auto ps = direct_psi(xr, d, anchored_integral(xr));
    return rebased(ps[static_cast<std::size_t>(f - PS0)] * extension(n)[static_cast<std::size_t>(f - PS0)], x);
}

Jet ConstructedSystem::w_plus(double x) const { return function_jet(WP, x) + pole_terms(0, x); }

Jet ConstructedSystem::w_plus_tilde(double x) const { return function_jet(WT, x) + pole_terms(1, x); }

std::array<Jet, 3> ConstructedSystem::superpotential_jets(double x) const {
    return {function_jet(WR0, x) + pole_terms(2, x), function_jet(WR1, x) + pole_terms(3, x),
            function_jet(WR2, x) + pole_terms(4, x)};
}

std::array<double, 3> ConstructedSystem::superpotentials(double x) const {
    const auto j = superpotential_jets(x);
    return {j[0][0], j[1][0], j[2][0]};
}

Jet ConstructedSystem::v_minus_jet(double x) const { return function_jet(VM, x); }

Jet ConstructedSystem::v_plus_jet(double x) const { return function_jet(VP, x); }

Jet ConstructedSystem::psi_jet(State s, double x) const { return function_jet(PS0 + static_cast<int>(s), x); }

std::array<double, 3> ConstructedSystem::wavefunctions_minus(double x, const std::array<double, 3>& c) const {
    const auto v = sample(x);
    return {c[0] * v.psi[0], c[1] * v.psi[1], c[2] * v.psi[2]};
}

std::array<double, 2> ConstructedSystem::wavefunctions_plus(double x, const std::array<double, 2>& c) const {
    const auto v = sample(x);
    return {c[0] * v.psi[3], c[1] * v.psi[4]};
}

double ConstructedSystem::integrate_superpotential(int i, double a, double b) const {
    if (i < 0 || i > 2) throw InvalidArgument("superpotential index must be 0, 1 or 2");
    if (a == b) return 0.0;
    const double L = period();
    auto extended = [&](double x) {
        const double xr = g_.reduce(x);
        const double n = std::round((x - xr) / L);
        return cumulative(xr)[static_cast<std::size_t>(i)] + n * period_integral_[static_cast<std::size_t>(i)];
    };
    double v = extended(b) - extended(a);
    for (const auto& p : poles_) {
        const int r = p.residue[static_cast<std::size_t>(2 + i)];
        if (r == 0) continue;
        const double sa = std::abs(std::sin(std::numbers::pi * (a - p.x) / L));
        const double sb = std::abs(std::sin(std::numbers::pi * (b - p.x) / L));
        v += r * (std::log(sb) - std::log(sa));
    }
    return v;
}

PointValues ConstructedSystem::sample(double x) const {
    const double L = period();
    PointValues out;
    out.x = x;
    double local = 0.0;
    const Window* w = window_for(x, local);
    if (w != nullptr) {
        for (int i = 0; i < 3; ++i)
            out.w[static_cast<std::size_t>(i)] = w->patch[static_cast<std::size_t>(WR0 + i)].value(local) + pole_value(2 + i, local);
        out.v_minus = window_potential(*w, VM, local)[0];
        out.v_plus = w->ready[VP] ? window_potential(*w, VP, local)[0] : std::numeric_limits<double>::quiet_NaN();
        const auto ext = extension(static_cast<int>(std::lround((x - local) / L)));
        for (int s = 0; s < 5; ++s) out.psi[static_cast<std::size_t>(s)] = w->patch[static_cast<std::size_t>(PS0 + s)].value(local) * ext[static_cast<std::size_t>(s)];
        return out;
    }
    const double xr = g_.reduce(x);
    const Direct d = direct(xr);
    out.w = {d.l.w0[0], d.l.w1[0], d.l.w2[0]};
    out.v_minus = d.l.vm[0];
    out.v_plus = d.l.vp[0];
    const auto ps = direct_psi(xr, d, anchored_integral(xr));
    const auto ext = extension(static_cast<int>(std::lround((x - xr) / L)));
    for (int s = 0; s < 5; ++s) out.psi[static_cast<std::size_t>(s)] = ps[static_cast<std::size_t>(s)][0] * ext[static_cast<std::size_t>(s)];
    return out;
}

}  // namespace qes
