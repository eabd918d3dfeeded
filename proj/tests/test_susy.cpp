#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/local.hpp"
#include "qes/local_constants.hpp"
#include "qes/razavy.hpp"
#include "qes/system.hpp"

using namespace qes;
using std::numbers::pi;

namespace {

GeneratingFunction razavy_generator(double eps0) {
    return GeneratingFunction::parse("4*eps0*eps1*sin(x)^2", EnergyPair(eps0, eps0 - 0.5), 2.0 * pi);
}

const ConstructedSystem& razavy_system() {
    static const ConstructedSystem sys = ConstructedSystem::build(razavy_generator(1.0));
    return sys;
}

bool near_window(const ConstructedSystem& s, double x) {
    for (const auto& p : s.special_points())
        if (std::abs(std::remainder(x - p.x, s.period())) <= s.window_half_width()) return true;
    return false;
}

// Largest deviation of a from c * b over the samples, relative to max |a|, with c fitted.
double fitted_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0.0, bb = 0.0, amax = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        bb += b[i] * b[i];
        amax = std::max(amax, std::abs(a[i]));
    }
    const double c = ab / bb;
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - c * b[i]));
    return dev / amax;
}

}  // namespace

TEST_SUITE("susy") {
    TEST_CASE("stable discriminant at sample points") {
        const auto g = razavy_generator(1.0);
        CHECK(stable_discriminant(g.jet(pi / 2), g.energies())[0] == doctest::Approx(32.0).epsilon(1e-13));
        CHECK(stable_discriminant(g.jet(pi / 4), g.energies())[0] == doctest::Approx(4.0).epsilon(1e-13));
        const auto u = g.jet(0.0);
        CHECK(stable_discriminant(u, g.energies())[0] == doctest::Approx(u[1] * u[1]));
    }

    TEST_CASE("discriminant ratio matches the closed form where U' is nonzero") {
        const auto g = razavy_generator(1.0);
        for (double x : {0.2, 0.7, 1.1, 2.0, 2.9, 4.4}) {
            const auto u = g.jet(x);
            const double r = stable_discriminant(u, g.energies())[0] / (u[1] * u[1]);
            const double t = std::tan(x);
            const double closed = 2.0 * std::sin(x) * std::sin(x) * t * t;
            CHECK(std::abs(r - closed) <= 1e-10 * std::abs(closed));
        }
    }

    TEST_CASE("W+ and W~+ at sample points") {
        const auto g = razavy_generator(1.0);
        CHECK(w_plus(g, pi / 4, +1)[0] == doctest::Approx(1.5).epsilon(1e-14));
        CHECK(w_plus(g, pi / 2, +1)[0] == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(w_plus_tilde(g, pi / 4, +1)[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        for (double x : {0.3, 1.0, 2.2, 4.0, 5.0}) {
            const int s = x < pi ? 1 : -1;
            CHECK(w_plus(g, x, s)[0] * w_plus_tilde(g, x, s)[0] == doctest::Approx(g(x)).epsilon(1e-12));
        }
    }

    TEST_CASE("negative discriminant is reported") {
        const auto g = GeneratingFunction::parse("4*eps0*eps1*sin(x)^2", EnergyPair(0.4, 0.5), 2.0 * pi);
        CHECK_THROWS_AS(local_jets(g, 0.3, 1), NegativeDiscriminant);
    }

    TEST_CASE("branch map of razavy") {
        const auto& s = razavy_system();
        const auto& b = s.branch_map();
        REQUIRE(b.breakpoints.size() == 1);
        CHECK(b.breakpoints[0] == doctest::Approx(pi));
        CHECK(b.sign_at(1.0) == 1);
        CHECK(b.sign_at(4.0) == -1);
        CHECK(b.sign_at(-1.0) == -1);
    }

    TEST_CASE("W+ is linear through the double zeros") {
        const auto& s = razavy_system();
        for (double x0 : {0.0, pi}) {
            const Jet wp = s.w_plus(x0);
            const Jet wt = s.w_plus_tilde(x0);
            CHECK(std::abs(wp[0]) < 1e-9);
            CHECK(wp[1] == doctest::Approx(2.0).epsilon(1e-7));
            CHECK(std::abs(wt[0]) < 1e-9);
            CHECK(wt[1] == doctest::Approx(1.0).epsilon(1e-7));
        }
    }

    TEST_CASE("razavy poles and residues") {
        const auto& s = razavy_system();
        REQUIRE(s.poles().size() == 2);
        for (const auto& p : s.poles()) {
            const bool known = std::abs(p.x - 3 * pi / 4) < 1e-9 || std::abs(p.x - 5 * pi / 4) < 1e-9;
            CHECK(known);
            CHECK(p.residue[0] == -1);
            CHECK(p.residue[2] == 0);
            CHECK(p.residue[3] == -1);
            CHECK(p.residue[4] == 1);
        }
        CHECK(std::isfinite(s.v_minus(3 * pi / 4)));
        CHECK(std::isfinite(s.psi(State::Psi1Minus, 3 * pi / 4)));
    }

    TEST_CASE("potential values") {
        const auto& s = razavy_system();
        CHECK(s.v_minus(0.0) == doctest::Approx(-0.560660).epsilon(1e-6));
        CHECK(s.v_minus(pi / 2) == doctest::Approx(0.75).epsilon(1e-10));
        CHECK(s.v_minus(pi) == doctest::Approx(1.560660).epsilon(1e-6));
        for (int i = 0; i < 256; ++i) {
            const double x = 2 * pi * (i + 0.3) / 256;
            const auto w = s.superpotential_jets(x);
            CHECK(std::abs(s.v_plus(x) - s.v_minus(x) - w[0][1]) <= 1e-10);
        }
    }

    TEST_CASE("wavefunction values") {
        const auto& s = razavy_system();
        CHECK(s.psi(State::Psi0Minus, pi) == doctest::Approx(1.0).epsilon(1e-12));
        const double r = s.psi(State::Psi1Minus, pi / 2) / razavy::Reference(1.0).psi_minus(pi / 2, 1);
        CHECK(s.psi(State::Psi1Minus, pi / 2) / r == doctest::Approx(2.028115).epsilon(1e-6));
        CHECK(std::abs(s.psi(State::Psi1Minus, 0.0)) < 1e-8);
        CHECK(std::abs(s.psi(State::Psi1Minus, pi)) < 1e-8);
        for (int i = 0; i < 100; ++i) CHECK(s.psi(State::Psi0Minus, 4 * pi * i / 100.0) > 0.0);
    }

    TEST_CASE("pipeline agrees with the closed form") {
        for (double eps0 : {0.75, 1.0, 2.0}) {
            CAPTURE(eps0);
            const auto sys = ConstructedSystem::build(razavy_generator(eps0));
            const razavy::Reference ref(eps0);
            std::vector<std::vector<double>> a(5), b(5);
            double dv = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const double x = 2 * pi * (i + 0.5) / 1000;
                if (near_window(sys, x)) continue;
                const auto v = sys.sample(x);
                dv = std::max(dv, std::abs(v.v_minus - ref.v_minus(x)));
                for (int k = 0; k < 3; ++k) {
                    a[k].push_back(ref.psi_minus(x, k));
                    b[k].push_back(v.psi[k]);
                }
                for (int k = 1; k <= 2; ++k) {
                    a[2 + k].push_back(ref.psi_plus(x, k));
                    b[2 + k].push_back(v.psi[2 + k]);
                }
            }
            CHECK(dv <= 1e-8);
            for (int k = 0; k < 5; ++k) {
                CAPTURE(k);
                CHECK(fitted_deviation(a[k], b[k]) <= 1e-7);
            }
        }
    }

    TEST_CASE("riccati chain away from patch windows") {
        const auto& s = razavy_system();
        const double e0 = s.energies().eps0, e1 = s.energies().eps1;
        double l1 = 0.0, l2 = 0.0;
        for (int i = 0; i < 1024; ++i) {
            const double x = 2 * pi * i / 1024;
            if (near_window(s, x)) continue;
            const auto w = s.superpotential_jets(x);
            l1 = std::max(l1, std::abs(w[0][0] * w[0][0] + w[0][1] - (w[1][0] * w[1][0] - w[1][1] + 2 * e0)));
            l2 = std::max(l2, std::abs(w[1][0] * w[1][0] + w[1][1] - (w[2][0] * w[2][0] - w[2][1] + 2 * e1)));
        }
        CHECK(l1 <= 1e-9);
        CHECK(l2 <= 1e-9);
    }

    TEST_CASE("superpotentials are odd about the midpoint and integrate to zero") {
        const auto& s = razavy_system();
        const double xm = s.midpoint();
        for (int i = 1; i < 64; ++i) {
            const double t = xm * i / 64.0 + 1e-3;
            const auto a = s.superpotentials(xm + t);
            const auto b = s.superpotentials(xm - t);
            for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] + b[k]) <= 1e-8);
        }
        const auto I = s.period_integrals();
        for (double v : I) CHECK(std::abs(v) <= 1e-8);
        for (int k = 0; k < 3; ++k) CHECK(s.integrate_superpotential(k, 0.0, 2 * pi) == doctest::Approx(I[k]).epsilon(1e-12));
        CHECK(s.integrate_superpotential(1, 1.3, 1.3) == 0.0);
    }

    TEST_CASE("integral of W1 inverts the first excited state") {
        const auto& s = razavy_system();
        for (double x : {0.4, 1.2, 2.0, 3.6, 5.0}) {
            const double lhs = s.integrate_superpotential(1, pi, x);
            const double rhs = -std::log(std::abs(s.psi(State::Psi1Minus, x) / s.w_plus(x)[0]));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }

    TEST_CASE("schrodinger residuals") {
        const auto& s = razavy_system();
        for (State st : kAllStates) {
            CAPTURE(state_name(st));
            const bool plus = st == State::Psi1Plus || st == State::Psi2Plus;
            double res = 0.0, amp = 0.0;
            for (int i = 0; i < 512; ++i) {
                const double x = 4 * pi * (i + 0.25) / 512;
                const Jet p = s.psi_jet(st, x);
                const double v = plus ? s.v_plus(x) : s.v_minus(x);
                res = std::max(res, std::abs(-p[2] + v * p[0] - s.energy(st) * p[0]));
                amp = std::max(amp, std::abs(p[0]));
            }
            CHECK(res <= 1e-6 * amp);
        }
    }

    TEST_CASE("partner states map back under the adjoint operator") {
        const auto& s = razavy_system();
        for (int n = 1; n <= 2; ++n) {
            const State minus = n == 1 ? State::Psi1Minus : State::Psi2Minus;
            const State plus = n == 1 ? State::Psi1Plus : State::Psi2Plus;
            std::vector<double> a, b;
            for (int i = 0; i < 100; ++i) {
                const double x = 0.05 + 2 * pi * i / 100;
                const double pm = s.psi(minus, x);
                if (std::abs(pm) < 0.05) continue;
                const Jet pp = s.psi_jet(plus, x);
                const double w0 = s.superpotentials(x)[0];
                a.push_back((-pp[1] + w0 * pp[0]) / std::sqrt(2.0));
                b.push_back(pm);
            }
            std::vector<double> ratios;
            for (std::size_t i = 0; i < a.size(); ++i) ratios.push_back(a[i] / b[i]);
            const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
            CHECK(*hi - *lo <= 1e-7 * std::abs(*hi));
            CHECK(*lo == doctest::Approx(s.energy(minus)).epsilon(1e-7));
        }
    }

    TEST_CASE("periodic extension") {
        const auto& s = razavy_system();
        for (State st : kAllStates)
            for (double x : {0.3, 2.0, 4.1})
                CHECK(s.psi(st, x + 2 * pi) == doctest::Approx(s.psi(st, x)).epsilon(1e-9));
    }

    TEST_CASE("local constants at simple zeros") {
        const char* sources[] = {"0.8*sin(x) + 0.5*sin(x)^2", "-1.3*sin(x-0.4) + 0.2*sin(x-0.4)^2 + 0.1*sin(x-0.4)^3"};
        const double roots[] = {0.0, 0.4};
        for (int k = 0; k < 2; ++k) {
            const auto g = GeneratingFunction::parse(sources[k], EnergyPair(1.0, 0.5), 2 * pi);
            const double x0 = roots[k];
            const auto c = first_order_constants(g.jet(x0), g.energies());
            const int su = g.jet(x0)[1] > 0 ? 1 : -1;
            for (int r : {1, -1}) {
                auto fit = [&](int which) {
                    return fit_constant(
                        [&](double x) {
                            const auto l = local_jets(g, x, r * su);
                            const Jet* j[] = {&l.w0, &l.w1, &l.w2, &l.vm, &l.vp};
                            return (*j[which])[0];
                        },
                        x0, 0.01);
                };
                const double expect[] = {r > 0 ? c.a0_plus : c.a0_minus, r > 0 ? c.a1_plus : c.a1_minus,
                                         r > 0 ? c.a2_plus : c.a2_minus,
                                         r > 0 ? c.alpha_minus_plus : c.alpha_minus_minus,
                                         r > 0 ? c.alpha_plus_plus : c.alpha_plus_minus};
                for (int w = 0; w < 5; ++w) CHECK(fit(w) == doctest::Approx(expect[w]).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("constant B at the double zeros") {
        const auto& s = razavy_system();
        for (double x0 : {0.0, pi}) {
            const auto c = second_order_constants(s.generator().jet(x0), s.energies());
            const double w0 = fit_constant([&](double x) { return s.superpotentials(x)[0]; }, x0, 0.01);
            CHECK(std::abs(w0 - c.b) <= 1e-6);
        }
    }
}
