#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/hermite.hpp"
#include "qes/quadrature.hpp"

namespace quad = qes::quad;

TEST_SUITE("quadrature") {
    TEST_CASE("single panel integrates polynomials of degree 22 exactly") {
        auto f = [](double x) { return quad::Vec<2>{std::pow(x, 22), 3.0 * x * x}; };
        const auto e = quad::gk15<2>(f, 0.0, 1.0);
        CHECK(e.value[0] == doctest::Approx(1.0 / 23.0).epsilon(1e-14));
        CHECK(e.value[1] == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("adaptive integration of smooth and peaked integrands") {
        CHECK(quad::integrate_scalar([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
              doctest::Approx(2.0).epsilon(1e-12));
        const double peak = quad::integrate_scalar([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
        CHECK(peak == doctest::Approx(2.0 * 100.0 * std::atan(100.0)).epsilon(1e-11));
        CHECK(quad::integrate_scalar([](double x) { return std::exp(x); }, 1.0, 0.0) ==
              doctest::Approx(1.0 - std::exp(1.0)).epsilon(1e-12));
        CHECK(quad::integrate_scalar([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    }

    TEST_CASE("vector integrands share panels") {
        auto f = [](double x) { return quad::Vec<3>{std::cos(x), x, std::exp(-x * x)}; };
        const auto v = quad::integrate<3>(f, 0.0, 2.0);
        CHECK(v[0] == doctest::Approx(std::sin(2.0)).epsilon(1e-12));
        CHECK(v[1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(v[2] == doctest::Approx(0.5 * std::sqrt(std::numbers::pi) * std::erf(2.0)).epsilon(1e-12));
    }

    TEST_CASE("non-integrable singularity reports its location") {
        try {
            (void)quad::integrate_scalar([](double x) { return 1.0 / std::abs(x - 0.3); }, 0.0, 1.0, 1e-10, 20);
            FAIL("expected nonconvergence");
        } catch (const qes::QuadratureNonconvergence& e) {
            CHECK(std::abs(e.location() - 0.3) < 0.05);
        }
    }

    TEST_CASE("Gauss-Legendre 8 is exact to degree 15") {
        CHECK(quad::gauss_legendre8([](double x) { return std::pow(x, 15) + std::pow(x, 14); }, -1.0, 1.0) ==
              doctest::Approx(2.0 / 15.0).epsilon(1e-14));
    }
}

TEST_SUITE("hermite") {
    TEST_CASE("reproduces polynomials of degree 2*depth+1") {
        // p(x) = sum x^i / (i+1), degree 11, depth 5.
        auto jet_at = [](double x0) {
            const qes::Jet x = qes::Jet::variable(x0);
            qes::Jet acc = qes::Jet::constant(x0, 0.0);
            for (int i = 11; i >= 0; --i) acc = acc * x + 1.0 / (i + 1);
            return acc;
        };
        auto p = [](double x) {
            double acc = 0.0;
            for (int i = 11; i >= 0; --i) acc = acc * x + 1.0 / (i + 1);
            return acc;
        };
        const qes::HermitePatch h(jet_at(0.2), jet_at(0.9), 5);
        for (double x = 0.2; x <= 0.9; x += 0.05) {
            CHECK(h.value(x) == doctest::Approx(p(x)).epsilon(1e-13));
            const auto j = h.jet(x);
            CHECK(j[0] == doctest::Approx(p(x)).epsilon(1e-13));
            CHECK(j[1] == doctest::Approx(jet_at(x)[1]).epsilon(1e-11));
        }
        // Antiderivative of p is sum x^(i+1)/(i+1)^2.
        auto P = [](double x) {
            double acc = 0.0;
            for (int i = 0; i <= 11; ++i) acc += std::pow(x, i + 1) / ((i + 1) * (i + 1));
            return acc;
        };
        CHECK(h.integral(0.3, 0.8) == doctest::Approx(P(0.8) - P(0.3)).epsilon(1e-13));
    }

    TEST_CASE("matches end jets and approximates smooth functions") {
        const double a = 1.0, b = 1.02;
        const auto ja = exp(sin(qes::Jet::variable(a)));
        const auto jb = exp(sin(qes::Jet::variable(b)));
        const qes::HermitePatch h(ja, jb, 5);
        CHECK(h.value(a) == doctest::Approx(ja[0]).epsilon(1e-15));
        CHECK(h.jet(b)[2] == doctest::Approx(jb[2]).epsilon(1e-9));
        const double mid = 0.5 * (a + b);
        CHECK(std::abs(h.value(mid) - std::exp(std::sin(mid))) < 1e-14);
    }

    TEST_CASE("rejects bad input") {
        const auto j = qes::Jet::variable(0.0);
        CHECK_THROWS_AS(qes::HermitePatch(j, j, 3), qes::InvalidArgument);
        CHECK_THROWS_AS(qes::HermitePatch(j, qes::Jet::variable(1.0), 7), qes::InvalidArgument);
    }
}
