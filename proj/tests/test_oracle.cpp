#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/oracle.hpp"
#include "qes/razavy.hpp"

using namespace qes;
using namespace qes::oracle;
using std::numbers::pi;

namespace {

std::vector<double> sample(const std::function<double(double)>& f, double span, int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = f(span * i / n);
    return s;
}

// Reference edge levels of the closed-form V- at eps0 = 1, computed once at 128 harmonics.
constexpr double kRazavyLevels[] = {0.0, 0.00175336823, 0.94819704994, 1.0, 1.5, 1.82639786796};

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("free particle on the doubled cell") {
        const auto s = band_edge_spectrum([](double) { return 0.0; }, 2 * pi, 32, 5);
        const double expect[] = {0.0, 0.125, 0.125, 0.5, 0.5};
        for (int i = 0; i < 5; ++i) CHECK(s.states[i].energy == doctest::Approx(expect[i]).epsilon(1e-12));
        CHECK(s.states[0].periodicity == Periodicity::Periodic);
        CHECK(s.states[1].periodicity == Periodicity::Antiperiodic);
        CHECK(s.states[3].periodicity == Periodicity::Periodic);
    }

    TEST_CASE("razavy V- edge spectrum") {
        const razavy::Reference ref(1.0);
        const auto s = band_edge_spectrum([&](double x) { return ref.v_minus(x); }, 2 * pi, 64, 6);
        REQUIRE(s.states.size() == 6);
        const int nodes[] = {0, 1, 1, 2, 2, 3};
        const Periodicity per[] = {Periodicity::Periodic, Periodicity::Antiperiodic, Periodicity::Antiperiodic,
                                   Periodicity::Periodic, Periodicity::Periodic, Periodicity::Antiperiodic};
        for (int i = 0; i < 6; ++i) {
            CAPTURE(i);
            CHECK(s.states[i].energy == doctest::Approx(kRazavyLevels[i]).epsilon(1e-10));
            CHECK(s.states[i].nodes == nodes[i]);
            CHECK(s.states[i].periodicity == per[i]);
        }
        CHECK(s.states[3].gap_index == 2);
        CHECK(s.states[4].gap_index == 2);
        CHECK(s.states[0].gap_index == 0);
        CHECK(find_level(s, 1.0, 1e-6) == 3);
        CHECK(find_level(s, 1.2, 1e-6) == -1);
    }

    TEST_CASE("razavy V+ contains the partner levels") {
        const razavy::Reference ref(1.0);
        const auto s = band_edge_spectrum([&](double x) { return ref.v_plus(x); }, 2 * pi, 64, 8);
        for (double e : {1.0, 1.5}) {
            const int k = find_level(s, e, 1e-6);
            REQUIRE(k >= 0);
            CHECK(s.states[k].nodes == 2);
        }
    }

    TEST_CASE("harmonic convergence") {
        const razavy::Reference ref(1.0);
        const auto v = [&](double x) { return ref.v_minus(x); };
        const auto a = band_edge_spectrum(v, 2 * pi, 64, 6);
        const auto b = band_edge_spectrum(v, 2 * pi, 128, 6);
        for (int i = 0; i < 6; ++i) CHECK(std::abs(a.states[i].energy - b.states[i].energy) < 1e-8);
    }

    TEST_CASE("eigenfunction samples are orthonormal") {
        const razavy::Reference ref(1.0);
        const auto s = band_edge_spectrum([&](double x) { return ref.v_minus(x); }, 2 * pi, 48, 6, 512);
        const double dx = 4 * pi / 512;
        for (std::size_t i = 0; i < s.states.size(); ++i) {
            for (std::size_t j = 0; j < s.states.size(); ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < 512; ++k) acc += s.states[i].samples[k] * s.states[j].samples[k] * dx;
                CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-9);
            }
        }
    }

    TEST_CASE("too few harmonics") {
        CHECK_THROWS_AS(band_edge_spectrum([](double) { return 0.0; }, 1.0, 8, 3), InvalidArgument);
    }

    TEST_CASE("node counting") {
        CHECK(count_nodes(sample([](double x) { return std::sin(x); }, 2 * pi, 256)) == 2);
        CHECK(count_nodes(sample([](double x) { return std::exp(std::cos(x)); }, 2 * pi, 256)) == 0);
        CHECK(count_nodes(sample([](double x) { return std::sin(3 * x); }, 2 * pi, 300)) == 6);
        CHECK(count_nodes(sample([](double x) { return std::pow(std::sin(x), 2); }, 2 * pi, 256)) == 0);
        const auto flat = sample([](double x) { return x > 1.0 && x < 2.0 ? 0.0 : std::cos(x) + 2.0; }, 2 * pi, 256);
        CHECK_THROWS_AS(count_nodes(flat), AmbiguousNode);
        const razavy::Reference ref(1.0);
        CHECK(count_nodes(sample([&](double x) { return ref.psi_minus(x, 2); }, 2 * pi, 512)) == 2);
    }

    TEST_CASE("classification") {
        CHECK(classify(sample([](double x) { return std::cos(x); }, 4 * pi, 512)) == Periodicity::Periodic);
        CHECK(classify(sample([](double x) { return std::sin(x / 2); }, 4 * pi, 512)) == Periodicity::Antiperiodic);
        CHECK(classify(sample([](double x) { return std::sin(x / 2) + 1; }, 4 * pi, 512)) == Periodicity::Unclassified);
        CHECK(to_string(Periodicity::Antiperiodic) == "2L");
    }

    TEST_CASE("spectral residual") {
        const auto zero = [](double) { return 0.0; };
        const auto s = sample([](double x) { return std::sin(x / 2); }, 4 * pi, 512);
        CHECK(residual(zero, s, 0.125, 2 * pi) < 1e-10);
        CHECK(residual(zero, s, 0.225, 2 * pi) == doctest::Approx(0.1).epsilon(1e-9));
        CHECK_THROWS_AS(residual(zero, std::vector<double>(500, 1.0), 0.0, 2 * pi), InvalidArgument);
        const razavy::Reference ref(1.0);
        const auto p = sample([&](double x) { return ref.psi_minus(x, 1); }, 4 * pi, 1024);
        CHECK(residual([&](double x) { return ref.v_minus(x); }, p, 1.0, 2 * pi) < 1e-6);
    }
}
