#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/generator.hpp"
#include "qes/system.hpp"
#include "qes/validator.hpp"

using namespace qes;
using std::numbers::pi;

namespace {

GeneratingFunction razavy_generator(double eps0) {
    return GeneratingFunction::parse("4*eps0*eps1*sin(x)^2", EnergyPair(eps0, eps0 - 0.5), 2.0 * pi);
}

bool failed(const AdmissibilityReport& r, const std::string& name) {
    const auto* c = r.find(name);
    return c != nullptr && !c->passed;
}

}  // namespace

TEST_SUITE("validator") {
    TEST_CASE("energy pair rejects non-positive spacings") {
        CHECK_THROWS_AS(EnergyPair(0.0, 1.0), InvalidArgument);
        CHECK_THROWS_AS(EnergyPair(1.0, -0.5), InvalidArgument);
        CHECK_NOTHROW(EnergyPair(1.0, 0.5));
    }

    TEST_CASE("razavy zeros are double and sit at 0 and the midpoint") {
        const auto zeros = locate_zeros(razavy_generator(1.0));
        REQUIRE(zeros.size() == 2);
        CHECK(zeros[0].x == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(zeros[1].x == doctest::Approx(pi).epsilon(1e-9));
        for (const auto& z : zeros) CHECK(z.order == 2);
        CHECK(zeros[1].classification == ZeroClass::SecondOrderMidpoint);
        CHECK(zeros[0].classification == ZeroClass::SecondOrder);
    }

    TEST_CASE("zero orders of sin^k(x/2) g(x)") {
        for (int k = 1; k <= 4; ++k) {
            CAPTURE(k);
            const std::string src = "sin(x/2)^" + std::to_string(k) + "*(2 + cos(x))";
            const auto g = GeneratingFunction::parse(src, EnergyPair(1.0, 0.5), 4.0 * pi);
            const auto zeros = locate_zeros(g);
            bool seen_origin = false;
            for (const auto& z : zeros) {
                if (std::abs(z.x) < 1e-6 || std::abs(z.x - 4.0 * pi) < 1e-6) {
                    seen_origin = true;
                    CHECK(z.order == k);
                    if (k >= 3) CHECK(z.classification == ZeroClass::ForbiddenHigherOrder);
                }
            }
            CHECK(seen_origin);
        }
    }

    TEST_CASE("razavy report values") {
        const auto r = check_admissibility(razavy_generator(1.0));
        CHECK(r.passed);
        CHECK(r.failed_checks().empty());
        CHECK(r.curvature == doctest::Approx(4.0).epsilon(1e-8));
        CHECK(r.curvature_target == doctest::Approx(4.0));
        CHECK(std::abs(r.third_derivative) < 1e-8);
        CHECK(r.quartic == doctest::Approx(r.quartic_target).epsilon(1e-8));
        CHECK(r.parity_defect < 1e-12);
        CHECK(r.min_discriminant >= -1e-10);
        CHECK(r.u_min == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.u_max == doctest::Approx(2.0).epsilon(1e-9));
    }

    TEST_CASE("admissible corpus passes and builds") {
        for (const auto& gen : testing::admissible_corpus()) {
            CAPTURE(gen.label);
            const auto ex = Expression::parse(gen.source);
            const auto r = check_admissibility(ex, gen.eps0, gen.eps1, gen.period);
            CHECK(r.passed);
            const GeneratingFunction g(ex, EnergyPair(gen.eps0, gen.eps1), gen.period);
            ConstructedSystem* sys = nullptr;
            CHECK_NOTHROW(sys = new ConstructedSystem(ConstructedSystem::build(g)));
            if (sys == nullptr) continue;
            int bad = 0;
            for (int i = 0; i < 2048; ++i) {
                const auto v = sys->sample(gen.period * i / 2048.0);
                if (!std::isfinite(v.v_minus)) ++bad;
                for (double p : v.psi)
                    if (!std::isfinite(p)) ++bad;
            }
            CHECK(bad == 0);
            delete sys;
        }
    }

    TEST_CASE("inadmissible corpus fails") {
        for (const auto& gen : testing::inadmissible_corpus()) {
            CAPTURE(gen.label);
            const auto r = check_admissibility(Expression::parse(gen.source), gen.eps0, gen.eps1, gen.period);
            CHECK_FALSE(r.passed);
            CHECK_FALSE(r.failed_checks().empty());
        }
    }

    TEST_CASE("specific failures are named") {
        const auto two = [](const char* s, double e0, double e1, double L) {
            return check_admissibility(Expression::parse(s), e0, e1, L);
        };
        CHECK(failed(two("sin(x)", 1, 1, 2 * pi), "midpoint_zero"));
        CHECK(failed(two("sin(x)^3", 1, 1, 2 * pi), "no_higher_order_zeros"));
        CHECK(failed(two("3*sin(x)^2", 1, 1, 2 * pi), "curvature"));
        CHECK(failed(two("2*sin(x)^2 + 0.1*sin(x)^3", 1, 0.5, 2 * pi), "parity"));
        CHECK(failed(two("4*eps0*eps1*sin(x)^2", 0.4, 0.5, 2 * pi), "discriminant"));
        CHECK(failed(two("1", 1, 1, 2 * pi), "midpoint_zero"));
        CHECK(failed(two("sin(x)^2", -1, 1, 2 * pi), "energies_positive"));
        CHECK(failed(two("sin(x)^2", 1, 1, 0), "period_positive"));
    }

    TEST_CASE("negative discriminant is located") {
        const auto r = check_admissibility(Expression::parse("4*eps0*eps1*sin(x)^2"), 0.4, 0.5, 2 * pi);
        const auto* c = r.find("discriminant");
        REQUIRE(c != nullptr);
        CHECK(c->has_location);
        CHECK(r.min_discriminant < 0.0);
    }

    TEST_CASE("V+ regularity mode") {
        const auto v = vplus_regularity_mode(razavy_generator(1.0));
        CHECK(v.mode == VplusRegularity::Mode::BranchSwitchRequired);
        CHECK(v.c0_points.empty());
        REQUIRE(v.b0_points.size() == 4);
        CHECK(v.b0_points[0] == doctest::Approx(pi / 4).epsilon(1e-9));
        CHECK(to_string(v.mode) == "branch_switch_required");
    }

    TEST_CASE("discriminant zeros of razavy") {
        const auto z = discriminant_zeros(razavy_generator(1.0));
        REQUIRE(z.size() == 2);
        CHECK(std::abs(z[0]) < 1e-3);
        CHECK(z[1] == doctest::Approx(pi).epsilon(1e-3));
    }
}
