#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qes/errors.hpp"
#include "qes/razavy.hpp"

namespace rz = qes::razavy;
using std::numbers::pi;

namespace {

struct Frozen {
    double x, v_minus, v_plus, w0, psi1_plus, psi2_plus;
};

// Independent high-precision evaluation of the SUSY chain for eps0 = 1.
constexpr Frozen kFrozen[] = {
    {0.3, -0.49145431652720644, 0.60279671893916578, 0.33368008992440551, 2.7960843034702358, 0.43673820076718558},
    {1.0, 0.10394121801325818, 0.94778367991948209, 1.0255363952258059, 1.8966408549618871, 1.1242060414991035},
    {2.5, 1.4392833517034145, 0.51896066023366463, 1.3993727208778507, -0.17654494717077913, 0.98726059719676642},
    {4.0, 1.3364812594140597, 1.0049901542696670, -1.5301867251037459, 0.089800538569933137, -1.1169595377694558},
    {5.5, -0.12721101678344136, 0.81817489699182144, -0.83124237151890909, 2.2324841590377248, -0.97756598653903717},
};

}  // namespace

TEST_SUITE("razavy") {
    TEST_CASE("parameters") {
        const auto p = rz::Params::from_eps0(1.0);
        CHECK(p.eps1 == 0.5);
        CHECK(p.s == doctest::Approx(std::sqrt(0.5)));
        CHECK_THROWS_AS(rz::Params::from_eps0(0.4), qes::InvalidArgument);
        CHECK_NOTHROW(rz::Params::from_eps0(0.5));
    }

    TEST_CASE("V minus closed form") {
        const auto p = rz::Params::from_eps0(1.0);
        CHECK(rz::ref_v_minus(0.0, p) == doctest::Approx(0.5 - 1.5 * std::sqrt(0.5)).epsilon(1e-15));
        CHECK(rz::ref_v_minus(0.0, p) == doctest::Approx(-0.560660).epsilon(1e-6));
        CHECK(rz::ref_v_minus(pi / 2, p) == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(rz::ref_v_minus(pi, p) == doctest::Approx(1.560660).epsilon(1e-6));
        for (double x : {0.1, 0.9, 2.0, 3.0}) {
            CHECK(rz::ref_v_minus(x, p) == doctest::Approx(rz::ref_v_minus(2 * pi - x, p)).epsilon(1e-14));
        }
    }

    TEST_CASE("psi minus closed forms") {
        const auto p = rz::Params::from_eps0(1.0);
        CHECK(rz::ref_psi_minus(pi, p, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(rz::ref_psi_minus(pi, p, 1)) < 1e-15);
        CHECK(rz::ref_psi_minus(pi, p, 2) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rz::ref_psi_minus(pi / 2, p, 1) == doctest::Approx(std::exp(std::sqrt(0.5))).epsilon(1e-15));
        CHECK(rz::ref_psi_minus(pi / 2, p, 1) == doctest::Approx(2.028115).epsilon(1e-6));
        for (int i = 0; i < 200; ++i) CHECK(rz::ref_psi_minus(2 * pi * i / 200.0, p, 0) > 0.0);
        CHECK_THROWS_AS(rz::ref_psi_minus(0.0, p, 3), qes::InvalidArgument);
    }

    TEST_CASE("coefficient tables") {
        const auto p = rz::Params::from_eps0(1.0);
        const auto v = rz::vplus_coefficients(p);
        CHECK(v.a[0] == doctest::Approx(4.0));
        CHECK(v.b[0] == doctest::Approx(4.0));
        const auto t = rz::psi_plus_coefficients(p);
        CHECK(t.k[0] == doctest::Approx(2.0 * std::sqrt(2.0)));
        CHECK(t.n[2] == doctest::Approx(-2.0 * 1.5 * std::sqrt(0.5)));
        CHECK(t.l[3] == doctest::Approx(-1.0));
    }

    TEST_CASE("common roots are removed from the V plus fraction") {
        for (double e0 : {0.75, 1.0, 2.0, 3.0}) {
            const rz::Reference ref(e0);
            CHECK(ref.vplus_fraction().den.size() == 7);
            CHECK(ref.psi1_plus_fraction().den.size() == 4);
            CHECK(ref.psi2_plus_fraction().den.size() == 4);
            // deflated denominators keep one sign on cos x in [-1, 1]
            for (const auto* f : {&ref.vplus_fraction(), &ref.psi1_plus_fraction(), &ref.psi2_plus_fraction()}) {
                double lo = 1e300, hi = -1e300;
                for (int i = 0; i <= 2000; ++i) {
                    const double c = -1.0 + i / 1000.0;
                    double acc = 0.0;
                    for (std::size_t j = f->den.size(); j-- > 0;) acc = acc * c + f->den[j];
                    lo = std::min(lo, acc);
                    hi = std::max(hi, acc);
                }
                CHECK((lo > 0.0 || hi < 0.0));
            }
        }
    }

    TEST_CASE("frozen partner values at eps0 = 1") {
        const rz::Reference ref(1.0);
        double r1 = 0.0, r2 = 0.0;
        for (const auto& f : kFrozen) {
            CHECK(ref.v_minus(f.x) == doctest::Approx(f.v_minus).epsilon(1e-13));
            CHECK(ref.v_plus(f.x) == doctest::Approx(f.v_plus).epsilon(1e-12));
            CHECK(ref.w(f.x, 0) == doctest::Approx(f.w0).epsilon(1e-13));
            const double q1 = ref.psi_plus(f.x, 1) / f.psi1_plus;
            const double q2 = ref.psi_plus(f.x, 2) / f.psi2_plus;
            if (r1 == 0.0) {
                r1 = q1;
                r2 = q2;
            }
            CHECK(q1 == doctest::Approx(r1).epsilon(1e-12));
            CHECK(q2 == doctest::Approx(r2).epsilon(1e-12));
        }
        // V+ - V- equals W0' at every probe
        for (double x : {0.2, 1.7, 3.3, 5.0}) {
            const qes::Jet g = ref.psi_minus_jet(x, 0);
            const qes::Jet w0 = -(g.differentiated() / g);
            CHECK(ref.v_plus(x) - ref.v_minus(x) == doctest::Approx(w0.derivative(1)).epsilon(1e-12));
        }
    }

    TEST_CASE("closed forms satisfy the Schroedinger equation") {
        for (double e0 : {0.75, 1.0, 2.0}) {
            const rz::Reference ref(e0);
            const double e1 = e0 - 0.5;
            for (double x : {0.4, 1.3, 2.2, 3.9, 4.6, 6.0}) {
                const double vm = ref.v_minus(x);
                const double vp = ref.v_plus(x);
                const double em[] = {0.0, e0, e0 + e1};
                for (int i = 0; i < 3; ++i) {
                    const auto j = ref.psi_minus_jet(x, i);
                    const double r = -0.5 * j.derivative(2) + (vm - em[i]) * j[0];
                    CHECK(std::abs(r) <= 1e-11 * std::max(1.0, std::abs(j[0])));
                }
                for (int i = 1; i <= 2; ++i) {
                    const auto j = ref.psi_plus_jet(x, i);
                    const double r = -0.5 * j.derivative(2) + (vp - em[i]) * j[0];
                    CHECK(std::abs(r) <= 1e-10 * std::max(1.0, std::abs(j[0])));
                }
            }
        }
    }

    TEST_CASE("psi2 plus has nodes at 0 and pi") {
        const rz::Reference ref(1.0);
        CHECK(std::abs(ref.psi_plus(0.0, 2)) < 1e-15);
        CHECK(std::abs(ref.psi_plus(pi, 2)) < 1e-14);
        CHECK(std::abs(ref.psi_plus(1.0, 2)) > 0.1);
    }

    TEST_CASE("Turbiner form") {
        const auto fit = rz::turbiner_form_fit(rz::Params::from_eps0(1.0));
        CHECK(fit.a == doctest::Approx(std::sqrt(0.5)));
        CHECK(fit.max_deviation < 1e-10);
        const auto edge = rz::turbiner_form_fit(rz::Params::from_eps0(0.5));
        CHECK(edge.a == 0.0);
        CHECK(edge.max_deviation < 1e-15);
        const auto p = rz::Params::from_eps0(2.0);
        CHECK(rz::ref_v_minus(1.0, p) - rz::turbiner_potential(1.0, p.s) ==
              doctest::Approx(rz::ref_v_minus(1.0 + 2 * pi, p) - rz::turbiner_potential(1.0 + 2 * pi, p.s)));
        CHECK(rz::turbiner_form_fit(p).max_deviation < 1e-10);
    }
}
