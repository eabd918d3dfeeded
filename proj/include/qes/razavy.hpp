#pragma once

#include <array>
#include <string>
#include <vector>

#include "qes/jet.hpp"

// Closed-form trigonometric Razavy system: U(x) = 4 eps0 eps1 sin^2 x with
// eps1 = eps0 - 1/2 and period 2 pi.
namespace qes::razavy {

struct Params {
    double eps0 = 1.0;
    double eps1 = 0.5;
    double s = 0.70710678118654752;  // sqrt(eps0 * eps1)

    // Throws InvalidArgument unless eps0 >= 1/2.
    static Params from_eps0(double eps0);
};

// Raw coefficient tables, index i multiplies cos^i x.
struct VplusCoefficients {
    std::array<double, 8> a{};
    std::array<double, 9> b{};
};

struct PsiPlusCoefficients {
    std::array<double, 5> k{};
    std::array<double, 5> l{};
    std::array<double, 4> m{};
    std::array<double, 5> n{};
};

VplusCoefficients vplus_coefficients(const Params& p);
PsiPlusCoefficients psi_plus_coefficients(const Params& p);

// Generator text accepted by the expression parser.
inline const char* generator_source() { return "4*eps0*eps1*sin(x)^2"; }

// Ratio of two cosine polynomials with their common roots removed.
struct RationalCos {
    std::vector<double> num;
    std::vector<double> den;
};

class Reference {
public:
    explicit Reference(double eps0);

    const Params& params() const noexcept { return p_; }
    const VplusCoefficients& vplus_table() const noexcept { return vt_; }
    const PsiPlusCoefficients& psi_plus_table() const noexcept { return pt_; }
    const RationalCos& vplus_fraction() const noexcept { return vplus_; }
    const RationalCos& psi1_plus_fraction() const noexcept { return psi1p_; }
    const RationalCos& psi2_plus_fraction() const noexcept { return psi2p_; }

    double v_minus(double x) const;
    double v_plus(double x) const;
    // which in {0, 1, 2}
    double psi_minus(double x, int which, double c = 1.0) const;
    // which in {1, 2}
    double psi_plus(double x, int which, double c = 1.0) const;

    Jet v_minus_jet(double x) const;
    Jet v_plus_jet(double x) const;
    Jet psi_minus_jet(double x, int which, double c = 1.0) const;
    Jet psi_plus_jet(double x, int which, double c = 1.0) const;

    // Superpotentials recovered from the closed-form eigenfunctions.
    double w(double x, int which) const;

private:
    Params p_;
    VplusCoefficients vt_;
    PsiPlusCoefficients pt_;
    RationalCos vplus_;
    RationalCos psi1p_;
    RationalCos psi2p_;
};

double ref_v_minus(double x, const Params& p);
double ref_v_plus(double x, const Params& p);
double ref_psi_minus(double x, const Params& p, int which);
double ref_psi_plus(double x, const Params& p, int which);

struct TurbinerFit {
    double a = 0.0;
    double max_deviation = 0.0;
};

// V(x) = 1/2 (-a^2 cos^2 x - 3 a cos x), the n = 1, alpha = 1/2 member of the family.
double turbiner_potential(double x, double a);

// a = sqrt(eps0 eps1) and the spread of V_minus - V_Turbiner about its mean on a 1024-point grid.
TurbinerFit turbiner_form_fit(const Params& p);

}  // namespace qes::razavy
