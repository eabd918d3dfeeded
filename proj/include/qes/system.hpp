#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qes/branch.hpp"
#include "qes/generator.hpp"
#include "qes/hermite.hpp"
#include "qes/jet.hpp"
#include "qes/local.hpp"

namespace qes {

enum class State { Psi0Minus = 0, Psi1Minus = 1, Psi2Minus = 2, Psi1Plus = 3, Psi2Plus = 4 };

inline constexpr std::array<State, 5> kAllStates = {State::Psi0Minus, State::Psi1Minus, State::Psi2Minus,
                                                    State::Psi1Plus, State::Psi2Plus};

const char* state_name(State s);

struct SpecialPoint {
    enum Kind : unsigned { UZero = 1, B0 = 2, C0 = 4, SZero = 8, Midpoint = 16, Boundary = 32 };
    double x = 0.0;
    unsigned kinds = 0;
};

// Integer residues of W+, W~+, W0, W1, W2 at one point.
struct Pole {
    double x = 0.0;
    std::array<int, 5> residue{};
};

struct BuildOptions {
    double window_fraction = 1e-3;  // half-width of patch windows relative to L
    double seam_tolerance = 1e-8;
    double residue_tolerance = 1e-6;
    int knots_per_period = 128;
    double quadrature_tolerance = 1e-10;
    // Patches may grow by doubling where the explicit formulas lose accuracy.
    int max_window_doublings = 6;
};

// Every quantity of the construction at one point, with unit normalisation constants.
struct PointValues {
    double x = 0.0;
    double v_minus = 0.0;
    double v_plus = 0.0;
    std::array<double, 3> w{};
    std::array<double, 5> psi{};
};

class ConstructedSystem {
public:
    static ConstructedSystem build(GeneratingFunction g, const BuildOptions& options = {});

    const GeneratingFunction& generator() const noexcept { return g_; }
    const EnergyPair& energies() const noexcept { return g_.energies(); }
    double period() const noexcept { return g_.period(); }
    double midpoint() const noexcept { return g_.midpoint(); }
    std::array<double, 3> energy_levels() const;
    // Energy of a state: 0, eps0 or eps0 + eps1.
    double energy(State s) const;

    const BranchMap& branch_map() const noexcept { return branch_; }
    const std::vector<SpecialPoint>& special_points() const noexcept { return special_; }
    const std::vector<Pole>& poles() const noexcept { return poles_; }
    double window_half_width() const noexcept { return h_; }
    // Actual patch radius used around each special point.
    const std::vector<double>& patch_radii() const noexcept { return radius_; }
    bool in_window(double x) const;
    int sign_at(double x) const { return branch_.sign_at(x); }

    Jet w_plus(double x) const;
    Jet w_plus_tilde(double x) const;
    std::array<Jet, 3> superpotential_jets(double x) const;
    std::array<double, 3> superpotentials(double x) const;

    // Throws VplusPole for V+ inside a window where it is singular on this branch.
    Jet v_minus_jet(double x) const;
    Jet v_plus_jet(double x) const;
    double v_minus(double x) const { return v_minus_jet(x)[0]; }
    double v_plus(double x) const { return v_plus_jet(x)[0]; }
    std::pair<double, double> potentials(double x) const { return {v_minus(x), v_plus(x)}; }

    Jet psi_jet(State s, double x) const;
    double psi(State s, double x, double c = 1.0) const { return c * psi_jet(s, x)[0]; }
    std::array<double, 3> wavefunctions_minus(double x, const std::array<double, 3>& c = {1.0, 1.0, 1.0}) const;
    std::array<double, 2> wavefunctions_plus(double x, const std::array<double, 2>& c = {1.0, 1.0}) const;

    // Integral of W_i over [a, b]; principal logarithmic value across poles.
    double integrate_superpotential(int i, double a, double b) const;
    // Integrals of W0, W1, W2 over one period.
    std::array<double, 3> period_integrals() const { return period_integral_; }

    // All columns at once; non-finite entries mark poles of W or a singular V+.
    PointValues sample(double x) const;

private:
    enum Fn : int { WP, WT, WR0, WR1, WR2, VM, VP, PS0, PS1, PS2, PP1, PP2, FnCount };
    static constexpr std::array<int, FnCount> kDepth = {5, 5, 4, 4, 4, 3, 3, 5, 5, 4, 4, 3};

    struct Window {
        double lo = 0.0;
        double hi = 0.0;
        std::vector<double> points;
        std::vector<double> radii;
        bool vplus_singular = false;
        std::array<HermitePatch, FnCount> patch;
        std::array<bool, FnCount> ready{};
    };

    struct Direct {
        LocalJets l;
        std::array<Jet, 5> reg;  // W+, W~+, W0, W1, W2 with pole terms removed
    };

    explicit ConstructedSystem(GeneratingFunction g) : g_(std::move(g)) {}

    // Window containing x, with x shifted into its local coordinates.
    const Window* window_for(double x, double& local) const;
    Direct direct(double x) const;
    Jet pole_terms(int f, double x) const;
    double pole_value(int f, double x) const;
    Jet psi_factor(int i, double x) const;
    Jet window_potential(const Window& w, int f, double local) const;
    std::array<Jet, 5> direct_psi(double x, const Direct& d, const std::array<double, 3>& integral) const;
    std::array<double, 3> cumulative(double x) const;
    std::array<double, 3> direct_segment(double a, double b) const;
    std::array<double, 3> window_segment(const Window& w, double a, double b) const;
    std::array<double, 3> anchored_integral(double xr) const;
    std::array<double, 5> extension(int n) const;
    Jet function_jet(int f, double x) const;

    void locate_special_points();
    void compute_residues(const BuildOptions& o);
    void choose_radii(const BuildOptions& o);
    void build_windows();
    void build_window_patches(Window& w) const;
    // Largest seam mismatch of a window relative to the tolerance.
    double seam_ratio(const Window& w, bool with_psi, double tol, int* worst_fn, double* worst_x) const;
    void build_integral_table(const BuildOptions& o);
    void build_psi_patches();
    void check_seams(const BuildOptions& o) const;

    GeneratingFunction g_;
    BranchMap branch_;
    double h_ = 0.0;
    double quad_tol_ = 1e-10;
    std::vector<SpecialPoint> special_;
    std::vector<Pole> poles_;
    std::vector<double> radius_;
    std::vector<Window> windows_;
    std::vector<double> knots_;
    std::vector<std::array<double, 3>> table_;
    std::vector<int> knot_window_;  // window index of the segment starting at each knot, -1 if none
    std::array<double, 3> anchor_{};
    std::array<double, 3> period_integral_{};
    std::array<int, 3> residue_sum_{};
};

}  // namespace qes
