#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

// Band-edge spectra of H = -1/2 d^2/dx^2 + V(x) for an L-periodic V. Both Bloch edges
// (kL = 0 and kL = pi) are periodic on [0, 2L), so one real trigonometric basis on the
// doubled cell captures them together.
namespace qes::oracle {

using Potential = std::function<double(double)>;

enum class Periodicity { Periodic, Antiperiodic, Unclassified };

std::string to_string(Periodicity p);

struct EdgeState {
    double energy = 0.0;
    Periodicity periodicity = Periodicity::Unclassified;
    int nodes = -1;       // sign changes per period L; -1 when ambiguous
    int gap_index = 0;    // 0 for the ground state, g for the edges of the g-th gap
    std::vector<double> samples;  // eigenfunction on the sample grid over [0, 2L)
};

struct EdgeSpectrum {
    double period = 0.0;
    int harmonics = 0;
    std::vector<double> grid;
    std::vector<EdgeState> states;  // ascending energy
};

inline constexpr int min_harmonics = 16;

// Lowest `count` edge states using harmonics m = 1..M on [0, 2L).
EdgeSpectrum band_edge_spectrum(const Potential& v, double period, int harmonics, int count, int samples = 1024);

// Strict sign changes around the closed loop of samples; near-zero runs count once.
// Throws AmbiguousNode when such a run covers more than 5% of the samples.
int count_nodes(std::span<const double> samples);

// Periodic or antiperiodic under x -> x + L, for samples covering [0, 2L).
Periodicity classify(std::span<const double> samples, double tolerance = 1e-6);

// Index of the gap bounded by the n-th state of the sorted combined edge spectrum.
inline int gap_index(std::size_t n) { return static_cast<int>((n + 1) / 2); }

// max |-1/2 psi'' + V psi - E psi| / max |psi| with psi'' from the discrete Fourier series.
// psi holds uniform samples over [0, 2L); the size must be a power of two, at least 512.
double residual(const Potential& v, std::span<const double> psi, double energy, double period);

// Second derivative of uniform periodic samples over a window of length `span`.
std::vector<double> spectral_second_derivative(std::span<const double> f, double span);

// Closest state to a target energy, or -1 when none lies within the tolerance.
int find_level(const EdgeSpectrum& s, double energy, double tolerance);

}  // namespace qes::oracle
