#include "qes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qes/eigen.hpp"
#include "qes/errors.hpp"
#include "qes/kernels.hpp"

namespace qes::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rows cos(2 pi k q / n) and sin(2 pi k q / n) for one frequency.
void fourier_rows(std::size_t n, std::size_t k, std::vector<double>& c, std::vector<double>& s) {
    c.resize(n);
    s.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        const double a = kTwoPi * static_cast<double>((k * q) % n) / static_cast<double>(n);
        c[q] = std::cos(a);
        s[q] = std::sin(a);
    }
}

struct Block {
    std::vector<int> kind;  // 0 constant, 1 cosine, 2 sine
    std::vector<int> freq;
};

Block make_block(int harmonics, int parity) {
    Block b;
    if (parity == 0) {
        b.kind.push_back(0);
        b.freq.push_back(0);
    }
    for (int m = 1; m <= harmonics; ++m) {
        if (m % 2 != parity) continue;
        b.kind.push_back(1);
        b.freq.push_back(m);
        b.kind.push_back(2);
        b.freq.push_back(m);
    }
    return b;
}

}  // namespace

std::string to_string(Periodicity p) {
    switch (p) {
        case Periodicity::Periodic: return "L";
        case Periodicity::Antiperiodic: return "2L";
        case Periodicity::Unclassified: return "unclassified";
    }
    return "?";
}

EdgeSpectrum band_edge_spectrum(const Potential& v, double period, int harmonics, int count, int samples) {
    if (!(period > 0.0)) throw InvalidArgument("period must be positive");
    if (harmonics < min_harmonics) throw InvalidArgument("at least " + std::to_string(min_harmonics) + " harmonics are required");
    if (count < 1 || count > 2 * harmonics + 1) throw InvalidArgument("state count out of range");
    if (samples < 2 * harmonics + 1) throw InvalidArgument("too few samples for the basis");

    const double span = 2.0 * period;
    const std::size_t q = 4 * (2 * static_cast<std::size_t>(harmonics) + 1);
    std::vector<double> vq(q);
    for (std::size_t i = 0; i < q; ++i) vq[i] = v(span * static_cast<double>(i) / static_cast<double>(q));

    // Mean-normalised Fourier coefficients of V on the doubled cell.
    const std::size_t kmax = 2 * static_cast<std::size_t>(harmonics);
    std::vector<double> vc(kmax + 1), vs(kmax + 1), cr, sr;
    for (std::size_t k = 0; k <= kmax; ++k) {
        fourier_rows(q, k, cr, sr);
        vc[k] = kernels::dot(vq.data(), cr.data(), q) / static_cast<double>(q);
        vs[k] = kernels::dot(vq.data(), sr.data(), q) / static_cast<double>(q);
    }
    auto c_at = [&](int k) { return vc[static_cast<std::size_t>(std::abs(k))]; };
    auto s_at = [&](int k) { return k < 0 ? -vs[static_cast<std::size_t>(-k)] : vs[static_cast<std::size_t>(k)]; };
    const double r2 = std::numbers::sqrt2;

    auto element = [&](int ki, int mi, int kj, int mj) {
        if (ki > kj) {
            std::swap(ki, kj);
            std::swap(mi, mj);
        }
        if (ki == 0 && kj == 0) return c_at(0);
        if (ki == 0 && kj == 1) return r2 * c_at(mj);
        if (ki == 0 && kj == 2) return r2 * s_at(mj);
        if (ki == 1 && kj == 1) return c_at(mi - mj) + c_at(mi + mj);
        if (ki == 2 && kj == 2) return c_at(mi - mj) - c_at(mi + mj);
        return s_at(mi + mj) + s_at(mj - mi);  // cos(mi) sin(mj)
    };

    EdgeSpectrum out;
    out.period = period;
    out.harmonics = harmonics;
    out.grid.resize(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) out.grid[static_cast<std::size_t>(i)] = span * i / samples;

    const double kscale = std::numbers::pi / period;
    for (int parity = 0; parity < 2; ++parity) {
        const Block b = make_block(harmonics, parity);
        const std::size_t n = b.kind.size();
        SymmetricMatrix a(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double e = element(b.kind[i], b.freq[i], b.kind[j], b.freq[j]);
                if (i == j) e += 0.5 * std::pow(b.freq[i] * kscale, 2);
                a(i, j) = e;
                a(j, i) = e;
            }
        }
        const EigenDecomposition eig = symmetric_eigen(std::move(a));
        const std::size_t keep = std::min<std::size_t>(n, static_cast<std::size_t>(count));
        std::vector<std::vector<double>> basis(n, std::vector<double>(static_cast<std::size_t>(samples)));
        for (std::size_t i = 0; i < n; ++i) {
            for (int g = 0; g < samples; ++g) {
                const double th = b.freq[i] * kscale * out.grid[static_cast<std::size_t>(g)];
                basis[i][static_cast<std::size_t>(g)] =
                    b.kind[i] == 0 ? 1.0 / std::sqrt(span)
                                   : std::sqrt(2.0 / span) * (b.kind[i] == 1 ? std::cos(th) : std::sin(th));
            }
        }
        for (std::size_t k = 0; k < keep; ++k) {
            EdgeState st;
            st.energy = eig.values[k];
            st.samples.assign(static_cast<std::size_t>(samples), 0.0);
            const auto vec = eig.vector(k);
            for (std::size_t i = 0; i < n; ++i) kernels::axpy(vec[i], basis[i].data(), st.samples.data(), st.samples.size());
            const auto big = std::max_element(st.samples.begin(), st.samples.end(),
                                              [](double x, double y) { return std::abs(x) < std::abs(y); });
            if (*big < 0.0)
                for (double& x : st.samples) x = -x;
            st.periodicity = classify(st.samples);
            try {
                st.nodes = count_nodes(st.samples) / 2;
            } catch (const AmbiguousNode&) {
                st.nodes = -1;
            }
            out.states.push_back(std::move(st));
        }
    }
    std::sort(out.states.begin(), out.states.end(), [](const EdgeState& x, const EdgeState& y) { return x.energy < y.energy; });
    if (out.states.size() > static_cast<std::size_t>(count)) out.states.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < out.states.size(); ++i) out.states[i].gap_index = gap_index(i);
    return out;
}

int count_nodes(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n == 0) return 0;
    double peak = 0.0;
    for (double x : samples) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) throw AmbiguousNode("function vanishes identically");
    const double floor = 1e-9 * peak;
    auto sign = [&](std::size_t i) { return std::abs(samples[i]) < floor ? 0 : (samples[i] > 0 ? 1 : -1); };

    std::size_t start = 0;
    while (start < n && sign(start) == 0) ++start;
    if (start == n) throw AmbiguousNode("no sample above the noise floor");
    const std::size_t limit = n / 20;
    int nodes = 0;
    int last = sign(start);
    std::size_t run = 0;
    for (std::size_t step = 1; step <= n; ++step) {
        const int s = sign((start + step) % n);
        if (s == 0) {
            if (++run > limit) throw AmbiguousNode("near-zero plateau longer than 5% of the period");
            continue;
        }
        run = 0;
        if (s != last) ++nodes;
        last = s;
    }
    return nodes;
}

Periodicity classify(std::span<const double> samples, double tolerance) {
    const std::size_t n = samples.size();
    if (n < 2 || n % 2 != 0) return Periodicity::Unclassified;
    const std::size_t h = n / 2;
    double peak = 0.0, even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(samples[i]));
    for (std::size_t i = 0; i < h; ++i) {
        even = std::max(even, std::abs(samples[i + h] - samples[i]));
        odd = std::max(odd, std::abs(samples[i + h] + samples[i]));
    }
    if (even < tolerance * peak) return Periodicity::Periodic;
    if (odd < tolerance * peak) return Periodicity::Antiperiodic;
    return Periodicity::Unclassified;
}

std::vector<double> spectral_second_derivative(std::span<const double> f, double span) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0), cr, sr;
    const double w = kTwoPi / span;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        fourier_rows(n, k, cr, sr);
        double a = 2.0 * kernels::dot(f.data(), cr.data(), n) / static_cast<double>(n);
        double b = 2.0 * kernels::dot(f.data(), sr.data(), n) / static_cast<double>(n);
        if (2 * k == n) {
            a *= 0.5;
            b = 0.0;
        }
        const double scale = -std::pow(w * static_cast<double>(k), 2);
        kernels::axpy(scale * a, cr.data(), out.data(), n);
        kernels::axpy(scale * b, sr.data(), out.data(), n);
    }
    return out;
}

double residual(const Potential& v, std::span<const double> psi, double energy, double period) {
    const std::size_t n = psi.size();
    if (n < 512 || (n & (n - 1)) != 0) throw InvalidArgument("residual needs a power-of-two sample count of at least 512");
    const double span = 2.0 * period;
    const auto d2 = spectral_second_derivative(psi, span);
    double peak = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = span * static_cast<double>(i) / static_cast<double>(n);
        worst = std::max(worst, std::abs(-0.5 * d2[i] + (v(x) - energy) * psi[i]));
        peak = std::max(peak, std::abs(psi[i]));
    }
    return peak > 0.0 ? worst / peak : 0.0;
}

int find_level(const EdgeSpectrum& s, double energy, double tolerance) {
    int best = -1;
    double gap = tolerance;
    for (std::size_t i = 0; i < s.states.size(); ++i) {
        const double d = std::abs(s.states[i].energy - energy);
        if (d <= gap) {
            gap = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace qes::oracle
