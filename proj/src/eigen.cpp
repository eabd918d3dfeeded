#include "qes/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qes/errors.hpp"
#include "qes/kernels.hpp"

namespace qes {

double SymmetricMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += std::abs(a_[i * n_ + j]);
        best = std::max(best, s);
    }
    return best;
}

namespace {

struct Tridiagonal {
    std::vector<double> d;     // diagonal
    std::vector<double> e;     // e[i] couples i and i+1
    std::vector<double> beta;  // reflector scale per step
};

// Reduces a to tridiagonal form in place. Reflector k is stored in row k,
// columns k+1..n-1, so that Q = H_0 H_1 ... H_{n-3} and A = Q T Q^T.
Tridiagonal tridiagonalize(SymmetricMatrix& a) {
    const std::size_t n = a.size();
    Tridiagonal t;
    t.d.assign(n, 0.0);
    t.e.assign(n, 0.0);
    t.beta.assign(n, 0.0);
    std::vector<double> p(n), w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        double* v = a.row(k) + k + 1;
        const double norm = std::sqrt(kernels::dot(v, v, m));
        if (norm == 0.0) {
            t.e[k] = 0.0;
            continue;
        }
        const double alpha = v[0] > 0.0 ? -norm : norm;
        v[0] -= alpha;
        const double vtv = kernels::dot(v, v, m);
        if (vtv == 0.0) {
            t.e[k] = alpha;
            continue;
        }
        const double beta = 2.0 / vtv;
        t.beta[k] = beta;
        t.e[k] = alpha;

        for (std::size_t i = 0; i < m; ++i) {
            p[i] = beta * kernels::dot(a.row(k + 1 + i) + k + 1, v, m);
        }
        const double kappa = 0.5 * beta * kernels::dot(p.data(), v, m);
        for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            kernels::rank2(v[i], w.data(), w[i], v, a.row(k + 1 + i) + k + 1, m);
        }
    }
    for (std::size_t i = 0; i < n; ++i) t.d[i] = a(i, i);
    if (n >= 2) t.e[n - 2] = a(n - 2, n - 1);
    t.e[n - 1] = 0.0;
    return t;
}

// Implicit QL on (d, e). z holds one row per eigenvector of T, initially the identity.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, std::size_t n,
                 int max_sweeps) {
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m = l;
        for (;;) {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > max_sweeps) {
                throw NonConvergence("QL iteration did not converge for eigenvalue " + std::to_string(l));
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                kernels::rotate(z.data() + i * n, z.data() + (i + 1) * n, c, s, n);
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace

EigenDecomposition symmetric_eigen(SymmetricMatrix a, int max_sweeps) {
    const std::size_t n = a.size();
    EigenDecomposition out;
    out.n = n;
    if (n == 0) return out;

    Tridiagonal t = tridiagonalize(a);

    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;
    ql_implicit(t.d, t.e, z, n, max_sweeps);

    // z rows are eigenvectors of T; map back through the reflectors.
    for (std::size_t j = 0; j < n; ++j) {
        double* y = z.data() + j * n;
        for (std::size_t k = n >= 2 ? n - 2 : 0; k-- > 0;) {
            if (t.beta[k] == 0.0) continue;
            const std::size_t m = n - k - 1;
            const double* v = a.row(k) + k + 1;
            const double f = t.beta[k] * kernels::dot(v, y + k + 1, m);
            kernels::axpy(-f, v, y + k + 1, m);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return t.d[i] < t.d[j]; });
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = t.d[order[k]];
        std::copy_n(z.data() + order[k] * n, n, out.vectors.data() + k * n);
    }
    return out;
}

}  // namespace qes
