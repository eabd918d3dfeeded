#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qes {

// Dense symmetric matrix, full row-major storage.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    double* row(std::size_t i) noexcept { return a_.data() + i * n_; }
    const double* row(std::size_t i) const noexcept { return a_.data() + i * n_; }

    // Largest absolute row sum; an upper bound on the spectral norm.
    double norm_inf() const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

struct EigenDecomposition {
    std::size_t n = 0;
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // row k holds the unit eigenvector for values[k]

    std::span<const double> vector(std::size_t k) const { return {vectors.data() + k * n, n}; }
};

// Householder tridiagonalisation followed by implicit QL with Wilkinson-type shifts.
// Throws NonConvergence when an eigenvalue needs more than max_sweeps QL iterations.
EigenDecomposition symmetric_eigen(SymmetricMatrix a, int max_sweeps = 60);

}  // namespace qes
