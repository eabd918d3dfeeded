#include "qes/kernels.hpp"

namespace qes::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] -= a1 * x1[i] + a2 * x2[i];
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace qes::kernels::scalar
