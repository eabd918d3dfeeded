#pragma once

#include <cstddef>
#include <string_view>

// Dense vector kernels used by the eigensolver and the discrete transforms.
// Every kernel has a portable scalar reference; SIMD variants are picked once
// at runtime from the host CPU and must agree with the reference to rounding.
namespace qes::kernels {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // y -= a1 * x1 + a2 * x2
    void (*rank2)(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n);
    // (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}  // namespace avx2

namespace neon {
bool available();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}  // namespace neon

// Table for a given instruction set; falls back to scalar when unsupported.
const KernelTable& table(Isa isa);

// Best table for this host. QES_KERNELS=scalar in the environment forces the reference.
const KernelTable& active();
Isa active_isa();
std::string_view isa_name(Isa isa);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n) {
    active().rank2(a1, x1, a2, x2, y, n);
}
inline void rotate(double* x, double* y, double c, double s, std::size_t n) { active().rotate(x, y, c, s, n); }

}  // namespace qes::kernels
