#include "qes/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace qes::kernels::neon {

#if defined(__aarch64__) && defined(__ARM_NEON)

bool available() { return true; }

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n) {
    const float64x2_t v1 = vdupq_n_f64(a1);
    const float64x2_t v2 = vdupq_n_f64(a2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t t = vfmaq_f64(vmulq_f64(v2, vld1q_f64(x2 + i)), v1, vld1q_f64(x1 + i));
        vst1q_f64(y + i, vsubq_f64(vld1q_f64(y + i), t));
    }
    for (; i < n; ++i) y[i] -= a1 * x1[i] + a2 * x2[i];
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t yi = vld1q_f64(y + i);
        vst1q_f64(x + i, vfmsq_f64(vmulq_f64(vc, xi), vs, yi));
        vst1q_f64(y + i, vfmaq_f64(vmulq_f64(vc, yi), vs, xi));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

#else

bool available() { return false; }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n) {
    scalar::rank2(a1, x1, a2, x2, y, n);
}
void rotate(double* x, double* y, double c, double s, std::size_t n) { scalar::rotate(x, y, c, s, n); }

#endif

}  // namespace qes::kernels::neon
