#include "qes/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define QES_HAVE_X86 1
#include <immintrin.h>
#endif

namespace qes::kernels::avx2 {

#if defined(QES_HAVE_X86) && (defined(__GNUC__) || defined(__clang__))

#define QES_AVX2 __attribute__((target("avx2,fma")))

bool available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

QES_AVX2 double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc0);
    const __m128d hi = _mm256_extractf128_pd(acc0, 1);
    __m128d sum = _mm_add_pd(lo, hi);
    sum = _mm_add_sd(sum, _mm_unpackhi_pd(sum, sum));
    double acc = _mm_cvtsd_f64(sum);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

QES_AVX2 void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

QES_AVX2 void rank2(double a1, const double* x1, double a2, const double* x2, double* y, std::size_t n) {
    const __m256d v1 = _mm256_set1_pd(a1);
    const __m256d v2 = _mm256_set1_pd(a2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_fmadd_pd(v1, _mm256_loadu_pd(x1 + i), _mm256_mul_pd(v2, _mm256_loadu_pd(x2 + i)));
        _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), t));
    }
    for (; i < n; ++i) y[i] -= a1 * x1[i] + a2 * x2[i];
}

QES_AVX2 void rotate(double* x, double* y, double c, double s, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
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

}  // namespace qes::kernels::avx2
