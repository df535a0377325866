#include "thinlayer/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define THINLAYER_HAVE_AVX2_TARGET 1
#include <immintrin.h>
#else
#define THINLAYER_HAVE_AVX2_TARGET 0
#endif

namespace thinlayer::kernels::avx2 {

#if THINLAYER_HAVE_AVX2_TARGET

// Compiled for AVX2 regardless of the global -march; only called after the
// runtime check in dispatch.cpp. No FMA: results must match the scalar path.
#define THINLAYER_AVX2 __attribute__((target("avx2")))

THINLAYER_AVX2 double weighted_sum(const double* w, const double* f, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i));
        acc = _mm256_add_pd(acc, prod);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += w[i] * f[i];
    return s;
}

THINLAYER_AVX2 void paraboloid_pressure(const double* x, const double* y, double* out,
                                        std::size_t n, double k, double delta0, double cx,
                                        double cy) {
    const __m256d vk = _mm256_set1_pd(k);
    const __m256d vd = _mm256_set1_pd(delta0);
    const __m256d vcx = _mm256_set1_pd(cx);
    const __m256d vcy = _mm256_set1_pd(cy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        __m256d gap = _mm256_sub_pd(vd, _mm256_mul_pd(vcx, _mm256_mul_pd(vx, vx)));
        gap = _mm256_sub_pd(gap, _mm256_mul_pd(vcy, _mm256_mul_pd(vy, vy)));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vk, gap));
    }
    scalar::paraboloid_pressure(x + i, y + i, out + i, n - i, k, delta0, cx, cy);
}

THINLAYER_AVX2 void parabolic_radial_pressure(const double* r, double* out, std::size_t n,
                                              double m, double c, double a, double delta0) {
    const double a2 = a * a;
    const __m256d va2 = _mm256_set1_pd(a2);
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vscale = _mm256_set1_pd(m / 16.0);
    const __m256d vshift = _mm256_set1_pd(4.0 * delta0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vr = _mm256_loadu_pd(r + i);
        const __m256d r2 = _mm256_mul_pd(vr, vr);
        const __m256d lhs = _mm256_sub_pd(_mm256_mul_pd(vc, _mm256_add_pd(r2, va2)), vshift);
        const __m256d rhs = _mm256_sub_pd(r2, va2);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vscale, _mm256_mul_pd(lhs, rhs)));
    }
    scalar::parabolic_radial_pressure(r + i, out + i, n - i, m, c, a, delta0);
}

#else

double weighted_sum(const double* w, const double* f, std::size_t n) {
    return scalar::weighted_sum(w, f, n);
}

void paraboloid_pressure(const double* x, const double* y, double* out, std::size_t n,
                         double k, double delta0, double cx, double cy) {
    scalar::paraboloid_pressure(x, y, out, n, k, delta0, cx, cy);
}

void parabolic_radial_pressure(const double* r, double* out, std::size_t n, double m,
                               double c, double a, double delta0) {
    scalar::parabolic_radial_pressure(r, out, n, m, c, a, delta0);
}

#endif

}  // namespace thinlayer::kernels::avx2
