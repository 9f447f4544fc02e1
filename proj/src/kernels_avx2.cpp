// AVX2 variants of the batch kernels. Compiled with -mavx2 for this file
// only; callers reach it through the runtime dispatch in kernels.cpp.
// Multiplies and adds stay separate (no FMA) so results match the scalar
// backend exactly.

#if defined(__x86_64__) || defined(_M_X64)

#include <cstddef>
#include <immintrin.h>

#include "mge/kernels.hpp"

namespace mge::kernels {

namespace {

void fill_avx2(double* y, double value, std::size_t n) {
    const __m256d v = _mm256_set1_pd(value);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, v);
    for (; i < n; ++i) y[i] = value;
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

const Ops avx2{"avx2", fill_avx2, axpy_avx2};

} // namespace

const Ops* avx2_ops() {
    return __builtin_cpu_supports("avx2") ? &avx2 : nullptr;
}

} // namespace mge::kernels

#endif
