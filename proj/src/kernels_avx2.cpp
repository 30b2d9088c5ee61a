// AVX2+FMA variants of the complex vector kernels. Compiled with
// -mavx2 -mfma; callers must gate on avx2_available().

#include "floq/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace floq::kernels::avx2 {

namespace {

// [r0,i0,r1,i1] -> [i0,r0,i1,r1]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// (ar + i*ai) * v for two interleaved complex values
inline __m256d cmul(__m256d v, __m256d ar, __m256d ai) {
    const __m256d t = _mm256_mul_pd(swap_pairs(v), ai);
    return _mm256_fmaddsub_pd(v, ar, t);
}

inline double hsum(__m256d v) {
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, v);
    return (tmp[0] + tmp[2]) + (tmp[1] + tmp[3]);
}

} // namespace

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(xv, ar, ai)));
    }
    if (i < n) scalar::axpy(a, x + i, y + i, n - i);
}

void axpy_real(double a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmadd_pd(xv, av, yv));
    }
    if (i < n) scalar::axpy_real(a, x + i, y + i, n - i);
}

void scale(cplx a, cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(xd + 2 * i, cmul(xv, ar, ai));
    }
    if (i < n) scalar::scale(a, x + i, n - i);
}

void scale_copy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul(xv, ar, ai));
    }
    if (i < n) scalar::scale_copy(a, x + i, y + i, n - i);
}

void scale_copy_real(double a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), av));
    }
    if (i < n) scalar::scale_copy_real(a, x + i, y + i, n - i);
}

void diag_mul(const double* d, const cplx* x, cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dv = _mm256_loadu_pd(d + i);
        const __m256d d01 = _mm256_permute4x64_pd(dv, _MM_SHUFFLE(1, 1, 0, 0));
        const __m256d d23 = _mm256_permute4x64_pd(dv, _MM_SHUFFLE(3, 3, 2, 2));
        _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), d01));
        _mm256_storeu_pd(yd + 2 * i + 4, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i + 4), d23));
    }
    if (i < n) scalar::diag_mul(d + i, x + i, y + i, n - i);
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_p = _mm256_setzero_pd(); // xr*yr, xi*yi lanes
    __m256d acc_q = _mm256_setzero_pd(); // xr*yi (even), xi*yr (odd) lanes
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_p = _mm256_fmadd_pd(xv, yv, acc_p);
        acc_q = _mm256_fmadd_pd(xv, swap_pairs(yv), acc_q);
    }
    alignas(32) double q[4];
    _mm256_store_pd(q, acc_q);
    double re = hsum(acc_p);
    double im = (q[0] + q[2]) - (q[1] + q[3]);
    if (i < n) {
        const cplx tail = scalar::dot_conj(x + i, y + i, n - i);
        re += tail.real();
        im += tail.imag();
    }
    return cplx(re, im);
}

double norm_sq(const cplx* x, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double s = hsum(acc);
    if (i < n) s += scalar::norm_sq(x + i, n - i);
    return s;
}

const Table table = {axpy,     axpy_real, scale,    scale_copy,
                     scale_copy_real, diag_mul, dot_conj, norm_sq, "avx2"};

} // namespace floq::kernels::avx2

#endif // x86-64
