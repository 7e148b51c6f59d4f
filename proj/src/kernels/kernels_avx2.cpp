// AVX2+FMA backend. This translation unit is compiled with -mavx2 -mfma
// (UQCM_AVX2_BUILD set by the build) on x86 targets and reduced to a stub
// elsewhere. Callers must gate on avx2_supported() before using it.

#include "uqcm/kernels.hpp"

#ifdef UQCM_AVX2_BUILD

#include <immintrin.h>

namespace uqcm::kernels {

namespace {

// Lane layout per __m256d: [re0, im0, re1, im1] (two complex doubles).

// v * s for a complex scalar s broadcast as (sr, si).
inline __m256d cmul(__m256d v, __m256d sr, __m256d si) {
    __m256d vs = _mm256_permute_pd(v, 0x5);  // [im0, re0, im1, re1]
    return _mm256_fmaddsub_pd(v, sr, _mm256_mul_pd(vs, si));
}

void a_axpy(cxd* y, const cxd* x, cxd a, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        __m256d yv = _mm256_loadu_pd(reinterpret_cast<double*>(
            const_cast<cxd*>(y + i)));
        yv = _mm256_add_pd(yv, cmul(xv, ar, ai));
        _mm256_storeu_pd(reinterpret_cast<double*>(y + i), yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void a_scal(cxd* x, cxd a, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul(xv, ar, ai));
    }
    for (; i < n; ++i) x[i] *= a;
}

cxd a_dotc(const cxd* x, const cxd* y, std::size_t n) {
    __m256d accp = _mm256_setzero_pd();  // x (.) y      -> real parts
    __m256d accq = _mm256_setzero_pd();  // swap(x) (.) y -> imag parts
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
        accp = _mm256_fmadd_pd(xv, yv, accp);
        accq = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, accq);
    }
    alignas(32) double p[4], q[4];
    _mm256_store_pd(p, accp);
    _mm256_store_pd(q, accq);
    double re = p[0] + p[1] + p[2] + p[3];
    double im = (q[1] - q[0]) + (q[3] - q[2]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double a_nrm2sq(const cxd* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    double r = p[0] + p[1] + p[2] + p[3];
    for (; i < n; ++i)
        r += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return r;
}

void a_mix2(cxd* x, cxd* y, const cxd m[4], std::size_t n) {
    const __m256d m0r = _mm256_set1_pd(m[0].real()), m0i = _mm256_set1_pd(m[0].imag());
    const __m256d m1r = _mm256_set1_pd(m[1].real()), m1i = _mm256_set1_pd(m[1].imag());
    const __m256d m2r = _mm256_set1_pd(m[2].real()), m2i = _mm256_set1_pd(m[2].imag());
    const __m256d m3r = _mm256_set1_pd(m[3].real()), m3i = _mm256_set1_pd(m[3].imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
        __m256d nx = _mm256_add_pd(cmul(xv, m0r, m0i), cmul(yv, m1r, m1i));
        __m256d ny = _mm256_add_pd(cmul(xv, m2r, m2i), cmul(yv, m3r, m3i));
        _mm256_storeu_pd(reinterpret_cast<double*>(x + i), nx);
        _mm256_storeu_pd(reinterpret_cast<double*>(y + i), ny);
    }
    for (; i < n; ++i) {
        const cxd xi = x[i], yi = y[i];
        x[i] = m[0] * xi + m[1] * yi;
        y[i] = m[2] * xi + m[3] * yi;
    }
}

void a_matmul(cxd* c, const cxd* a, const cxd* b, std::size_t m, std::size_t k,
              std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        cxd* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const cxd ail = a[i * k + l];
            if (ail == cxd{}) continue;
            const cxd* brow = b + l * n;
            const __m256d ar = _mm256_set1_pd(ail.real());
            const __m256d ai = _mm256_set1_pd(ail.imag());
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d b0 = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
                __m256d b1 = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j + 2));
                __m256d c0 = _mm256_loadu_pd(reinterpret_cast<double*>(crow + j));
                __m256d c1 = _mm256_loadu_pd(reinterpret_cast<double*>(crow + j + 2));
                c0 = _mm256_add_pd(c0, cmul(b0, ar, ai));
                c1 = _mm256_add_pd(c1, cmul(b1, ar, ai));
                _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), c0);
                _mm256_storeu_pd(reinterpret_cast<double*>(crow + j + 2), c1);
            }
            for (; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2", a_axpy, a_scal, a_dotc,
                           a_nrm2sq, a_mix2, a_matmul};
    return &b;
}

}  // namespace uqcm::kernels

#else  // !UQCM_AVX2_BUILD

namespace uqcm::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace uqcm::kernels

#endif
