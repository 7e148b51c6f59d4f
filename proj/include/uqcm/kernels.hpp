#pragma once

#include <complex>
#include <cstddef>

// Complex double-precision array kernels. Everything above this layer
// (states, operators, tensor contractions, eigen/SVD sweeps) reduces to
// these six primitives, so they exist in a scalar reference flavor and an
// AVX2+FMA flavor selected once at runtime. The two backends are
// equivalence-tested against each other in tests/test_kernels.cpp.

namespace uqcm::kernels {

using cxd = std::complex<double>;

struct Backend {
    const char* name;

    // y[i] += a * x[i]
    void (*axpy)(cxd* y, const cxd* x, cxd a, std::size_t n);
    // x[i] *= a
    void (*scal)(cxd* x, cxd a, std::size_t n);
    // sum_i conj(x[i]) * y[i]
    cxd (*dotc)(const cxd* x, const cxd* y, std::size_t n);
    // sum_i |x[i]|^2
    double (*nrm2sq)(const cxd* x, std::size_t n);
    // [x; y] <- [[m0, m1], [m2, m3]] [x; y], elementwise over the two arrays.
    // Serves Jacobi row rotations, SVD column rotations and gate pair mixing.
    void (*mix2)(cxd* x, cxd* y, const cxd m[4], std::size_t n);
    // c = a * b, row-major dense, c (m x n) overwritten, a (m x k), b (k x n)
    void (*matmul)(cxd* c, const cxd* a, const cxd* b, std::size_t m,
                   std::size_t k, std::size_t n);
};

const Backend& scalar_backend();

// nullptr when the binary was built without AVX2 support (non-x86 target).
const Backend* avx2_backend();

// True when the running CPU supports AVX2 and FMA.
bool avx2_supported();

// Backend in use. Resolved once: AVX2 when available, scalar otherwise;
// the environment variable UQCM_KERNELS=scalar|avx2 overrides.
const Backend& active();

// Test hook. Pass nullptr to restore automatic selection.
void force_backend(const Backend* b);

// ---- helpers shared by both backends ----

// 2x2 gate u on amplitude pairs (i, i + stride) of a length-n array,
// n a multiple of 2*stride. Dispatches to mix2 on contiguous runs.
void apply_1q(cxd* psi, std::size_t n, std::size_t stride, const cxd u[4]);

// psi[i] *= phase for every index with (i & mask) == mask.
void phase_mask(cxd* psi, std::size_t n, std::size_t mask, cxd phase);

}  // namespace uqcm::kernels
