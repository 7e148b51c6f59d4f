#include "uqcm/kernels.hpp"

namespace uqcm::kernels {

namespace {

void s_axpy(cxd* y, const cxd* x, cxd a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_scal(cxd* x, cxd a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cxd s_dotc(const cxd* x, const cxd* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double s_nrm2sq(const cxd* x, std::size_t n) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        r += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return r;
}

void s_mix2(cxd* x, cxd* y, const cxd m[4], std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const cxd xi = x[i], yi = y[i];
        x[i] = m[0] * xi + m[1] * yi;
        y[i] = m[2] * xi + m[3] * yi;
    }
}

// ikj order: the inner loop is an axpy over a row of b.
void s_matmul(cxd* c, const cxd* a, const cxd* b, std::size_t m, std::size_t k,
              std::size_t n) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        cxd* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const cxd ail = a[i * k + l];
            if (ail == cxd{}) continue;
            const cxd* brow = b + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", s_axpy, s_scal, s_dotc,
                           s_nrm2sq, s_mix2, s_matmul};
    return b;
}

}  // namespace uqcm::kernels
