#include "uqcm/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace uqcm::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Backend* forced = nullptr;

const Backend* select() {
    if (const char* env = std::getenv("UQCM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
        if (std::strcmp(env, "avx2") == 0 && avx2_supported() && avx2_backend())
            return avx2_backend();
    }
    if (avx2_supported() && avx2_backend()) return avx2_backend();
    return &scalar_backend();
}

}  // namespace

const Backend& active() {
    if (forced) return *forced;
    static const Backend* chosen = select();
    return *chosen;
}

void force_backend(const Backend* b) { forced = b; }

void apply_1q(cxd* psi, std::size_t n, std::size_t stride, const cxd u[4]) {
    const Backend& k = active();
    if (stride >= 2) {
        for (std::size_t base = 0; base < n; base += 2 * stride)
            k.mix2(psi + base, psi + base + stride, u, stride);
        return;
    }
    // stride 1: interleaved pairs, plain loop
    for (std::size_t i = 0; i < n; i += 2) {
        const cxd a = psi[i], b = psi[i + 1];
        psi[i] = u[0] * a + u[1] * b;
        psi[i + 1] = u[2] * a + u[3] * b;
    }
}

void phase_mask(cxd* psi, std::size_t n, std::size_t mask, cxd phase) {
    if (mask == 0) {
        active().scal(psi, phase, n);
        return;
    }
    // visit exactly the indices whose mask bits are all set
    for (std::size_t i = mask; i < n; i = (i + 1) | mask) psi[i] *= phase;
}

}  // namespace uqcm::kernels
