#pragma once

#include <cstdint>
#include <random>

#include "uqcm/linalg.hpp"

// Seeded randomness used by tests and the CLI. Gaussian variates come from
// a hand-rolled Box-Muller on top of mt19937_64 so that a given seed
// produces the same stream on every platform.

namespace uqcm::rng {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return (gen_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 == 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    std::uint64_t integer(std::uint64_t bound) {  // [0, bound)
        return gen_() % bound;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline linalg::Vec random_state_vector(std::size_t dim, Rng& rng) {
    linalg::Vec v(dim);
    for (auto& z : v) z = {rng.gaussian(), rng.gaussian()};
    linalg::normalize(v);
    return v;
}

// Haar-ish unitary: Gram-Schmidt of a Ginibre matrix.
inline linalg::Matrix random_unitary(std::size_t dim, Rng& rng) {
    linalg::Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = {rng.gaussian(), rng.gaussian()};
    return linalg::orthonormal_completion(linalg::column_space_basis(g, 1e-12));
}

inline linalg::Matrix random_hermitian(std::size_t dim, Rng& rng) {
    linalg::Matrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const linalg::cxd z{rng.gaussian(), rng.gaussian()};
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

}  // namespace uqcm::rng
