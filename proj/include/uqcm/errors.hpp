#pragma once

#include <stdexcept>
#include <string>

namespace uqcm {

struct TruncationError : std::runtime_error {
    double achieved_fidelity;
    explicit TruncationError(double fid)
        : std::runtime_error("bond truncation exceeded tolerance, fidelity " +
                             std::to_string(fid)),
          achieved_fidelity(fid) {}
};

struct KLViolation : std::runtime_error {
    std::size_t witness_i, witness_j;
    KLViolation(std::size_t i, std::size_t j)
        : std::runtime_error("error set fails the correctability condition at pair (" +
                             std::to_string(i) + "," + std::to_string(j) + ")"),
          witness_i(i), witness_j(j) {}
};

struct ImpossibleBranch : std::runtime_error {
    ImpossibleBranch() : std::runtime_error("forced measurement branch has zero probability") {}
};

struct EnergyTie : std::runtime_error {
    EnergyTie() : std::runtime_error("codeword energies tie within tolerance, ordering undefined") {}
};

struct NormTooLarge : std::runtime_error {
    double norm;
    explicit NormTooLarge(double n)
        : std::runtime_error("matrix spectral norm " + std::to_string(n) +
                             " exceeds 1, rescale before block encoding"),
          norm(n) {}
};

struct UnsupportedGate : std::runtime_error {
    explicit UnsupportedGate(const std::string& kind)
        : std::runtime_error("gate kind not storable in a classical program: " + kind) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(std::size_t qubits, std::size_t cap)
        : std::runtime_error("instance needs " + std::to_string(qubits) +
                             " qubits, desk cap is " + std::to_string(cap)) {}
};

// Desk-scale qubit cap; the UQCM_DESK_CAP environment variable overrides.
std::size_t desk_cap();

}  // namespace uqcm
