#pragma once

#include <optional>
#include <vector>

#include "uqcm/core.hpp"

// Matrix-product machinery: MPS with a general boundary operator, the
// sequential preparation circuit, QTM runs with adversary decoupling, MPU
// application and the higher-order bond-space factorization.
//
// Conventions. Site tensor A[n][i] is a (chi_{n+1} x chi_n) matrix and the
// amplitude of |i_1 ... i_N> is tr(B A[N-1][i_N] ... A[0][i_1]) with the
// boundary B of shape chi_0 x chi_N. Open boundaries are the special case
// chi_0 = chi_N = 1. Site 0 is the most significant digit of the register.

namespace uqcm::tensor {

using core::PureState;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

struct MPS {
    std::vector<std::vector<Matrix>> site_tensors;  // [site][phys]
    Matrix boundary;
    std::vector<std::size_t> phys_dims;

    MPS(std::vector<std::vector<Matrix>> tensors, Matrix boundary,
        std::vector<std::size_t> phys_dims);

    std::size_t sites() const { return phys_dims.size(); }
    std::vector<std::size_t> bond_dims() const;  // length sites()+1
};

// Matrix-product operator with unitary contraction; bond dims are 1 at both
// ends. site_tensors[n][o][i] is a (chi_{n+1} x chi_n) matrix and the
// operator entry <o|U|i> is the scalar W[N-1][o_N i_N] ... W[0][o_1 i_1].
struct MPU {
    std::vector<std::vector<std::vector<Matrix>>> site_tensors;  // [site][out][in]
    std::vector<std::size_t> phys_dims;

    MPU(std::vector<std::vector<std::vector<Matrix>>> tensors,
        std::vector<std::size_t> phys_dims);

    std::size_t sites() const { return phys_dims.size(); }
    std::vector<std::size_t> bond_dims() const;
};

// Second-layer factorization of every site matrix: with chi = d1^n1 the
// bond space becomes n1 qudits and A^i[mu][nu] = tr(C^i B^i_{mu1 nu1} ...
// B^i_{mu_n1 nu_n1}); the chains share the physical index i.
struct HOMPS {
    struct Chain {
        // b[k][mu][nu]: k-th second-layer tensor, matrices chi1_k x chi1_{k+1}
        std::vector<std::vector<std::vector<Matrix>>> b;
        Matrix c;  // boundary of the second layer
    };
    std::size_t n1 = 0;
    std::size_t d1 = 0;
    std::size_t chi = 0;   // parent bond dimension
    std::size_t chi1 = 0;  // largest residual bond dimension
    std::vector<std::vector<Chain>> chains;  // [site][phys]
    Matrix boundary;                         // parent boundary
    std::vector<std::size_t> phys_dims;
};

// ---- operations ----

PureState mps_contract(const MPS& m);

// Left-canonical sequential SVD factorization. chi_max = 0 means
// unbounded; discarded squared singular values above tol at any forced
// truncation raise TruncationError carrying the achieved fidelity.
MPS state_to_mps(const PureState& s, std::size_t chi_max, double tol);

// Sequential preparation: each unitary acts on (fresh site (x) adversary).
// The boundary is |adversary_init><final|; when no final projection is
// given the adversary must decouple and its pure final state is used.
MPS mps_from_sequential_circuit(const std::vector<Matrix>& unitaries,
                                std::size_t adversary_dim, const Vec& adversary_init,
                                const std::optional<Vec>& final_adversary = {});

struct QtmResult {
    PureState final_data;
    bool decoupled;
    double residual;  // 1 - purity of the reduced data state
};
// Runs joint data (x) adversary unitaries; reports whether the adversary
// decouples. final_data is the dominant eigenvector of the reduced state
// (exact when decoupled).
QtmResult qtm_run(const std::vector<Matrix>& program, const PureState& data,
                  const PureState& adversary);

// Von Neumann entropy (bits) across the cut between sites cut-1 and cut.
double bond_entanglement(const MPS& m, std::size_t cut);

Matrix mpu_contract(const MPU& op);
MPU mpu_from_dense(const Matrix& op, const std::vector<std::size_t>& phys_dims);
MPS apply_mpu(const MPS& m, const MPU& op);

HOMPS homps_decompose(const MPS& m, std::size_t d1);
MPS homps_reconstruct(const HOMPS& h);

}  // namespace uqcm::tensor
