#pragma once

#include <functional>
#include <vector>

#include "uqcm/circuit.hpp"
#include "uqcm/tensor.hpp"

// Hamiltonian-based dynamics: local Hamiltonians, exact dense evolution,
// Lie-Trotter-Suzuki layering (first and second order), per-layer MPU
// extraction for 1D chains, continuous-time quantum walks, and
// schedule-controlled time-dependent evolution.

namespace uqcm::qca {

using circuit::Circuit;
using core::PureState;
using core::UnitaryOp;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

struct Term {
    Matrix op;                        // Hermitian, dimension 2^|support|
    std::vector<std::size_t> support;  // qubit wires, given order = kron order
};

class LocalHamiltonian {
public:
    LocalHamiltonian(std::vector<Term> terms, std::size_t n);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return n_; }
    std::size_t locality() const { return locality_; }

    Matrix dense() const;
    LocalHamiltonian scaled(double factor) const;  // drops zero-weight terms
    LocalHamiltonian plus(const LocalHamiltonian& other) const;

private:
    std::vector<Term> terms_;
    std::size_t n_;
    std::size_t locality_;
};

// Terms grouped into internally commuting layers; a plan owns a copy of
// the Hamiltonian it was built from.
struct TrotterPlan {
    LocalHamiltonian hamiltonian;
    double t;
    std::size_t r;
    int order;  // 1 or 2
    std::vector<std::vector<std::size_t>> layers;  // term indices
};

PureState exact_evolve(const LocalHamiltonian& h, double t, const PureState& s);

TrotterPlan make_trotter_plan(const LocalHamiltonian& h, double t, std::size_t r,
                              int order);
// Circuit of r repetitions of per-layer local exponentials (gates are
// Custom unitaries on the term supports).
Circuit trotterize(const LocalHamiltonian& h, double t, std::size_t r, int order);

// The dense unitary of one plan layer at step size t/r as an MPU;
// requires 1D nearest-neighbor supports.
tensor::MPU layer_to_mpu(const TrotterPlan& plan, std::size_t layer_index);

// e^{-i t A} applied to the start vertex of a 0/1 adjacency matrix.
Vec quantum_walk_evolve(const Matrix& adjacency, std::size_t start_vertex, double t);

struct ScheduledTerm {
    std::function<Matrix(double)> op_of;         // term at local schedule value
    std::vector<std::size_t> support;
    std::function<double(double)> schedule;       // monotone [0,1] -> [0,1]
};

// Ordered product of per-step first-order Trotter layers of the
// time-dependent Hamiltonian, each term evaluated at its own schedule;
// converges to the time-ordered exponential as steps grows.
UnitaryOp controlled_evolve(const std::vector<ScheduledTerm>& terms, std::size_t n,
                            double total_time, std::size_t steps);

}  // namespace uqcm::qca
