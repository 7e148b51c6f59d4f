#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uqcm/core.hpp"

// Gate-sequence IR and its dense execution. List order is application
// order: the first gate in the list acts first, so the circuit unitary is
// U_n ... U_2 U_1.

namespace uqcm::circuit {

using core::PureState;
using core::UnitaryOp;
using linalg::cxd;
using linalg::Matrix;

enum class GateKind { H, T, S, X, Z, CZ, CNOT, I, Custom };

struct Gate {
    GateKind kind;
    std::vector<std::size_t> targets;
    std::optional<Matrix> custom;  // set only for GateKind::Custom

    Gate(GateKind k, std::vector<std::size_t> t);
    Gate(Matrix u, std::vector<std::size_t> t);  // custom unitary

    std::size_t arity() const { return targets.size(); }
    Matrix matrix() const;
};

std::size_t gate_arity(GateKind k);
const char* gate_name(GateKind k);
std::optional<GateKind> gate_kind_from_name(const std::string& name);

struct Circuit {
    std::size_t wires = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(std::size_t wires, std::vector<Gate> gates);

    Circuit then(const Circuit& next) const;  // this first, next second
};

PureState simulate(const Circuit& c, const PureState& initial);
PureState simulate(const Circuit& c);  // from |0...0>

UnitaryOp circuit_unitary(const Circuit& c);

// Exhaustive shortest-first search over {H, T} words. Returns the first
// word whose product is within eps of the target in phase-aligned operator
// norm; empty when nothing of depth <= max_depth qualifies.
std::optional<Circuit> compile_su2_bruteforce(const Matrix& target,
                                              std::size_t max_depth, double eps);

}  // namespace uqcm::circuit
