#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uqcm/circuit.hpp"

// Cross-model equivalence harness: the same circuit executed as a dense
// gate sequence, through the MPS layer, as byproduct-corrected measurement
// patterns, and as a clock-projected history state, with pairwise
// fidelities between the resulting states.

namespace uqcm::equiv {

using circuit::Circuit;
using core::PureState;

enum class Model { CircuitModel, Mps, Mbqc, Fkch };

const char* model_name(Model m);
std::optional<Model> model_from_name(const std::string& name);

struct ModelOutcome {
    Model model;
    bool ok;
    std::string error;               // set when ok is false
    std::optional<PureState> state;  // set when ok
    double runtime_ms;
};

struct PairFidelity {
    Model a, b;
    double fidelity;
};

struct EquivReport {
    std::vector<ModelOutcome> outcomes;
    std::vector<PairFidelity> fidelities;
    double tolerance;
    bool pass;  // every computed pair within 1 - tolerance
};

EquivReport cross_model_equivalence(const Circuit& c, const std::vector<Model>& models,
                                    double tol, std::uint64_t seed = 0);

// One circuit gate applied through the measurement-pattern route: 1-qubit
// gates run as 5-site wire patterns with byproduct correction, CZ/CNOT
// interleave densely (CNOT via H-conjugated CZ).
PureState mbqc_execute(const Circuit& c, std::uint64_t seed);

}  // namespace uqcm::equiv
