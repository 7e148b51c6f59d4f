#pragma once

#include <array>
#include <optional>
#include <vector>

#include "uqcm/codes.hpp"
#include "uqcm/core.hpp"

// Measurement-based computing: cluster states, measurement patterns with
// feed-forward sign adaptation, single-qubit wire compilation and the
// two-qubit back-and-forth teleportation scheme.
//
// Measuring a site "at angle a" projects onto (|0> ± e^{-ia}|1>)/sqrt(2),
// so outcome 0 on a wire segment applies J(a) = H Z(a) with
// Z(a) = diag(1, e^{ia}). Z-plane steps delete the site.

namespace uqcm::mbqc {

using codes::PauliString;
using core::PureState;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

struct Graph {
    std::size_t vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> edges);
};

enum class Plane { XY, Z };

struct MeasStep {
    std::size_t site;
    Plane plane;
    double angle;
    std::vector<std::size_t> sign_deps;  // earlier steps flipping the angle sign
};

struct OutputCorrection {
    std::vector<std::size_t> x_deps, z_deps;  // steps feeding the byproduct
};

struct MeasurementPattern {
    std::size_t sites;
    std::vector<MeasStep> steps;
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
    std::vector<OutputCorrection> corrections;  // aligned with outputs

    MeasurementPattern(std::size_t sites, std::vector<MeasStep> steps,
                       std::vector<std::size_t> inputs,
                       std::vector<std::size_t> outputs,
                       std::vector<OutputCorrection> corrections);
};

struct Branch {
    static Branch fixed(std::vector<int> outcomes);
    static Branch random(std::uint64_t seed);

    bool is_fixed = false;
    std::vector<int> outcomes;
    std::uint64_t seed = 0;
};

struct PatternRun {
    std::vector<int> outcomes;
    PauliString byproduct;  // on the outputs, in output order
    PureState final_state;  // on the outputs, in output order
};

// ---- operations ----

PureState cluster_state(const Graph& g);

PatternRun run_pattern(const PureState& resource, const MeasurementPattern& p,
                       const Branch& branch);

// The four wire angles (a1..a4) with J(a4) J(a3) J(a2) J(a1) = u up to
// global phase; a1 is fixed to zero.
std::array<double, 4> wire_angles(const Matrix& u);

// Pattern on a 5-site linear cluster implementing u from site 0 to site 4.
MeasurementPattern compile_1q_gate(const Matrix& u);

// input (x) |+>^(sites-1) with CZ applied along the chain.
PureState wire_resource(const PureState& input, std::size_t sites);

struct TwoWayResult {
    PureState state;  // 2 qubits, measured side refreshed to |+>
    int outcome;
    PauliString byproduct;  // on the 2-qubit register
};

// CZ, measure the active qubit at `angle`, refresh it to |+>; the data
// moves to the other qubit carrying X^s H Z(angle).
TwoWayResult two_way_step(const PureState& reg, double angle, std::size_t active,
                          std::optional<int> forced_outcome = std::nullopt,
                          std::uint64_t seed = 0);

}  // namespace uqcm::mbqc
