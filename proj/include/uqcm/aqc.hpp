#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uqcm/circuit.hpp"
#include "uqcm/qca.hpp"

// Circuit-to-Hamiltonian machinery: the clock construction whose ground
// space holds computation history states, linear interpolation paths with
// gap tracking, and the energetic re-encoding map for dynamic codes.
//
// The clock is a unary domain-wall register: |t> = |1^t 0^(N-t)> over N
// clock qubits appended after the data wires, so every penalty is a
// geometrically local term.

namespace uqcm::aqc {

using circuit::Circuit;
using core::PureState;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;
using qca::LocalHamiltonian;

struct PenaltyWeights {
    double clock = 1.0;
    double edge = 1.0;
};

struct ClockHamiltonian {
    Circuit circuit;
    std::size_t clock_qubits;  // = gate count
    LocalHamiltonian terms;    // over wires + clock qubits
    PenaltyWeights weights;
    Vec pinned_input;          // the |l> penalized by the edge term
};

// Propagation + domain-wall clock penalties + edge (input) penalty; the
// edge term pins `input` (default |0...0>) at clock value 0. An empty
// circuit yields a term-free Hamiltonian.
ClockHamiltonian fkch_hamiltonian(const Circuit& c,
                                  PenaltyWeights weights = {},
                                  const std::optional<Vec>& input = {});

// (N+1)^{-1/2} sum_t V_t |l> (x) |t> over wires + clock qubits.
PureState history_state(const Circuit& c, const PureState& input_l);

// Renormalized wire state conditioned on clock value t.
PureState project_clock(const PureState& state, const Circuit& c, std::size_t t);

struct AdiabaticPath {
    LocalHamiltonian h0, hf;
    std::function<double(double)> schedule;  // monotone, 0 -> 0, 1 -> 1

    AdiabaticPath(LocalHamiltonian h0, LocalHamiltonian hf,
                  std::function<double(double)> schedule = nullptr);
};

// (1 - sigma) H0 + sigma Hf at sigma = schedule(s); zero-weight terms are
// dropped so the endpoints reproduce H0 and Hf exactly.
LocalHamiltonian interpolate(const AdiabaticPath& path, double s);

struct AdiabaticResult {
    PureState final;
    double ground_overlap;  // against the ground projector of H(1)
};
AdiabaticResult adiabatic_evolve(const AdiabaticPath& path, double total_time,
                                 std::size_t steps, const PureState& start);

struct GapProfile {
    std::vector<double> gaps;  // lowest distinct level spacing per sample
    double delta_min;
    double h_max;        // max finite-difference |dH/ds| in spectral norm
    double tf_estimate;  // h_max / delta_min^2 (inf on a closing gap)
};
GapProfile gap_profile(const AdiabaticPath& path, std::size_t samples);

// Fixed re-encoding between two energetically ordered codeword lists:
// the i-th lowest new codeword maps to the i-th lowest old one.
Matrix energetic_reencode(const std::vector<std::pair<Vec, double>>& old_codewords,
                          const std::vector<std::pair<Vec, double>>& new_codewords);

}  // namespace uqcm::aqc
