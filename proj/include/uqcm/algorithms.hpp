#pragma once

#include <optional>
#include <vector>

#include "uqcm/circuit.hpp"

// The singular-value-transformation family and stored-program machinery:
// QSP products, block encodings, projector-phased QSVT with its 2x2
// reduction oracle, linear combinations of QSVTs, truncated-Chebyshev
// Hamiltonian simulation, select processors and classical gate programs.

namespace uqcm::algo {

using circuit::Circuit;
using core::PureState;
using core::UnitaryOp;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

struct PhaseSequence {
    std::vector<double> phases;

    PhaseSequence() = default;
    explicit PhaseSequence(std::vector<double> p);
    std::size_t size() const { return phases.size(); }
};

using SVDecomposition = linalg::Svd;
SVDecomposition singular_decomposition(const Matrix& a);

// Unitary on ancilla (x) system whose top-left encoded_dim corner holds the
// encoded matrix; the projectors select the first encoded_dim coordinates.
struct BlockEncoding {
    UnitaryOp u;
    Matrix pi_in, pi_out;
    std::size_t encoded_dim;

    BlockEncoding(UnitaryOp u, std::size_t encoded_dim);
    Matrix block() const;  // pi_out U pi_in as an encoded_dim^2 matrix
};

// ---- operations ----

// Product Z(phi_L) G ... Z(phi_1) G with Z(phi) = e^{i phi Z}; empty
// sequences give the identity.
UnitaryOp qsp_unitary(const Matrix& g, const PhaseSequence& phases);

// Exact unitary completion of a matrix with spectral norm <= 1 (Hermitian
// inputs get the Hermitian completion so signed eigenvalues survive);
// throws NormTooLarge above 1.
BlockEncoding block_encode(const Matrix& a);

// Alternating product with L + 1 applications of U / U-dagger and the L
// phase gates e^{i phi Pi} / e^{i phi Pi~} sandwiched between them; zero
// phases give back U itself.
Matrix qsvt_unitary(const BlockEncoding& be, const PhaseSequence& phases);
// Encoded corner of qsvt_unitary.
Matrix qsvt_apply(const BlockEncoding& be, const PhaseSequence& phases);

// The per-singular-value 2x2 reduction: the same alternating product on
// the reflection G(sigma), reported as its (0,0) entry. Independent of the
// dense qsvt path; all QSVT correctness claims route through it.
cxd qsp_reduction_oracle(double sigma, const PhaseSequence& phases);

struct LcuEntry {
    cxd beta;
    BlockEncoding be;
    PhaseSequence phases;
};
struct LcuResult {
    BlockEncoding be;
    double subnormalization;  // sum |beta|; the block holds B / subnormalization
};
// prepare-select-unprepare combination of per-entry QSVTs; beta phases are
// absorbed into the select unitaries, |beta| into the preparation.
LcuResult lcu_combine(const std::vector<LcuEntry>& entries);

struct HamSimResult {
    Matrix matrix;           // approximates e^{i H t}
    double truncation_bound;
    bool norm_warning;       // set when |H| |t| exceeds the guidance bound
};
HamSimResult hamiltonian_sim_lcu(const Matrix& h, double t, std::size_t degree);

struct SelectProcessor {
    UnitaryOp g;  // data (x) program register
    std::vector<PureState> program_states;
};
SelectProcessor build_select_processor(const std::vector<UnitaryOp>& programs);

struct ProgrammingReport {
    bool implements_u, implements_v;
    cxd program_overlap;
};
// Does G apply u (resp. v) on the data for program state pu (resp. pv),
// with a data-independent residual program state? The no-programming
// orthogonality is then visible in program_overlap.
ProgrammingReport no_programming_check(const UnitaryOp& g, const PureState& pu,
                                       const PureState& pv, const Matrix& u,
                                       const Matrix& v);

// 26 bits per gate, fields little-endian in a LSB-first bit stream:
// kind (2 bits: 00 H, 01 T, 10 CZ), step (8 bits), wire0 (8 bits),
// wire1 (8 bits, 0xFF when unused).
struct ClassicalProgram {
    std::uint8_t qubits = 0;
    std::size_t gate_count = 0;
    std::vector<std::uint8_t> bits;
};
ClassicalProgram program_encode(const Circuit& c);
Circuit program_decode(const ClassicalProgram& p);

// Coordinate-descent fit of a phase sequence against target oracle values;
// a convenience with no optimality contract.
struct PhaseFit {
    PhaseSequence phases;
    double residual;
};
PhaseFit fit_qsp_phases(const std::vector<std::pair<double, cxd>>& targets,
                        std::size_t length, std::size_t sweeps = 40,
                        std::uint64_t seed = 0);

}  // namespace uqcm::algo
