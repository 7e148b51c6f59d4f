#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uqcm/core.hpp"

// Stabilizer machinery: symplectic Pauli algebra, code projectors, the
// exact-correctability condition with recovery synthesis, logical and
// transversal gate checks, gauge-fixing admissibility and concatenation.
//
// Pauli strings are i^phase * prod_j X_j^{x_j} Z_j^{z_j}; qubit j occupies
// index bit (n-1-j) so masks line up with register indices.

namespace uqcm::codes {

using core::KrausChannel;
using core::UnitaryOp;
using linalg::cxd;
using linalg::Matrix;

class PauliString {
public:
    PauliString(std::size_t n, std::uint64_t x_bits, std::uint64_t z_bits,
                int phase_pow = 0);

    static PauliString identity(std::size_t n);
    // "XXI", "+ZZI", "-iXY" ... optional sign prefix, then I/X/Y/Z per qubit
    static PauliString parse(const std::string& text);
    // single-qubit Pauli ('X','Y','Z') at wire j
    static PauliString single(std::size_t n, char which, std::size_t wire);

    std::size_t size() const { return n_; }
    std::uint64_t x_bits() const { return x_; }
    std::uint64_t z_bits() const { return z_; }
    int phase_pow() const { return p_; }

    PauliString operator*(const PauliString& o) const;
    bool commutes_with(const PauliString& o) const;
    bool is_hermitian() const;
    std::size_t weight() const;  // non-identity sites
    bool same_unsigned(const PauliString& o) const;  // equal modulo phase

    Matrix to_matrix() const;
    std::string str() const;

private:
    std::size_t n_;
    std::uint64_t x_, z_;
    int p_;  // exponent of i, 0..3
};

class StabilizerCode {
public:
    StabilizerCode(std::size_t n, std::vector<PauliString> generators,
                   std::optional<PauliString> logical_x = {},
                   std::optional<PauliString> logical_z = {},
                   std::optional<std::string> label = {});

    std::size_t n() const { return n_; }
    std::size_t k() const { return n_ - gens_.size(); }
    const std::vector<PauliString>& generators() const { return gens_; }
    const std::optional<PauliString>& logical_x() const { return lx_; }
    const std::optional<PauliString>& logical_z() const { return lz_; }
    const std::optional<std::string>& label() const { return label_; }

private:
    std::size_t n_;
    std::vector<PauliString> gens_;
    std::optional<PauliString> lx_, lz_;
    std::optional<std::string> label_;
};

class CodeProjector {
public:
    explicit CodeProjector(Matrix m);

    const Matrix& matrix() const { return m_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return m_.rows(); }
    // orthonormal basis of the code space (encoding isometry, d x rank)
    const Matrix& isometry() const { return iso_; }

private:
    Matrix m_;
    Matrix iso_;
    std::size_t rank_;
};

struct GaugeCode {
    std::size_t n;
    std::vector<PauliString> gauge_generators;
    std::vector<PauliString> stabilizer_generators;

    GaugeCode(std::size_t n, std::vector<PauliString> gauge,
              std::vector<PauliString> stabilizer);
};

// ---- operations ----

CodeProjector projector_from_stabilizers(const StabilizerCode& code);

struct KlReport {
    Matrix a;         // extracted coefficient matrix
    bool correctable;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};
KlReport kl_check(const CodeProjector& p, const std::vector<Matrix>& errors);

// Throws KLViolation when kl_check fails. The synthesized channel corrects
// every noise process supported on the span of `errors`; the leftover
// subspace is dumped onto a fixed codeword to stay trace preserving.
KrausChannel recovery_from_errors(const CodeProjector& p,
                                  const std::vector<Matrix>& errors);

// D(R ∘ N ∘ Enc, Enc) with Enc the encoding isometry channel; the identity
// on the code is represented by Enc itself so both sides share dimensions.
double qec_accuracy(const KrausChannel& recovery, const KrausChannel& noise,
                    const CodeProjector& p);

bool is_logical(const Matrix& u, const CodeProjector& p);
bool is_logical(const KrausChannel& ch, const CodeProjector& p);

struct TransversalReport {
    bool transversal;
    std::vector<Matrix> factors;  // per block, set when transversal
};
TransversalReport is_transversal(const UnitaryOp& u,
                                 const std::vector<std::vector<std::size_t>>& blocks);

struct SurveyEntry {
    std::vector<std::size_t> word;  // indices into the gate alphabet
    Matrix logical;                 // action in the code-space basis
};
std::vector<SurveyEntry> transversal_logical_survey(
    const StabilizerCode& code, const std::vector<Matrix>& single_block_gates,
    std::size_t max_word);

bool gauge_fix_admissible(const GaugeCode& c1, const GaugeCode& c2);

// V2^{(x) m} * V1; m must equal the outer code's physical qubit count.
Matrix concatenate(const Matrix& outer_encode, const Matrix& inner_encode,
                   std::size_t m);

// ---- classifiers and helpers ----

// Edge code: the encoding factors (up to wire choice) as identity-on-k-wires
// tensor an ancilla preparation on the rest.
bool is_edge_encoding(const Matrix& encode, std::size_t n_wires);

// All Pauli strings of weight <= t (identity included).
std::vector<PauliString> pauli_errors_up_to_weight(std::size_t n, std::size_t t);

// Smallest weight of a Pauli commuting with every stabilizer but outside
// the group (bounded search); nullopt when none exists up to max_weight.
std::optional<std::size_t> code_distance_report(const StabilizerCode& code,
                                                std::size_t max_weight);

}  // namespace uqcm::codes
