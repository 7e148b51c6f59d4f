#pragma once

#include <optional>
#include <vector>

#include "uqcm/errors.hpp"
#include "uqcm/linalg.hpp"

// States, unitaries, channels, Choi states, dilations and quantum combs —
// the dense ground truth every other representation is checked against.
// All values are immutable after construction and all operations are pure.

namespace uqcm::core {

using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

// Normalized amplitude vector over a multi-qudit register.
class PureState {
public:
    PureState(Vec amplitudes, std::vector<std::size_t> dims);

    // Rescales to unit norm instead of rejecting.
    static PureState normalized(Vec amplitudes, std::vector<std::size_t> dims);
    // |0...0> on the given register.
    static PureState zero(std::vector<std::size_t> dims);
    static PureState computational(std::size_t index, std::vector<std::size_t> dims);

    const Vec& amplitudes() const { return amps_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return amps_.size(); }

private:
    Vec amps_;
    std::vector<std::size_t> dims_;
};

class UnitaryOp {
public:
    UnitaryOp(Matrix m, std::vector<std::size_t> dims);
    explicit UnitaryOp(Matrix m);  // single factor of size m.rows()

    const Matrix& matrix() const { return m_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim() const { return m_.rows(); }

private:
    Matrix m_;
    std::vector<std::size_t> dims_;
};

// CPTP map as a Kraus operator list; rectangular operators describe
// isometries between different input/output dimensions.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<Matrix> kraus_ops);

    static KrausChannel from_unitary(const Matrix& u);
    static KrausChannel identity(std::size_t dim);

    const std::vector<Matrix>& kraus_ops() const { return ops_; }
    std::size_t input_dim() const { return ops_.front().cols(); }
    std::size_t output_dim() const { return ops_.front().rows(); }

private:
    std::vector<Matrix> ops_;
};

// Density matrix on output (x) input representing a channel (Eq-form
// with the normalized maximally entangled state, so trace is one and the
// input marginal is maximally mixed).
class ChoiState {
public:
    ChoiState(Matrix m, std::size_t input_dim, std::size_t output_dim);

    const Matrix& matrix() const { return m_; }
    std::size_t input_dim() const { return in_; }
    std::size_t output_dim() const { return out_; }

private:
    Matrix m_;
    std::size_t in_, out_;
};

// Fixed unitary "teeth" on data (x) adversary interleaved with open slots
// on the data wire; teeth count = slots + 1.
struct Comb {
    std::size_t slots;
    std::vector<UnitaryOp> teeth;  // each on data (x) adversary
    std::size_t data_dim;
    std::size_t adversary_dim;

    Comb(std::size_t slots, std::vector<UnitaryOp> teeth, std::size_t data_dim,
         std::size_t adversary_dim);
};

// ---- operations ----

PureState apply_unitary(const PureState& state, const UnitaryOp& u,
                        const std::vector<std::size_t>& targets);

Matrix channel_apply(const Matrix& rho, const KrausChannel& ch);

ChoiState channel_to_choi(const KrausChannel& ch);
KrausChannel choi_to_channel(const ChoiState& choi);

struct Dilation {
    UnitaryOp unitary;    // on system (x) ancilla
    PureState ancilla_init;
    std::size_t ancilla_dim;
};
Dilation dilate_channel(const KrausChannel& ch);

KrausChannel comb_compose(const Comb& comb, const std::vector<KrausChannel>& inputs);

// second ∘ first, Kraus products compressed through the Choi form when the
// operator count outgrows the channel rank bound.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

// Trace distance between Choi states; a two-sided proxy of the diamond norm.
double channel_distance(const KrausChannel& a, const KrausChannel& b);

struct UncertaintyReport {
    double delta_a, delta_b;
    double rs_bound;               // right-hand side of the RS relation
    std::optional<double> tau_a;   // absent when <[A,B]> vanishes
};
UncertaintyReport uncertainty_bounds(const PureState& state, const Matrix& a,
                                     const Matrix& b);

// ---- comparison helpers (global phase ignored throughout) ----

double fidelity(const PureState& a, const PureState& b);
double fidelity(const Vec& a, const Vec& b);
// ||a - e^{i theta} b|| with theta from the Frobenius inner product;
// spectral norm of the aligned difference.
double phase_aligned_distance(const Matrix& a, const Matrix& b);
double phase_aligned_fro_distance(const Matrix& a, const Matrix& b);

}  // namespace uqcm::core
