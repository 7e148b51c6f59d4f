#include "uqcm/core.hpp"

#include <cmath>
#include <cstdlib>

namespace uqcm {

std::size_t desk_cap() {
    static std::size_t cap = [] {
        if (const char* env = std::getenv("UQCM_DESK_CAP")) {
            const long v = std::atol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(12);
    }();
    return cap;
}

}  // namespace uqcm

namespace uqcm::core {

using linalg::dim_product;

PureState::PureState(Vec amplitudes, std::vector<std::size_t> dims)
    : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (amps_.size() != dim_product(dims_))
        throw std::invalid_argument("PureState: length does not match dims");
    const double n = linalg::norm(amps_);
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: not normalized");
}

PureState PureState::normalized(Vec amplitudes, std::vector<std::size_t> dims) {
    linalg::normalize(amplitudes);
    return PureState(std::move(amplitudes), std::move(dims));
}

PureState PureState::zero(std::vector<std::size_t> dims) {
    return computational(0, std::move(dims));
}

PureState PureState::computational(std::size_t index, std::vector<std::size_t> dims) {
    Vec v(dim_product(dims), cxd{});
    v.at(index) = 1.0;
    return PureState(std::move(v), std::move(dims));
}

UnitaryOp::UnitaryOp(Matrix m, std::vector<std::size_t> dims)
    : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != dim_product(dims_))
        throw std::invalid_argument("UnitaryOp: matrix size does not match dims");
    if (!linalg::is_unitary(m_, 1e-10))
        throw std::invalid_argument("UnitaryOp: matrix is not unitary");
}

UnitaryOp::UnitaryOp(Matrix m) : m_(std::move(m)), dims_{m_.rows()} {
    if (!linalg::is_unitary(m_, 1e-10))
        throw std::invalid_argument("UnitaryOp: matrix is not unitary");
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops_(std::move(kraus_ops)) {
    if (ops_.empty()) throw std::invalid_argument("KrausChannel: empty Kraus set");
    const std::size_t r = ops_.front().rows(), c = ops_.front().cols();
    for (const Matrix& k : ops_)
        if (k.rows() != r || k.cols() != c)
            throw std::invalid_argument("KrausChannel: inconsistent Kraus shapes");
    Matrix sum(c, c);
    for (const Matrix& k : ops_) sum += k.adjoint() * k;
    if (!linalg::approx_equal(sum, Matrix::identity(c), 1e-10))
        throw std::invalid_argument("KrausChannel: Kraus set is not trace preserving");
}

KrausChannel KrausChannel::from_unitary(const Matrix& u) {
    return KrausChannel({u});
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel({Matrix::identity(dim)});
}

ChoiState::ChoiState(Matrix m, std::size_t input_dim, std::size_t output_dim)
    : m_(std::move(m)), in_(input_dim), out_(output_dim) {
    if (m_.rows() != in_ * out_ || !m_.square())
        throw std::invalid_argument("ChoiState: matrix size mismatch");
    auto e = linalg::eig_hermitian((m_ + m_.adjoint()) * cxd{0.5, 0.0});
    if (e.values.front() < -1e-10)
        throw std::invalid_argument("ChoiState: matrix is not positive semidefinite");
    Matrix marg = linalg::partial_trace(m_, {out_, in_}, {1});
    Matrix expect = Matrix::identity(in_) * cxd{1.0 / double(in_), 0.0};
    if (!linalg::approx_equal(marg, expect, 1e-10))
        throw std::invalid_argument("ChoiState: input marginal is not maximally mixed");
}

Comb::Comb(std::size_t slots_, std::vector<UnitaryOp> teeth_, std::size_t data_dim_,
           std::size_t adversary_dim_)
    : slots(slots_), teeth(std::move(teeth_)), data_dim(data_dim_),
      adversary_dim(adversary_dim_) {
    if (teeth.size() != slots + 1)
        throw std::invalid_argument("Comb: teeth count must be slots + 1");
    for (const UnitaryOp& t : teeth)
        if (t.dim() != data_dim * adversary_dim)
            throw std::invalid_argument("Comb: tooth dimension mismatch");
}

PureState apply_unitary(const PureState& state, const UnitaryOp& u,
                        const std::vector<std::size_t>& targets) {
    std::size_t tdim = 1;
    for (std::size_t t : targets) {
        if (t >= state.dims().size())
            throw std::invalid_argument("apply_unitary: target out of range");
        tdim *= state.dims()[t];
    }
    if (tdim != u.dim())
        throw std::invalid_argument("apply_unitary: gate/target dimension mismatch");
    Vec amps = state.amplitudes();
    linalg::apply_on_targets(amps, state.dims(), u.matrix(), targets);
    return PureState::normalized(std::move(amps), state.dims());
}

Matrix channel_apply(const Matrix& rho, const KrausChannel& ch) {
    if (rho.rows() != ch.input_dim() || !rho.square())
        throw std::invalid_argument("channel_apply: dimension mismatch");
    Matrix out(ch.output_dim(), ch.output_dim());
    for (const Matrix& k : ch.kraus_ops()) out += k * rho * k.adjoint();
    return out;
}

ChoiState channel_to_choi(const KrausChannel& ch) {
    const std::size_t din = ch.input_dim(), dout = ch.output_dim();
    Matrix omega(dout * din, dout * din);
    // (K (x) 1)|omega> has component K[o][i] / sqrt(din) at joint index (o, i)
    for (const Matrix& k : ch.kraus_ops()) {
        Vec v(dout * din);
        for (std::size_t o = 0; o < dout; ++o)
            for (std::size_t i = 0; i < din; ++i) v[o * din + i] = k(o, i);
        Matrix contrib = linalg::outer(v, v);
        contrib *= cxd{1.0 / double(din), 0.0};
        omega += contrib;
    }
    return ChoiState(std::move(omega), din, dout);
}

KrausChannel choi_to_channel(const ChoiState& choi) {
    const std::size_t din = choi.input_dim(), dout = choi.output_dim();
    auto e = linalg::eig_hermitian(choi.matrix());
    if (e.values.front() < -1e-10)
        throw std::invalid_argument("choi_to_channel: matrix is not positive semidefinite");
    std::vector<Matrix> kraus;
    for (std::size_t j = 0; j < e.values.size(); ++j) {
        const double lam = e.values[j];
        if (lam <= 1e-12) continue;
        const double w = std::sqrt(lam * double(din));
        Matrix k(dout, din);
        for (std::size_t o = 0; o < dout; ++o)
            for (std::size_t i = 0; i < din; ++i)
                k(o, i) = w * e.vectors(o * din + i, j);
        kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus));
}

Dilation dilate_channel(const KrausChannel& ch) {
    const std::size_t d = ch.input_dim();
    if (ch.output_dim() != d)
        throw std::invalid_argument(
            "dilate_channel: square channels only (input dim = output dim)");
    const std::size_t r = ch.kraus_ops().size();
    const std::size_t a = std::max<std::size_t>(r, 1);
    const std::size_t D = d * a;

    // V = sum_m |m> K_m as columns over joint index (s, m) = s*a + m
    Matrix iso(D, d);
    for (std::size_t m = 0; m < r; ++m) {
        const Matrix& k = ch.kraus_ops()[m];
        for (std::size_t s = 0; s < d; ++s)
            for (std::size_t j = 0; j < d; ++j) iso(s * a + m, j) = k(s, j);
    }
    Matrix completed = linalg::orthonormal_completion(iso);

    // place the isometry on the |anc = 0> input block: column j*a of U
    Matrix u(D, D);
    std::vector<bool> taken(D, false);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < D; ++i) u(i, j * a) = completed(i, j);
        taken[j * a] = true;
    }
    std::size_t src = d;
    for (std::size_t col = 0; col < D; ++col) {
        if (taken[col]) continue;
        for (std::size_t i = 0; i < D; ++i) u(i, col) = completed(i, src);
        ++src;
    }

    return Dilation{UnitaryOp(std::move(u), {d, a}),
                    PureState::computational(0, {a}), a};
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
    if (second.input_dim() != first.output_dim())
        throw std::invalid_argument("compose: channel dimension mismatch");
    std::vector<Matrix> ops;
    ops.reserve(second.kraus_ops().size() * first.kraus_ops().size());
    for (const Matrix& s : second.kraus_ops())
        for (const Matrix& f : first.kraus_ops()) ops.push_back(s * f);
    KrausChannel raw(std::move(ops));
    if (raw.kraus_ops().size() <= raw.input_dim() * raw.output_dim()) return raw;
    return choi_to_channel(channel_to_choi(raw));
}

KrausChannel comb_compose(const Comb& comb, const std::vector<KrausChannel>& inputs) {
    if (inputs.size() != comb.slots)
        throw std::invalid_argument("comb_compose: slot count mismatch");
    const std::size_t d = comb.data_dim, a = comb.adversary_dim;
    for (const KrausChannel& ch : inputs)
        if (ch.input_dim() != d || ch.output_dim() != d)
            throw std::invalid_argument("comb_compose: input channel dimension mismatch");

    // adversary preparation |0>: d -> d*a isometry
    Matrix prep(d * a, d);
    for (std::size_t s = 0; s < d; ++s) prep(s * a, s) = 1.0;
    KrausChannel acc({prep});

    const Matrix ida = Matrix::identity(a);
    for (std::size_t slot = 0; slot <= comb.slots; ++slot) {
        acc = compose(KrausChannel::from_unitary(comb.teeth[slot].matrix()), acc);
        if (slot < comb.slots) {
            std::vector<Matrix> lifted;
            for (const Matrix& k : inputs[slot].kraus_ops())
                lifted.push_back(linalg::kron(k, ida));
            acc = compose(KrausChannel(std::move(lifted)), acc);
        }
    }

    // trace out the adversary: Kraus {1_d (x) <m|}
    std::vector<Matrix> tr;
    for (std::size_t m = 0; m < a; ++m) {
        Matrix k(d, d * a);
        for (std::size_t s = 0; s < d; ++s) k(s, s * a + m) = 1.0;
        tr.push_back(std::move(k));
    }
    return compose(KrausChannel(std::move(tr)), acc);
}

double channel_distance(const KrausChannel& a, const KrausChannel& b) {
    if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim())
        throw std::invalid_argument("channel_distance: dimension mismatch");
    Matrix diff = channel_to_choi(a).matrix() - channel_to_choi(b).matrix();
    return 0.5 * linalg::trace_norm_hermitian(diff);
}

UncertaintyReport uncertainty_bounds(const PureState& state, const Matrix& a,
                                     const Matrix& b) {
    if (!linalg::is_hermitian(a, 1e-10) || !linalg::is_hermitian(b, 1e-10))
        throw std::invalid_argument("uncertainty_bounds: observables must be Hermitian");
    if (a.rows() != state.dim() || b.rows() != state.dim())
        throw std::invalid_argument("uncertainty_bounds: dimension mismatch");

    const Vec& psi = state.amplitudes();
    auto expect = [&](const Matrix& m) {
        return linalg::dot(psi, linalg::mat_vec(m, psi));
    };

    const double ea = expect(a).real();
    const double eb = expect(b).real();
    const double ea2 = expect(a * a).real();
    const double eb2 = expect(b * b).real();
    const cxd eab = expect(a * b);

    UncertaintyReport rep;
    rep.delta_a = std::sqrt(std::max(0.0, ea2 - ea * ea));
    rep.delta_b = std::sqrt(std::max(0.0, eb2 - eb * eb));
    // <{A,B}>/2 = Re<AB>, <[A,B]>/(2i) = Im<AB>
    const double sym = eab.real() - ea * eb;
    const double comm = eab.imag();
    rep.rs_bound = sym * sym + comm * comm;

    const double comm_abs = 2.0 * std::abs(comm);  // |<[A,B]>| = |<Adot>| for B = H
    if (comm_abs > 1e-12) rep.tau_a = rep.delta_a / comm_abs;
    return rep;
}

double fidelity(const Vec& a, const Vec& b) {
    return std::norm(linalg::dot(a, b));
}

double fidelity(const PureState& a, const PureState& b) {
    return fidelity(a.amplitudes(), b.amplitudes());
}

namespace {

Matrix aligned_diff(const Matrix& a, const Matrix& b) {
    cxd t{};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t += std::conj(a(i, j)) * b(i, j);
    const cxd phase = std::abs(t) > 1e-300 ? std::conj(t) / std::abs(t) : cxd{1.0, 0.0};
    Matrix d = b;
    d *= phase;
    d -= a;
    return d;
}

}  // namespace

double phase_aligned_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("phase_aligned_distance: shape mismatch");
    return linalg::spectral_norm(aligned_diff(a, b));
}

double phase_aligned_fro_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("phase_aligned_fro_distance: shape mismatch");
    return aligned_diff(a, b).frobenius_norm();
}

}  // namespace uqcm::core
