#include "uqcm/algorithms.hpp"

#include <cmath>
#include <random>

namespace uqcm::algo {

PhaseSequence::PhaseSequence(std::vector<double> p) : phases(std::move(p)) {
    for (double v : phases)
        if (!std::isfinite(v))
            throw std::invalid_argument("PhaseSequence: non-finite phase");
}

SVDecomposition singular_decomposition(const Matrix& a) { return linalg::svd(a); }

BlockEncoding::BlockEncoding(UnitaryOp u_, std::size_t encoded_dim_)
    : u(std::move(u_)), pi_in(u.dim(), u.dim()), pi_out(u.dim(), u.dim()),
      encoded_dim(encoded_dim_) {
    if (encoded_dim == 0 || encoded_dim > u.dim())
        throw std::invalid_argument("BlockEncoding: encoded dimension out of range");
    for (std::size_t i = 0; i < encoded_dim; ++i) {
        pi_in(i, i) = 1.0;
        pi_out(i, i) = 1.0;
    }
    auto s = linalg::svd(block());
    if (!s.sigma.empty() && s.sigma[0] > 1.0 + 1e-10)
        throw std::invalid_argument("BlockEncoding: block exceeds unit norm");
}

Matrix BlockEncoding::block() const {
    Matrix b(encoded_dim, encoded_dim);
    for (std::size_t i = 0; i < encoded_dim; ++i)
        for (std::size_t j = 0; j < encoded_dim; ++j) b(i, j) = u.matrix()(i, j);
    return b;
}

UnitaryOp qsp_unitary(const Matrix& g, const PhaseSequence& phases) {
    if (g.rows() != 2 || !g.square() || !linalg::is_unitary(g, 1e-10))
        throw std::invalid_argument("qsp_unitary: 2x2 unitary required");
    Matrix acc = Matrix::identity(2);
    for (double phi : phases.phases) {
        Matrix z(2, 2);
        z(0, 0) = std::exp(cxd{0, phi});
        z(1, 1) = std::exp(cxd{0, -phi});
        acc = z * (g * acc);
    }
    if (phases.phases.empty()) return UnitaryOp(acc);
    return UnitaryOp(std::move(acc));
}

BlockEncoding block_encode(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("block_encode: square matrix required");
    const std::size_t d = a.rows();

    if (linalg::is_hermitian(a, 1e-12)) {
        // Hermitian completion keeps the eigenvectors of a, so signed
        // eigenvalues stay visible to the transformation
        auto e = linalg::eig_hermitian(a);
        const double nrm =
            std::max(std::abs(e.values.front()), std::abs(e.values.back()));
        if (nrm > 1.0 + 1e-10) throw NormTooLarge(nrm);
        // snap |x| ~ 1 so roundoff does not leak sqrt-amplified residue
        Matrix c = linalg::hermitian_function(a, [](double x) {
            const double s = std::abs(x) >= 1.0 - 1e-12 ? 0.0
                                                        : std::sqrt(1.0 - x * x);
            return cxd{s, 0.0};
        });
        Matrix u(2 * d, 2 * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                u(i, j) = a(i, j);
                u(i, d + j) = c(i, j);
                u(d + i, j) = c(i, j);
                u(d + i, d + j) = -a(i, j);
            }
        return BlockEncoding(UnitaryOp(std::move(u), {2, d}), d);
    }

    auto s = linalg::svd(a);
    const double nrm = s.sigma.empty() ? 0.0 : s.sigma[0];
    if (nrm > 1.0 + 1e-10) throw NormTooLarge(nrm);
    // U = [[W S V*, W C W*], [V C V*, -V S W*]] with C = sqrt(1 - S^2)
    const std::size_t k = s.sigma.size();
    Matrix ws = s.u, wc = s.u, vc = s.v, vs = s.v;
    for (std::size_t j = 0; j < k; ++j) {
        // snap near-unit singular values for the same reason as above
        const double sg = s.sigma[j] >= 1.0 - 1e-12 ? 1.0 : s.sigma[j];
        const double cg = sg >= 1.0 ? 0.0 : std::sqrt(1.0 - sg * sg);
        for (std::size_t i = 0; i < d; ++i) {
            ws(i, j) *= sg;
            wc(i, j) *= cg;
            vc(i, j) *= cg;
            vs(i, j) *= sg;
        }
    }
    Matrix tl = ws * s.v.adjoint();
    Matrix tr = wc * s.u.adjoint();
    Matrix bl = vc * s.v.adjoint();
    Matrix br = vs * s.u.adjoint();
    Matrix u(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            u(i, j) = tl(i, j);
            u(i, d + j) = tr(i, j);
            u(d + i, j) = bl(i, j);
            u(d + i, d + j) = -br(i, j);
        }
    return BlockEncoding(UnitaryOp(std::move(u), {2, d}), d);
}

namespace {

// e^{i phi P} = 1 + (e^{i phi} - 1) P for a diagonal 0/1 projector
Matrix phase_on_projector(const Matrix& p, double phi) {
    Matrix m = Matrix::identity(p.rows());
    const cxd f = std::exp(cxd{0, phi}) - 1.0;
    for (std::size_t i = 0; i < p.rows(); ++i) m(i, i) += f * p(i, i);
    return m;
}

}  // namespace

Matrix qsvt_unitary(const BlockEncoding& be, const PhaseSequence& phases) {
    Matrix m = be.u.matrix();
    for (std::size_t k = 1; k <= phases.size(); ++k) {
        const bool odd = (k % 2) == 1;
        const Matrix& proj = odd ? be.pi_out : be.pi_in;
        m = phase_on_projector(proj, phases.phases[k - 1]) * m;
        m = (odd ? be.u.matrix().adjoint() : be.u.matrix()) * m;
    }
    return m;
}

Matrix qsvt_apply(const BlockEncoding& be, const PhaseSequence& phases) {
    Matrix full = qsvt_unitary(be, phases);
    Matrix b(be.encoded_dim, be.encoded_dim);
    for (std::size_t i = 0; i < be.encoded_dim; ++i)
        for (std::size_t j = 0; j < be.encoded_dim; ++j) b(i, j) = full(i, j);
    return b;
}

cxd qsp_reduction_oracle(double sigma, const PhaseSequence& phases) {
    const double c = std::sqrt(std::max(0.0, 1.0 - sigma * sigma));
    // reflection G and the phase gate diag(e^{i phi}, 1) in the invariant frame
    cxd m00{sigma, 0.0}, m01{c, 0.0}, m10{c, 0.0}, m11{-sigma, 0.0};
    for (double phi : phases.phases) {
        const cxd e = std::exp(cxd{0, phi});
        // apply E(phi) then G on the left: M <- G E M
        const cxd t00 = e * m00, t01 = e * m01;
        const cxd g00 = sigma * t00 + c * m10;
        const cxd g01 = sigma * t01 + c * m11;
        const cxd g10 = c * t00 - sigma * m10;
        const cxd g11 = c * t01 - sigma * m11;
        m00 = g00;
        m01 = g01;
        m10 = g10;
        m11 = g11;
    }
    return m00;
}

LcuResult lcu_combine(const std::vector<LcuEntry>& entries) {
    if (entries.empty()) throw std::invalid_argument("lcu_combine: no entries");
    const std::size_t d = entries.front().be.encoded_dim;
    const std::size_t D = entries.front().be.u.dim();
    double s = 0.0;
    for (const LcuEntry& e : entries) {
        if (e.be.encoded_dim != d || e.be.u.dim() != D)
            throw std::invalid_argument("lcu_combine: mismatched encodings");
        s += std::abs(e.beta);
    }
    if (s <= 0.0) throw std::invalid_argument("lcu_combine: zero total weight");

    const std::size_t m = entries.size();
    // preparation: any unitary whose first column is sqrt(|beta_i| / s)
    Matrix mu(m, 1);
    for (std::size_t i = 0; i < m; ++i)
        mu(i, 0) = std::sqrt(std::abs(entries[i].beta) / s);
    Matrix prep = linalg::orthonormal_completion(mu);

    // select: block-diagonal over the ancilla, beta phases folded in
    Matrix select(m * D, m * D);
    for (std::size_t i = 0; i < m; ++i) {
        Matrix block = qsvt_unitary(entries[i].be, entries[i].phases);
        const cxd phase = std::abs(entries[i].beta) > 0.0
                              ? entries[i].beta / std::abs(entries[i].beta)
                              : cxd{1.0, 0.0};
        for (std::size_t r = 0; r < D; ++r)
            for (std::size_t cc = 0; cc < D; ++cc)
                select(i * D + r, i * D + cc) = phase * block(r, cc);
    }

    const Matrix idd = Matrix::identity(D);
    Matrix full = linalg::kron(prep.adjoint(), idd) * select * linalg::kron(prep, idd);
    return LcuResult{BlockEncoding(UnitaryOp(std::move(full), {m, 2, d}), d), s};
}

HamSimResult hamiltonian_sim_lcu(const Matrix& h, double t, std::size_t degree) {
    if (!linalg::is_hermitian(h, 1e-10))
        throw std::invalid_argument("hamiltonian_sim_lcu: Hermitian matrix required");
    if (degree < 1)
        throw std::invalid_argument("hamiltonian_sim_lcu: degree must be >= 1");

    const double hnorm = linalg::spectral_norm(h);
    HamSimResult out;
    out.norm_warning = hnorm * std::abs(t) > 1.0 + 1e-12;

    BlockEncoding beh = block_encode(h);  // throws NormTooLarge when |h| > 1
    BlockEncoding bei = block_encode(Matrix::identity(h.rows()));

    // e^{iHt} = J0(t) T_0 + 2 sum_k (-1)^floor(k/2) J_k(t) T_k, even k from
    // the cosine and odd k (times i) from the sine
    auto bessel = [](int k, double x) {
        const double v = std::cyl_bessel_j(double(k), std::abs(x));
        return x < 0.0 && (k % 2) ? -v : v;
    };

    std::vector<LcuEntry> entries;
    for (std::size_t k = 0; k <= degree; ++k) {
        cxd gamma;
        if (k == 0) {
            gamma = bessel(0, t);
        } else if (k % 2 == 0) {
            gamma = 2.0 * ((k / 2) % 2 ? -1.0 : 1.0) * bessel(int(k), t);
        } else {
            gamma = cxd{0.0, 2.0} * (((k - 1) / 2) % 2 ? -1.0 : 1.0) * bessel(int(k), t);
        }
        if (std::abs(gamma) < 1e-300) continue;
        PhaseSequence phases(k >= 1 ? std::vector<double>(k - 1, M_PI)
                                    : std::vector<double>{});
        // the all-pi sequence realizes +/- T_k; fold the sign into beta
        const cxd tk_sign = k >= 1 ? qsp_reduction_oracle(1.0, phases) : cxd{1.0, 0.0};
        entries.push_back({gamma / tk_sign, k >= 1 ? beh : bei, phases});
    }

    LcuResult lcu = lcu_combine(entries);
    out.matrix = lcu.be.block();
    out.matrix *= cxd{lcu.subnormalization, 0.0};

    double tail = 0.0;
    for (std::size_t k = degree + 1; k <= degree + 60; ++k)
        tail += 2.0 * std::abs(bessel(int(k), t));
    out.truncation_bound = tail;
    return out;
}

SelectProcessor build_select_processor(const std::vector<UnitaryOp>& programs) {
    if (programs.empty() || programs.size() > 16)
        throw std::invalid_argument("build_select_processor: 1..16 programs required");
    const std::size_t d = programs.front().dim();
    for (const UnitaryOp& u : programs)
        if (u.dim() != d)
            throw std::invalid_argument("build_select_processor: data dimension mismatch");
    const std::size_t m = programs.size();
    Matrix g(d * m, d * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                g(r * m + i, c * m + i) = programs[i].matrix()(r, c);
    SelectProcessor out{UnitaryOp(std::move(g), {d, m}), {}};
    for (std::size_t i = 0; i < m; ++i)
        out.program_states.push_back(PureState::computational(i, {m}));
    return out;
}

namespace {

// data-independent residual program state for G acting as x on the data,
// or nullopt when G fails to implement x with the given program
std::optional<Vec> implements_gate(const Matrix& g, std::size_t d_data,
                                   std::size_t d_prog, const Vec& program,
                                   const Matrix& x) {
    std::optional<Vec> residual;
    for (std::size_t j = 0; j < d_data; ++j) {
        Vec in(d_data * d_prog, cxd{});
        for (std::size_t q = 0; q < d_prog; ++q) in[j * d_prog + q] = program[q];
        Vec out = linalg::mat_vec(g, in);

        Vec xe(d_data, cxd{});
        for (std::size_t y = 0; y < d_data; ++y) xe[y] = x(y, j);

        // residual program from the overlap with the expected data state
        Vec cand(d_prog, cxd{});
        for (std::size_t y = 0; y < d_data; ++y)
            for (std::size_t q = 0; q < d_prog; ++q)
                cand[q] += std::conj(xe[y]) * out[y * d_prog + q];
        if (std::abs(linalg::norm(cand) - 1.0) > 1e-9) return std::nullopt;
        // the full output must factor exactly as (x e_j) (x) cand
        for (std::size_t y = 0; y < d_data; ++y)
            for (std::size_t q = 0; q < d_prog; ++q)
                if (std::abs(out[y * d_prog + q] - xe[y] * cand[q]) > 1e-9)
                    return std::nullopt;
        if (!residual) {
            residual = cand;
        } else {
            for (std::size_t q = 0; q < d_prog; ++q)
                if (std::abs((*residual)[q] - cand[q]) > 1e-9) return std::nullopt;
        }
    }
    return residual;
}

}  // namespace

ProgrammingReport no_programming_check(const UnitaryOp& g, const PureState& pu,
                                       const PureState& pv, const Matrix& u,
                                       const Matrix& v) {
    if (g.dims().size() != 2)
        throw std::invalid_argument(
            "no_programming_check: processor dims must be {data, program}");
    const std::size_t d_data = g.dims()[0], d_prog = g.dims()[1];
    if (pu.dim() != d_prog || pv.dim() != d_prog || u.rows() != d_data ||
        v.rows() != d_data)
        throw std::invalid_argument("no_programming_check: dimension mismatch");

    ProgrammingReport rep;
    rep.implements_u =
        implements_gate(g.matrix(), d_data, d_prog, pu.amplitudes(), u).has_value();
    rep.implements_v =
        implements_gate(g.matrix(), d_data, d_prog, pv.amplitudes(), v).has_value();
    rep.program_overlap = linalg::dot(pu.amplitudes(), pv.amplitudes());
    return rep;
}

namespace {

void push_bits(std::vector<std::uint8_t>& bytes, std::size_t& cursor,
               std::uint32_t value, std::size_t width) {
    for (std::size_t b = 0; b < width; ++b, ++cursor) {
        if (cursor / 8 >= bytes.size()) bytes.push_back(0);
        if ((value >> b) & 1u) bytes[cursor / 8] |= std::uint8_t(1u << (cursor % 8));
    }
}

std::uint32_t read_bits(const std::vector<std::uint8_t>& bytes, std::size_t& cursor,
                        std::size_t width) {
    std::uint32_t v = 0;
    for (std::size_t b = 0; b < width; ++b, ++cursor) {
        if (cursor / 8 >= bytes.size())
            throw std::invalid_argument("program_decode: truncated bit stream");
        if ((bytes[cursor / 8] >> (cursor % 8)) & 1u) v |= std::uint32_t(1u << b);
    }
    return v;
}

}  // namespace

ClassicalProgram program_encode(const Circuit& c) {
    if (c.wires >= 0xFF)
        throw std::invalid_argument("program_encode: wire index field is 8 bits");
    if (c.gates.size() > 0xFF)
        throw std::invalid_argument("program_encode: step field is 8 bits");
    ClassicalProgram p;
    p.qubits = std::uint8_t(c.wires);
    p.gate_count = c.gates.size();
    std::size_t cursor = 0;
    for (std::size_t step = 0; step < c.gates.size(); ++step) {
        const circuit::Gate& gate = c.gates[step];
        std::uint32_t kind;
        switch (gate.kind) {
            case circuit::GateKind::H: kind = 0b00; break;
            case circuit::GateKind::T: kind = 0b01; break;
            case circuit::GateKind::CZ: kind = 0b10; break;
            default:
                throw UnsupportedGate(circuit::gate_name(gate.kind));
        }
        push_bits(p.bits, cursor, kind, 2);
        push_bits(p.bits, cursor, std::uint32_t(step), 8);
        push_bits(p.bits, cursor, std::uint32_t(gate.targets[0]), 8);
        push_bits(p.bits, cursor,
                  gate.targets.size() > 1 ? std::uint32_t(gate.targets[1]) : 0xFFu, 8);
    }
    return p;
}

Circuit program_decode(const ClassicalProgram& p) {
    std::vector<circuit::Gate> gates;
    std::size_t cursor = 0;
    for (std::size_t step = 0; step < p.gate_count; ++step) {
        const std::uint32_t kind = read_bits(p.bits, cursor, 2);
        const std::uint32_t when = read_bits(p.bits, cursor, 8);
        const std::uint32_t w0 = read_bits(p.bits, cursor, 8);
        const std::uint32_t w1 = read_bits(p.bits, cursor, 8);
        if (when != step)
            throw std::invalid_argument("program_decode: step field out of order");
        switch (kind) {
            case 0b00:
                gates.emplace_back(circuit::GateKind::H, std::vector<std::size_t>{w0});
                break;
            case 0b01:
                gates.emplace_back(circuit::GateKind::T, std::vector<std::size_t>{w0});
                break;
            case 0b10:
                gates.emplace_back(circuit::GateKind::CZ,
                                   std::vector<std::size_t>{w0, w1});
                break;
            default:
                throw std::invalid_argument("program_decode: reserved gate kind 11");
        }
    }
    return Circuit(p.qubits, std::move(gates));
}

PhaseFit fit_qsp_phases(const std::vector<std::pair<double, cxd>>& targets,
                        std::size_t length, std::size_t sweeps, std::uint64_t seed) {
    if (length > 8)
        throw std::invalid_argument("fit_qsp_phases: at most 8 phases supported");
    std::mt19937_64 gen(seed);
    auto uni = [&gen] { return (gen() >> 11) * 0x1.0p-53; };

    auto objective = [&](const PhaseSequence& ph) {
        double r = 0.0;
        for (const auto& [sigma, want] : targets)
            r += std::norm(qsp_reduction_oracle(sigma, ph) - want);
        return r;
    };

    PhaseFit result{PhaseSequence(std::vector<double>(length, 0.0)), 1e300};
    for (int restart = 0; restart < 4; ++restart) {
        PhaseSequence phases(std::vector<double>(length, 0.0));
        for (double& p : phases.phases) p = (uni() - 0.5) * 2.0 * M_PI;

        for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
            for (std::size_t k = 0; k < length; ++k) {
                // coarse scan, then ternary refinement of the coordinate
                double arg = phases.phases[k];
                phases.phases[k] = arg;
                double fbest = objective(phases);
                for (int grid = 0; grid < 64; ++grid) {
                    phases.phases[k] = -M_PI + 2.0 * M_PI * grid / 64.0;
                    const double val = objective(phases);
                    if (val < fbest) {
                        fbest = val;
                        arg = phases.phases[k];
                    }
                }
                double lo = arg - 0.15, hi = arg + 0.15;
                for (int it = 0; it < 40; ++it) {
                    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                    phases.phases[k] = m1;
                    const double f1 = objective(phases);
                    phases.phases[k] = m2;
                    const double f2 = objective(phases);
                    if (f1 < f2) hi = m2; else lo = m1;
                }
                phases.phases[k] = 0.5 * (lo + hi);
                if (objective(phases) > fbest) phases.phases[k] = arg;
            }
        }
        const double res = objective(phases);
        if (res < result.residual) result = PhaseFit{phases, res};
    }
    return result;
}

}  // namespace uqcm::algo
