#include "uqcm/equivalence.hpp"

#include <chrono>

#include "uqcm/aqc.hpp"
#include "uqcm/mbqc.hpp"
#include "uqcm/tensor.hpp"

namespace uqcm::equiv {

using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

const char* model_name(Model m) {
    switch (m) {
        case Model::CircuitModel: return "circuit";
        case Model::Mps: return "mps";
        case Model::Mbqc: return "mbqc";
        case Model::Fkch: return "fkch";
    }
    return "?";
}

std::optional<Model> model_from_name(const std::string& name) {
    if (name == "circuit") return Model::CircuitModel;
    if (name == "mps") return Model::Mps;
    if (name == "mbqc") return Model::Mbqc;
    if (name == "fkch") return Model::Fkch;
    return std::nullopt;
}

namespace {

PureState mps_execute(const Circuit& c) {
    // stepwise: every gate application round-trips through the MPS layer
    PureState state = PureState::zero(std::vector<std::size_t>(c.wires, 2));
    for (const circuit::Gate& g : c.gates) {
        Vec amps = state.amplitudes();
        linalg::apply_on_targets(amps, state.dims(), g.matrix(), g.targets);
        PureState dense = PureState::normalized(std::move(amps), state.dims());
        state = tensor::mps_contract(tensor::state_to_mps(dense, 0, 0.0));
    }
    return state;
}

PureState fkch_execute(const Circuit& c) {
    PureState hist = aqc::history_state(
        c, PureState::zero(std::vector<std::size_t>(c.wires, 2)));
    return aqc::project_clock(hist, c, c.gates.size());
}

// one single-qubit gate on wire w through a 5-site pattern glued to the
// full register
PureState mbqc_apply_1q(const PureState& state, const Matrix& u, std::size_t w,
                        std::uint64_t seed) {
    const std::size_t n = state.dims().size();
    const std::size_t total = n + 4;
    if (total > desk_cap()) throw CapExceeded(total, desk_cap());

    // extend with four fresh |+> sites and entangle the chain w-n-...-n+3
    const std::size_t ext = std::size_t(1) << 4;
    Vec amps(state.dim() * ext);
    const double scale = 0.25;  // (1/sqrt(2))^4
    for (std::size_t i = 0; i < state.dim(); ++i)
        for (std::size_t j = 0; j < ext; ++j)
            amps[i * ext + j] = state.amplitudes()[i] * scale;
    auto chain_mask = [&](std::size_t a, std::size_t b) {
        return (std::size_t(1) << (total - 1 - a)) |
               (std::size_t(1) << (total - 1 - b));
    };
    kernels::phase_mask(amps.data(), amps.size(), chain_mask(w, n), cxd{-1.0, 0.0});
    for (std::size_t k = 0; k < 3; ++k)
        kernels::phase_mask(amps.data(), amps.size(), chain_mask(n + k, n + k + 1),
                            cxd{-1.0, 0.0});
    PureState resource =
        PureState::normalized(std::move(amps), std::vector<std::size_t>(total, 2));

    // wire pattern remapped onto sites {w, n, n+1, n+2} -> output n+3
    auto angles = mbqc::wire_angles(u);
    std::vector<mbqc::MeasStep> steps{
        {w, mbqc::Plane::XY, angles[0], {}},
        {n, mbqc::Plane::XY, angles[1], {0}},
        {n + 1, mbqc::Plane::XY, angles[2], {1}},
        {n + 2, mbqc::Plane::XY, angles[3], {0, 2}},
    };
    std::vector<std::size_t> outputs;
    for (std::size_t i = 0; i < n; ++i)
        if (i != w) outputs.push_back(i);
    outputs.push_back(n + 3);
    std::vector<mbqc::OutputCorrection> corr(outputs.size());
    corr.back() = {{1, 3}, {0, 2}};

    mbqc::MeasurementPattern pattern(total, std::move(steps), {w}, std::move(outputs),
                                     std::move(corr));
    auto run = mbqc::run_pattern(resource, pattern, mbqc::Branch::random(seed));

    // undo the byproduct on the teleported wire, then put it back at w
    const std::size_t nout = run.final_state.dims().size();
    Vec out = run.final_state.amplitudes();
    {
        const std::uint64_t bit = 1ull;  // last output, qubit nout-1
        const bool x = run.byproduct.x_bits() & bit;
        const bool z = run.byproduct.z_bits() & bit;
        Matrix fix = Matrix::identity(2);
        if (x) fix = Matrix(2, 2, {0, 1, 1, 0}) * fix;
        if (z) fix = Matrix(2, 2, {1, 0, 0, -1}) * fix;
        linalg::apply_on_targets(out, run.final_state.dims(), fix.adjoint(),
                                 {nout - 1});
    }
    // outputs order: [others ascending, new wire]; move the last wire to w
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i == w ? n - 1 : (i < w ? i : i - 1);
    Vec restored = linalg::permute_wires(out, std::vector<std::size_t>(n, 2), order);
    return PureState::normalized(std::move(restored), state.dims());
}

}  // namespace

PureState mbqc_execute(const Circuit& c, std::uint64_t seed) {
    PureState state = PureState::zero(std::vector<std::size_t>(c.wires, 2));
    std::uint64_t gate_seed = seed;
    for (const circuit::Gate& g : c.gates) {
        gate_seed = gate_seed * 6364136223846793005ull + 1442695040888963407ull;
        switch (g.kind) {
            case circuit::GateKind::CZ:
                state = core::apply_unitary(
                    state, core::UnitaryOp(g.matrix(), {2, 2}), g.targets);
                break;
            case circuit::GateKind::CNOT: {
                // H on the target conjugates CZ into CNOT
                const std::size_t tgt = g.targets[1];
                const Matrix h = circuit::Gate(circuit::GateKind::H, {0}).matrix();
                Matrix cz = circuit::Gate(circuit::GateKind::CZ, {0, 1}).matrix();
                state = mbqc_apply_1q(state, h, tgt, gate_seed);
                state = core::apply_unitary(state, core::UnitaryOp(cz, {2, 2}),
                                            g.targets);
                gate_seed = gate_seed * 6364136223846793005ull + 1442695040888963407ull;
                state = mbqc_apply_1q(state, h, tgt, gate_seed);
                break;
            }
            default:
                state = mbqc_apply_1q(state, g.matrix(), g.targets[0], gate_seed);
        }
    }
    return state;
}

EquivReport cross_model_equivalence(const Circuit& c, const std::vector<Model>& models,
                                    double tol, std::uint64_t seed) {
    EquivReport report;
    report.tolerance = tol;
    report.pass = true;

    for (Model m : models) {
        ModelOutcome out;
        out.model = m;
        out.ok = true;
        out.runtime_ms = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            switch (m) {
                case Model::CircuitModel:
                    out.state = circuit::simulate(c);
                    break;
                case Model::Mps:
                    out.state = mps_execute(c);
                    break;
                case Model::Mbqc:
                    out.state = mbqc_execute(c, seed);
                    break;
                case Model::Fkch:
                    out.state = fkch_execute(c);
                    break;
            }
        } catch (const std::exception& e) {
            out.ok = false;
            out.error = e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        out.runtime_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.outcomes.push_back(std::move(out));
    }

    for (std::size_t i = 0; i < report.outcomes.size(); ++i)
        for (std::size_t j = i + 1; j < report.outcomes.size(); ++j) {
            const ModelOutcome& a = report.outcomes[i];
            const ModelOutcome& b = report.outcomes[j];
            if (!a.ok || !b.ok) continue;
            const double f = core::fidelity(*a.state, *b.state);
            report.fidelities.push_back({a.model, b.model, f});
            if (f < 1.0 - tol) report.pass = false;
        }
    return report;
}

}  // namespace uqcm::equiv
