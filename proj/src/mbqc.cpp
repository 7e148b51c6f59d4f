#include "uqcm/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace uqcm::mbqc {

Graph::Graph(std::size_t vertices_,
             std::vector<std::pair<std::size_t, std::size_t>> edges_)
    : vertices(vertices_), edges(std::move(edges_)) {
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("Graph: self loop");
        if (a >= vertices || b >= vertices)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (a > b) std::swap(a, b);
    }
}

MeasurementPattern::MeasurementPattern(std::size_t sites_, std::vector<MeasStep> steps_,
                                       std::vector<std::size_t> inputs_,
                                       std::vector<std::size_t> outputs_,
                                       std::vector<OutputCorrection> corrections_)
    : sites(sites_), steps(std::move(steps_)), inputs(std::move(inputs_)),
      outputs(std::move(outputs_)), corrections(std::move(corrections_)) {
    std::vector<bool> measured(sites, false);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const MeasStep& st = steps[k];
        if (st.site >= sites)
            throw std::invalid_argument("MeasurementPattern: step site out of range");
        if (measured[st.site])
            throw std::invalid_argument("MeasurementPattern: site measured twice");
        measured[st.site] = true;
        for (std::size_t d : st.sign_deps)
            if (d >= k)
                throw std::invalid_argument(
                    "MeasurementPattern: dependency on a non-earlier step");
    }
    for (std::size_t o : outputs) {
        if (o >= sites)
            throw std::invalid_argument("MeasurementPattern: output out of range");
        if (measured[o])
            throw std::invalid_argument("MeasurementPattern: output was measured");
    }
    if (outputs.size() + steps.size() != sites)
        throw std::invalid_argument(
            "MeasurementPattern: outputs must cover every unmeasured site");
    if (corrections.size() != outputs.size())
        throw std::invalid_argument(
            "MeasurementPattern: one correction record per output required");
    for (const OutputCorrection& c : corrections)
        for (const auto* deps : {&c.x_deps, &c.z_deps})
            for (std::size_t d : *deps)
                if (d >= steps.size())
                    throw std::invalid_argument(
                        "MeasurementPattern: correction references a missing step");
}

Branch Branch::fixed(std::vector<int> outcomes) {
    Branch b;
    b.is_fixed = true;
    b.outcomes = std::move(outcomes);
    return b;
}

Branch Branch::random(std::uint64_t seed) {
    Branch b;
    b.seed = seed;
    return b;
}

PureState cluster_state(const Graph& g) {
    if (g.vertices > desk_cap()) throw CapExceeded(g.vertices, desk_cap());
    const std::size_t n = g.vertices;
    const std::size_t dim = std::size_t(1) << n;
    Vec amps(dim, cxd{std::pow(1.0 / std::sqrt(2.0), double(n)), 0.0});
    for (const auto& [a, b] : g.edges) {
        const std::size_t mask =
            (std::size_t(1) << (n - 1 - a)) | (std::size_t(1) << (n - 1 - b));
        kernels::phase_mask(amps.data(), dim, mask, cxd{-1.0, 0.0});
    }
    return PureState::normalized(std::move(amps), std::vector<std::size_t>(n, 2));
}

namespace {

// <basis| applied at position pos; the register shrinks by one qubit
Vec project_out(const Vec& amps, std::size_t pos,
                const std::array<cxd, 2>& bra) {
    const std::size_t high = std::size_t(1) << pos;           // index blocks above
    const std::size_t low = amps.size() >> (pos + 1);         // stride below
    Vec out(amps.size() / 2);
    std::size_t w = 0;
    for (std::size_t h = 0; h < high; ++h)
        for (std::size_t l = 0; l < low; ++l, ++w) {
            const std::size_t base = h * low * 2 + l;
            out[w] = std::conj(bra[0]) * amps[base] + std::conj(bra[1]) * amps[base + low];
        }
    return out;
}

}  // namespace

PatternRun run_pattern(const PureState& resource, const MeasurementPattern& p,
                       const Branch& branch) {
    if (resource.dims() != std::vector<std::size_t>(p.sites, 2))
        throw std::invalid_argument("run_pattern: resource is not a " +
                                    std::to_string(p.sites) + "-qubit register");
    if (branch.is_fixed && branch.outcomes.size() != p.steps.size())
        throw std::invalid_argument("run_pattern: fixed branch length mismatch");

    std::mt19937_64 gen(branch.seed);
    auto draw = [&gen] { return (gen() >> 11) * 0x1.0p-53; };

    Vec amps = resource.amplitudes();
    // position of each original site in the shrinking register
    std::vector<std::size_t> pos(p.sites);
    for (std::size_t i = 0; i < p.sites; ++i) pos[i] = i;
    std::vector<bool> gone(p.sites, false);

    std::vector<int> outcomes;
    outcomes.reserve(p.steps.size());

    for (std::size_t k = 0; k < p.steps.size(); ++k) {
        const MeasStep& st = p.steps[k];
        int parity = 0;
        for (std::size_t d : st.sign_deps) parity ^= outcomes[d];
        const double alpha = (parity ? -1.0 : 1.0) * st.angle;

        std::array<std::array<cxd, 2>, 2> basis;
        if (st.plane == Plane::XY) {
            const double isq2 = 1.0 / std::sqrt(2.0);
            basis[0] = {cxd{isq2, 0.0}, std::exp(cxd{0, -alpha}) * isq2};
            basis[1] = {cxd{isq2, 0.0}, -std::exp(cxd{0, -alpha}) * isq2};
        } else {
            basis[0] = {cxd{1.0, 0.0}, cxd{0.0, 0.0}};
            basis[1] = {cxd{0.0, 0.0}, cxd{1.0, 0.0}};
        }

        Vec out0 = project_out(amps, pos[st.site], basis[0]);
        const double p0 = kernels::active().nrm2sq(out0.data(), out0.size());

        int outcome;
        if (branch.is_fixed) {
            outcome = branch.outcomes[k] ? 1 : 0;
        } else {
            outcome = draw() < p0 ? 0 : 1;
        }
        Vec chosen = outcome == 0
                         ? std::move(out0)
                         : project_out(amps, pos[st.site], basis[1]);
        const double pnorm = std::sqrt(
            kernels::active().nrm2sq(chosen.data(), chosen.size()));
        if (pnorm < 1e-12) throw ImpossibleBranch();
        kernels::active().scal(chosen.data(), cxd{1.0 / pnorm, 0.0}, chosen.size());

        amps = std::move(chosen);
        outcomes.push_back(outcome);
        gone[st.site] = true;
        for (std::size_t s = 0; s < p.sites; ++s)
            if (!gone[s] && pos[s] > pos[st.site]) --pos[s];
    }

    // remaining register holds the unmeasured sites in ascending site order;
    // reorder to the declared output order
    std::vector<std::size_t> remaining;
    for (std::size_t s = 0; s < p.sites; ++s)
        if (!gone[s]) remaining.push_back(s);
    std::vector<std::size_t> order(p.outputs.size());
    for (std::size_t i = 0; i < p.outputs.size(); ++i) {
        auto it = std::find(remaining.begin(), remaining.end(), p.outputs[i]);
        order[i] = std::size_t(it - remaining.begin());
    }
    Vec final_amps = linalg::permute_wires(
        amps, std::vector<std::size_t>(remaining.size(), 2), order);

    const std::size_t nout = p.outputs.size();
    std::uint64_t xmask = 0, zmask = 0;
    for (std::size_t i = 0; i < nout; ++i) {
        int xpar = 0, zpar = 0;
        for (std::size_t d : p.corrections[i].x_deps) xpar ^= outcomes[d];
        for (std::size_t d : p.corrections[i].z_deps) zpar ^= outcomes[d];
        const std::uint64_t bit = 1ull << (nout - 1 - i);
        if (xpar) xmask |= bit;
        if (zpar) zmask |= bit;
    }

    return PatternRun{std::move(outcomes), PauliString(nout, xmask, zmask, 0),
                      PureState::normalized(std::move(final_amps),
                                            std::vector<std::size_t>(nout, 2))};
}

std::array<double, 4> wire_angles(const Matrix& u) {
    if (u.rows() != 2 || !u.square() || !linalg::is_unitary(u, 1e-10))
        throw std::invalid_argument("wire_angles: 2x2 unitary required");
    // J(a4) J(a3) J(a2) J(a1) = X(a4) Z(a3) X(a2) with a1 = 0, and
    // H u H = Z(a4) X(a3) Z(a2) up to phase, so ZXZ Euler angles of H u H
    const double isq2 = 1.0 / std::sqrt(2.0);
    Matrix h(2, 2, {isq2, isq2, isq2, -isq2});
    Matrix w = h * u * h;
    // strip the determinant phase
    const cxd det = w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0);
    const cxd root = std::sqrt(det);
    Matrix ws = w;
    ws *= (std::abs(root) > 1e-300 ? cxd{1.0, 0.0} / root : cxd{1.0, 0.0});

    const double c00 = std::abs(ws(0, 0)), c01 = std::abs(ws(0, 1));
    const double b = 2.0 * std::atan2(c01, c00);
    double a, c;
    if (c00 > 1e-9 && c01 > 1e-9) {
        const double sum = -2.0 * std::arg(ws(0, 0));   // a + c
        const double diff = 2.0 * (std::arg(ws(0, 1)) + M_PI / 2);  // a - c
        a = (sum + diff) / 2.0;
        c = (sum - diff) / 2.0;
    } else if (c01 <= 1e-9) {
        c = 0.0;
        a = -2.0 * std::arg(ws(0, 0));
    } else {
        c = 0.0;
        a = 2.0 * (std::arg(ws(0, 1)) + M_PI / 2);
    }
    return {0.0, a, b, c};
}

MeasurementPattern compile_1q_gate(const Matrix& u) {
    const std::array<double, 4> a = wire_angles(u);
    std::vector<MeasStep> steps{
        {0, Plane::XY, a[0], {}},
        {1, Plane::XY, a[1], {0}},
        {2, Plane::XY, a[2], {1}},
        // the X parity before the last step is s3 xor s1
        {3, Plane::XY, a[3], {0, 2}},
    };
    // byproduct X^(s4+s2) Z^(s3+s1) on the output
    std::vector<OutputCorrection> corr{{{1, 3}, {0, 2}}};
    return MeasurementPattern(5, std::move(steps), {0}, {4}, std::move(corr));
}

PureState wire_resource(const PureState& input, std::size_t sites) {
    if (input.dim() != 2)
        throw std::invalid_argument("wire_resource: single-qubit input required");
    if (sites < 1 || sites > desk_cap()) throw CapExceeded(sites, desk_cap());
    const std::size_t dim = std::size_t(1) << sites;
    const double amp = std::pow(1.0 / std::sqrt(2.0), double(sites - 1));
    Vec amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t top = i >> (sites - 1);
        amps[i] = input.amplitudes()[top] * amp;
    }
    for (std::size_t s = 0; s + 1 < sites; ++s) {
        const std::size_t mask = (std::size_t(1) << (sites - 1 - s)) |
                                 (std::size_t(1) << (sites - 2 - s));
        kernels::phase_mask(amps.data(), dim, mask, cxd{-1.0, 0.0});
    }
    return PureState::normalized(std::move(amps), std::vector<std::size_t>(sites, 2));
}

TwoWayResult two_way_step(const PureState& reg, double angle, std::size_t active,
                          std::optional<int> forced_outcome, std::uint64_t seed) {
    if (reg.dims() != std::vector<std::size_t>{2, 2})
        throw std::invalid_argument("two_way_step: 2-qubit register required");
    if (active > 1) throw std::invalid_argument("two_way_step: active must be 0 or 1");
    const std::size_t passive = 1 - active;

    Vec amps = reg.amplitudes();
    kernels::phase_mask(amps.data(), 4, 0b11, cxd{-1.0, 0.0});  // CZ

    const double isq2 = 1.0 / std::sqrt(2.0);
    const std::size_t pos = active;  // positions coincide with wire labels here
    std::array<cxd, 2> bra0{cxd{isq2, 0.0}, std::exp(cxd{0, -angle}) * isq2};
    std::array<cxd, 2> bra1{cxd{isq2, 0.0}, -std::exp(cxd{0, -angle}) * isq2};

    Vec out0 = amps, out1 = amps;
    {
        Vec tmp0(2), tmp1(2);
        // project style: reuse the generic removal on a 2-qubit register
        auto project = [&](const std::array<cxd, 2>& bra) {
            Vec r(2);
            for (std::size_t other = 0; other < 2; ++other) {
                const std::size_t i0 = pos == 0 ? other : other * 2;
                const std::size_t i1 = pos == 0 ? 2 + other : other * 2 + 1;
                r[other] = std::conj(bra[0]) * amps[i0] + std::conj(bra[1]) * amps[i1];
            }
            return r;
        };
        tmp0 = project(bra0);
        tmp1 = project(bra1);
        out0 = std::move(tmp0);
        out1 = std::move(tmp1);
    }
    const double p0 = kernels::active().nrm2sq(out0.data(), 2);

    int outcome;
    if (forced_outcome) {
        outcome = *forced_outcome ? 1 : 0;
    } else {
        std::mt19937_64 gen(seed);
        outcome = ((gen() >> 11) * 0x1.0p-53) < p0 ? 0 : 1;
    }
    Vec data = outcome == 0 ? std::move(out0) : std::move(out1);
    const double nrm = std::sqrt(kernels::active().nrm2sq(data.data(), 2));
    if (nrm < 1e-12) throw ImpossibleBranch();
    kernels::active().scal(data.data(), cxd{1.0 / nrm, 0.0}, 2);

    // refresh the measured qubit to |+>, data lives on the passive wire
    Vec joint(4);
    for (std::size_t d = 0; d < 2; ++d)
        for (std::size_t f = 0; f < 2; ++f) {
            const std::size_t idx = passive == 0 ? d * 2 + f : f * 2 + d;
            joint[idx] = data[d] * isq2;
        }

    const std::uint64_t xbit = 1ull << (1 - passive);
    return TwoWayResult{PureState::normalized(std::move(joint), {2, 2}), outcome,
                        PauliString(2, outcome ? xbit : 0, 0, 0)};
}

}  // namespace uqcm::mbqc
