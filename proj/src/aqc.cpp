#include "uqcm/aqc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uqcm::aqc {

using linalg::dim_product;
using qca::Term;

namespace {

// projector |bits> <bits| on k qubits
Matrix bit_projector(std::initializer_list<int> bits) {
    std::size_t idx = 0, d = 1;
    for (int b : bits) {
        idx = idx * 2 + std::size_t(b);
        d *= 2;
    }
    Matrix p(d, d);
    p(idx, idx) = 1.0;
    return p;
}

// |bra_bits> <ket_bits| on k qubits
Matrix bit_transfer(std::initializer_list<int> bra, std::initializer_list<int> ket) {
    std::size_t bi = 0, ki = 0, d = 1;
    for (int b : bra) bi = bi * 2 + std::size_t(b);
    for (int b : ket) {
        ki = ki * 2 + std::size_t(b);
        d *= 2;
    }
    Matrix m(d, d);
    m(bi, ki) = 1.0;
    return m;
}

}  // namespace

ClockHamiltonian fkch_hamiltonian(const Circuit& c, PenaltyWeights weights,
                                  const std::optional<Vec>& input) {
    const std::size_t w = c.wires;
    const std::size_t N = c.gates.size();
    if (w + N > desk_cap()) throw CapExceeded(w + N, desk_cap());

    Vec pinned;
    if (input) {
        pinned = *input;
        if (pinned.size() != (std::size_t(1) << w))
            throw std::invalid_argument("fkch_hamiltonian: input dimension mismatch");
        linalg::normalize(pinned);
    } else {
        pinned.assign(std::size_t(1) << w, cxd{});
        pinned[0] = 1.0;
    }

    std::vector<Term> terms;
    const auto clock_wire = [&](std::size_t t) { return w + t - 1; };  // t = 1..N

    for (std::size_t t = 1; t <= N; ++t) {
        const Matrix ut = c.gates[t - 1].matrix();
        const std::vector<std::size_t>& gw = c.gates[t - 1].targets;
        const std::size_t gd = ut.rows();
        const Matrix idg = Matrix::identity(gd);

        // clock window around qubit t; projectors onto the local images of
        // |t><t| and |t-1><t-1| plus the hopping |t><t-1|
        Matrix proj_t, proj_tm1, hop;
        std::vector<std::size_t> cw;
        if (N == 1) {
            proj_t = bit_projector({1});
            proj_tm1 = bit_projector({0});
            hop = bit_transfer({1}, {0});
            cw = {clock_wire(1)};
        } else if (t == 1) {
            proj_t = bit_projector({1, 0});
            proj_tm1 = bit_projector({0, 0});
            hop = bit_transfer({1, 0}, {0, 0});
            cw = {clock_wire(1), clock_wire(2)};
        } else if (t == N) {
            proj_t = bit_projector({1, 1});
            proj_tm1 = bit_projector({1, 0});
            hop = bit_transfer({1, 1}, {1, 0});
            cw = {clock_wire(N - 1), clock_wire(N)};
        } else {
            proj_t = bit_projector({1, 1, 0});
            proj_tm1 = bit_projector({1, 0, 0});
            hop = bit_transfer({1, 1, 0}, {1, 0, 0});
            cw = {clock_wire(t - 1), clock_wire(t), clock_wire(t + 1)};
        }

        Matrix term = linalg::kron(idg, proj_t + proj_tm1) * cxd{0.5, 0.0};
        Matrix hopping = linalg::kron(ut, hop);
        term -= (hopping + hopping.adjoint()) * cxd{0.5, 0.0};
        std::vector<std::size_t> support = gw;
        support.insert(support.end(), cw.begin(), cw.end());
        terms.push_back({std::move(term), std::move(support)});
    }

    // domain-wall validity: penalize 0 followed by 1
    for (std::size_t j = 1; j + 1 <= N; ++j) {
        Matrix pen = bit_projector({0, 1}) * cxd{weights.clock, 0.0};
        terms.push_back({std::move(pen), {clock_wire(j), clock_wire(j + 1)}});
    }

    // edge: wrong input at clock value 0 (first clock qubit still 0)
    if (N >= 1) {
        Matrix wrong = Matrix::identity(std::size_t(1) << w) - linalg::outer(pinned, pinned);
        Matrix pen = linalg::kron(wrong, bit_projector({0})) * cxd{weights.edge, 0.0};
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < w; ++i) support.push_back(i);
        support.push_back(clock_wire(1));
        terms.push_back({std::move(pen), std::move(support)});
    }

    return ClockHamiltonian{c, N, LocalHamiltonian(std::move(terms), w + N), weights,
                            std::move(pinned)};
}

PureState history_state(const Circuit& c, const PureState& input_l) {
    const std::size_t w = c.wires;
    const std::size_t N = c.gates.size();
    if (w + N > desk_cap()) throw CapExceeded(w + N, desk_cap());
    if (input_l.dims() != std::vector<std::size_t>(w, 2))
        throw std::invalid_argument("history_state: input register mismatch");

    const std::size_t cdim = std::size_t(1) << N;
    const std::size_t dim = (std::size_t(1) << w) * cdim;
    Vec amps(dim, cxd{});
    const double coeff = 1.0 / std::sqrt(double(N + 1));

    Vec cur = input_l.amplitudes();
    const std::vector<std::size_t> wdims(w, 2);
    for (std::size_t t = 0; t <= N; ++t) {
        if (t > 0)
            linalg::apply_on_targets(cur, wdims, c.gates[t - 1].matrix(),
                                     c.gates[t - 1].targets);
        // clock basis index of |1^t 0^(N-t)>
        std::size_t cidx = 0;
        for (std::size_t j = 1; j <= t; ++j) cidx |= std::size_t(1) << (N - j);
        for (std::size_t x = 0; x < cur.size(); ++x)
            amps[x * cdim + cidx] += coeff * cur[x];
    }
    return PureState::normalized(std::move(amps),
                                 std::vector<std::size_t>(w + N, 2));
}

PureState project_clock(const PureState& state, const Circuit& c, std::size_t t) {
    const std::size_t w = c.wires;
    const std::size_t N = c.gates.size();
    if (t > N) throw std::invalid_argument("project_clock: t out of range");
    if (state.dim() != (std::size_t(1) << (w + N)))
        throw std::invalid_argument("project_clock: state dimension mismatch");
    const std::size_t cdim = std::size_t(1) << N;
    std::size_t cidx = 0;
    for (std::size_t j = 1; j <= t; ++j) cidx |= std::size_t(1) << (N - j);
    Vec out(std::size_t(1) << w);
    for (std::size_t x = 0; x < out.size(); ++x)
        out[x] = state.amplitudes()[x * cdim + cidx];
    const double nrm = linalg::norm(out);
    if (nrm < 1e-12)
        throw std::invalid_argument("project_clock: clock branch has zero weight");
    return PureState::normalized(std::move(out), std::vector<std::size_t>(w, 2));
}

AdiabaticPath::AdiabaticPath(LocalHamiltonian h0_, LocalHamiltonian hf_,
                             std::function<double(double)> schedule_)
    : h0(std::move(h0_)), hf(std::move(hf_)), schedule(std::move(schedule_)) {
    if (h0.size() != hf.size())
        throw std::invalid_argument("AdiabaticPath: endpoint sizes differ");
    if (!schedule) schedule = [](double s) { return s; };
    if (std::abs(schedule(0.0)) > 1e-9 || std::abs(schedule(1.0) - 1.0) > 1e-9)
        throw std::invalid_argument("AdiabaticPath: schedule endpoints must be 0 and 1");
    double prev = schedule(0.0);
    for (int k = 1; k <= 100; ++k) {
        const double v = schedule(double(k) / 100.0);
        if (v < prev - 1e-12)
            throw std::invalid_argument("AdiabaticPath: schedule is not monotone");
        prev = v;
    }
}

LocalHamiltonian interpolate(const AdiabaticPath& path, double s) {
    if (s < 0.0 || s > 1.0)
        throw std::invalid_argument("interpolate: s must lie in [0, 1]");
    const double sigma = path.schedule(s);
    return path.h0.scaled(1.0 - sigma).plus(path.hf.scaled(sigma));
}

AdiabaticResult adiabatic_evolve(const AdiabaticPath& path, double total_time,
                                 std::size_t steps, const PureState& start) {
    if (steps < 1) throw std::invalid_argument("adiabatic_evolve: steps must be >= 1");
    Vec psi = start.amplitudes();
    const double dt = total_time / double(steps);
    for (std::size_t j = 0; j < steps; ++j) {
        const double s = (double(j) + 0.5) / double(steps);
        Matrix u = linalg::expm_hermitian(interpolate(path, s).dense(), dt);
        psi = linalg::mat_vec(u, psi);
    }

    auto e = linalg::eig_hermitian(path.hf.dense());
    const double e0 = e.values.front();
    double overlap = 0.0;
    for (std::size_t j = 0; j < e.values.size(); ++j) {
        if (e.values[j] > e0 + 1e-9) break;
        cxd ov{};
        for (std::size_t i = 0; i < psi.size(); ++i)
            ov += std::conj(e.vectors(i, j)) * psi[i];
        overlap += std::norm(ov);
    }
    return AdiabaticResult{PureState::normalized(std::move(psi), start.dims()),
                           overlap};
}

GapProfile gap_profile(const AdiabaticPath& path, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("gap_profile: samples must be >= 2");
    GapProfile out;
    out.gaps.reserve(samples);
    out.delta_min = std::numeric_limits<double>::infinity();
    out.h_max = 0.0;

    Matrix prev;
    for (std::size_t k = 0; k < samples; ++k) {
        const double s = double(k) / double(samples - 1);
        Matrix h = interpolate(path, s).dense();
        auto e = linalg::eig_hermitian(h);
        double gap = 0.0;
        for (std::size_t j = 1; j < e.values.size(); ++j)
            if (e.values[j] > e.values.front() + 1e-9) {
                gap = e.values[j] - e.values.front();
                break;
            }
        out.gaps.push_back(gap);
        out.delta_min = std::min(out.delta_min, gap);
        if (k > 0) {
            const double ds = 1.0 / double(samples - 1);
            out.h_max = std::max(out.h_max, linalg::spectral_norm(h - prev) / ds);
        }
        prev = std::move(h);
    }
    out.tf_estimate = out.delta_min > 0.0
                          ? out.h_max / (out.delta_min * out.delta_min)
                          : (out.h_max > 0.0
                                 ? std::numeric_limits<double>::infinity()
                                 : 0.0);
    return out;
}

Matrix energetic_reencode(const std::vector<std::pair<Vec, double>>& old_codewords,
                          const std::vector<std::pair<Vec, double>>& new_codewords) {
    if (old_codewords.size() != new_codewords.size() || old_codewords.empty())
        throw std::invalid_argument("energetic_reencode: list sizes differ");
    const std::size_t d = old_codewords.front().first.size();

    auto sorted_indices = [](const std::vector<std::pair<Vec, double>>& list) {
        std::vector<std::size_t> idx(list.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return list[a].second < list[b].second;
        });
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (list[idx[i]].second - list[idx[i - 1]].second < 1e-9)
                throw EnergyTie();
        return idx;
    };
    auto check_orthonormal = [&](const std::vector<std::pair<Vec, double>>& list) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i].first.size() != d)
                throw std::invalid_argument("energetic_reencode: dimension mismatch");
            for (std::size_t j = i; j < list.size(); ++j) {
                const cxd ov = linalg::dot(list[i].first, list[j].first);
                const cxd want = i == j ? cxd{1.0, 0.0} : cxd{};
                if (std::abs(ov - want) > 1e-8)
                    throw std::invalid_argument(
                        "energetic_reencode: codewords are not orthonormal");
            }
        }
    };
    check_orthonormal(old_codewords);
    check_orthonormal(new_codewords);

    auto oidx = sorted_indices(old_codewords);
    auto nidx = sorted_indices(new_codewords);

    Matrix v(d, d);
    for (std::size_t i = 0; i < oidx.size(); ++i)
        v += linalg::outer(old_codewords[oidx[i]].first, new_codewords[nidx[i]].first);
    return v;
}

}  // namespace uqcm::aqc
