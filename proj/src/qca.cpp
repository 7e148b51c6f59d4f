#include "uqcm/qca.hpp"

#include <algorithm>
#include <cmath>

namespace uqcm::qca {

using linalg::dim_product;

LocalHamiltonian::LocalHamiltonian(std::vector<Term> terms, std::size_t n)
    : terms_(std::move(terms)), n_(n), locality_(0) {
    if (terms_.size() > 100 * n * n + 100)
        throw std::invalid_argument("LocalHamiltonian: term count exceeds poly cap");
    for (const Term& t : terms_) {
        std::size_t d = 1;
        std::vector<bool> seen(n, false);
        for (std::size_t w : t.support) {
            if (w >= n)
                throw std::invalid_argument("LocalHamiltonian: support out of range");
            if (seen[w])
                throw std::invalid_argument("LocalHamiltonian: duplicate support wire");
            seen[w] = true;
            d *= 2;
        }
        if (t.op.rows() != d || !t.op.square())
            throw std::invalid_argument("LocalHamiltonian: term dimension mismatch");
        if (!linalg::is_hermitian(t.op, 1e-10))
            throw std::invalid_argument("LocalHamiltonian: term is not Hermitian");
        locality_ = std::max(locality_, t.support.size());
    }
}

Matrix LocalHamiltonian::dense() const {
    const std::vector<std::size_t> dims(n_, 2);
    Matrix h(dim_product(dims), dim_product(dims));
    for (const Term& t : terms_) h += linalg::embed(t.op, t.support, dims);
    return h;
}

LocalHamiltonian LocalHamiltonian::scaled(double factor) const {
    std::vector<Term> out;
    if (factor != 0.0)
        for (const Term& t : terms_)
            out.push_back({t.op * cxd{factor, 0.0}, t.support});
    return LocalHamiltonian(std::move(out), n_);
}

LocalHamiltonian LocalHamiltonian::plus(const LocalHamiltonian& other) const {
    if (other.n_ != n_)
        throw std::invalid_argument("LocalHamiltonian: size mismatch in sum");
    std::vector<Term> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return LocalHamiltonian(std::move(out), n_);
}

PureState exact_evolve(const LocalHamiltonian& h, double t, const PureState& s) {
    if (h.size() > desk_cap()) throw CapExceeded(h.size(), desk_cap());
    if (s.dim() != (std::size_t(1) << h.size()))
        throw std::invalid_argument("exact_evolve: state dimension mismatch");
    Matrix u = linalg::expm_hermitian(h.dense(), t);
    return core::PureState::normalized(linalg::mat_vec(u, s.amplitudes()), s.dims());
}

namespace {

bool terms_conflict(const Term& a, const Term& b) {
    std::vector<std::size_t> joint;
    for (std::size_t w : a.support) joint.push_back(w);
    bool overlap = false;
    for (std::size_t w : b.support) {
        if (std::find(a.support.begin(), a.support.end(), w) != a.support.end())
            overlap = true;
        else
            joint.push_back(w);
    }
    if (!overlap) return false;  // disjoint supports always commute
    std::sort(joint.begin(), joint.end());
    const std::vector<std::size_t> dims(joint.size(), 2);
    auto locate = [&](const std::vector<std::size_t>& sup) {
        std::vector<std::size_t> loc;
        for (std::size_t w : sup)
            loc.push_back(std::size_t(
                std::find(joint.begin(), joint.end(), w) - joint.begin()));
        return loc;
    };
    Matrix ea = linalg::embed(a.op, locate(a.support), dims);
    Matrix eb = linalg::embed(b.op, locate(b.support), dims);
    return (ea * eb - eb * ea).max_abs() > 1e-10;
}

Matrix term_exponential(const Term& t, double dt) {
    return linalg::expm_hermitian(t.op, dt);
}

}  // namespace

TrotterPlan make_trotter_plan(const LocalHamiltonian& h, double t, std::size_t r,
                              int order) {
    if (r < 1) throw std::invalid_argument("make_trotter_plan: r must be >= 1");
    if (order != 1 && order != 2)
        throw std::invalid_argument("make_trotter_plan: order must be 1 or 2");

    const std::size_t m = h.terms().size();
    std::vector<std::vector<bool>> conflict(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            conflict[i][j] = conflict[j][i] =
                terms_conflict(h.terms()[i], h.terms()[j]);

    // greedy coloring in index order; worst case one term per layer
    std::vector<int> color(m, -1);
    int ncolors = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<bool> used(std::size_t(ncolors) + 1, false);
        for (std::size_t j = 0; j < i; ++j)
            if (conflict[i][j] && color[j] >= 0) used[std::size_t(color[j])] = true;
        int c = 0;
        while (c < ncolors && used[std::size_t(c)]) ++c;
        color[i] = c;
        ncolors = std::max(ncolors, c + 1);
    }
    std::vector<std::vector<std::size_t>> layers(
        std::max<std::size_t>(std::size_t(ncolors), 1));
    for (std::size_t i = 0; i < m; ++i) layers[std::size_t(color[i])].push_back(i);

    return TrotterPlan{h, t, r, order, std::move(layers)};
}

Circuit trotterize(const LocalHamiltonian& h, double t, std::size_t r, int order) {
    TrotterPlan plan = make_trotter_plan(h, t, r, order);
    const double dt = t / double(r);
    std::vector<circuit::Gate> gates;

    auto emit_layer = [&](const std::vector<std::size_t>& layer, double step) {
        for (std::size_t idx : layer) {
            const Term& term = h.terms()[idx];
            gates.emplace_back(term_exponential(term, step), term.support);
        }
    };

    for (std::size_t rep = 0; rep < r; ++rep) {
        if (order == 1) {
            for (const auto& layer : plan.layers) emit_layer(layer, dt);
        } else {
            const std::size_t L = plan.layers.size();
            for (std::size_t l = 0; l + 1 < L; ++l) emit_layer(plan.layers[l], dt / 2);
            emit_layer(plan.layers[L - 1], dt);
            for (std::size_t l = L - 1; l-- > 0;) emit_layer(plan.layers[l], dt / 2);
        }
    }
    return Circuit(h.size(), std::move(gates));
}

tensor::MPU layer_to_mpu(const TrotterPlan& plan, std::size_t layer_index) {
    if (layer_index >= plan.layers.size())
        throw std::invalid_argument("layer_to_mpu: layer index out of range");
    const LocalHamiltonian& h = plan.hamiltonian;
    if (h.size() > desk_cap()) throw CapExceeded(h.size(), desk_cap());

    for (std::size_t idx : plan.layers[layer_index]) {
        const auto& sup = h.terms()[idx].support;
        if (sup.size() > 2)
            throw std::invalid_argument(
                "layer_to_mpu: support is not 1D nearest-neighbor");
        if (sup.size() == 2) {
            const std::size_t lo = std::min(sup[0], sup[1]);
            const std::size_t hi = std::max(sup[0], sup[1]);
            if (hi - lo != 1)
                throw std::invalid_argument(
                    "layer_to_mpu: support is not 1D nearest-neighbor");
        }
    }

    const double dt = plan.t / double(plan.r);
    const std::vector<std::size_t> dims(h.size(), 2);
    Matrix layer_u = Matrix::identity(dim_product(dims));
    for (std::size_t idx : plan.layers[layer_index]) {
        const Term& term = h.terms()[idx];
        layer_u =
            linalg::embed(term_exponential(term, dt), term.support, dims) * layer_u;
    }
    return tensor::mpu_from_dense(layer_u, dims);
}

Vec quantum_walk_evolve(const Matrix& adjacency, std::size_t start_vertex, double t) {
    if (!adjacency.square())
        throw std::invalid_argument("quantum_walk_evolve: adjacency must be square");
    const std::size_t nv = adjacency.rows();
    if (start_vertex >= nv)
        throw std::invalid_argument("quantum_walk_evolve: start vertex out of range");
    if (!linalg::approx_equal(adjacency, adjacency.transpose(), 1e-12) ||
        !linalg::is_hermitian(adjacency, 1e-12))
        throw std::invalid_argument("quantum_walk_evolve: asymmetric adjacency");
    Matrix u = linalg::expm_hermitian(adjacency, t);
    Vec start(nv, cxd{});
    start[start_vertex] = 1.0;
    return linalg::mat_vec(u, start);
}

UnitaryOp controlled_evolve(const std::vector<ScheduledTerm>& terms, std::size_t n,
                            double total_time, std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("controlled_evolve: steps must be >= 1");
    for (const ScheduledTerm& st : terms) {
        if (std::abs(st.schedule(0.0)) > 1e-9 ||
            std::abs(st.schedule(1.0) - 1.0) > 1e-9)
            throw std::invalid_argument(
                "controlled_evolve: schedule endpoints must be 0 and 1");
        double prev = st.schedule(0.0);
        for (int k = 1; k <= 100; ++k) {
            const double v = st.schedule(double(k) / 100.0);
            if (v < prev - 1e-12)
                throw std::invalid_argument("controlled_evolve: schedule is not monotone");
            prev = v;
        }
    }

    // layer assignment fixed along the path, taken from the endpoint terms
    std::vector<Term> endpoint;
    for (const ScheduledTerm& st : terms) endpoint.push_back({st.op_of(1.0), st.support});
    LocalHamiltonian hend(endpoint, n);
    TrotterPlan plan = make_trotter_plan(hend, 1.0, 1, 1);

    const std::vector<std::size_t> dims(n, 2);
    Matrix u = Matrix::identity(dim_product(dims));
    const double dt = total_time / double(steps);
    for (std::size_t j = 0; j < steps; ++j) {
        const double s = (double(j) + 0.5) / double(steps);
        for (const auto& layer : plan.layers) {
            for (std::size_t idx : layer) {
                const ScheduledTerm& st = terms[idx];
                Matrix op = st.op_of(st.schedule(s));
                if (!linalg::is_hermitian(op, 1e-10))
                    throw std::invalid_argument(
                        "controlled_evolve: term is not Hermitian");
                u = linalg::embed(linalg::expm_hermitian(op, dt), st.support, dims) * u;
            }
        }
    }
    return UnitaryOp(std::move(u), dims);
}

}  // namespace uqcm::qca
