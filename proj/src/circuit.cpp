#include "uqcm/circuit.hpp"

#include <cmath>

namespace uqcm::circuit {

std::size_t gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CZ:
        case GateKind::CNOT:
            return 2;
        case GateKind::Custom:
            return 0;  // determined by targets
        default:
            return 1;
    }
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::T: return "T";
        case GateKind::S: return "S";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::CZ: return "CZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::I: return "I";
        case GateKind::Custom: return "Custom";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(const std::string& name) {
    if (name == "H") return GateKind::H;
    if (name == "T") return GateKind::T;
    if (name == "S") return GateKind::S;
    if (name == "X") return GateKind::X;
    if (name == "Z") return GateKind::Z;
    if (name == "CZ") return GateKind::CZ;
    if (name == "CNOT") return GateKind::CNOT;
    if (name == "I") return GateKind::I;
    return std::nullopt;
}

Gate::Gate(GateKind k, std::vector<std::size_t> t) : kind(k), targets(std::move(t)) {
    if (kind == GateKind::Custom)
        throw std::invalid_argument("Gate: custom gates need a matrix");
    if (targets.size() != gate_arity(kind))
        throw std::invalid_argument(std::string("Gate: ") + gate_name(kind) +
                                    " arity mismatch");
    if (targets.size() == 2 && targets[0] == targets[1])
        throw std::invalid_argument("Gate: duplicate targets");
}

Gate::Gate(Matrix u, std::vector<std::size_t> t)
    : kind(GateKind::Custom), targets(std::move(t)), custom(std::move(u)) {
    std::size_t d = 1;
    for (std::size_t i = 0; i < targets.size(); ++i) d *= 2;
    if (custom->rows() != d || !custom->square())
        throw std::invalid_argument("Gate: custom matrix size does not match targets");
    if (!linalg::is_unitary(*custom, 1e-10))
        throw std::invalid_argument("Gate: custom matrix is not unitary");
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (targets[i] == targets[j])
                throw std::invalid_argument("Gate: duplicate targets");
}

Matrix Gate::matrix() const {
    const double isq2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H:
            return Matrix(2, 2, {isq2, isq2, isq2, -isq2});
        case GateKind::T:
            return Matrix(2, 2, {1, 0, 0, std::exp(cxd{0, M_PI / 4})});
        case GateKind::S:
            return Matrix(2, 2, {1, 0, 0, cxd{0, 1}});
        case GateKind::X:
            return Matrix(2, 2, {0, 1, 1, 0});
        case GateKind::Z:
            return Matrix(2, 2, {1, 0, 0, -1});
        case GateKind::I:
            return Matrix::identity(2);
        case GateKind::CZ: {
            Matrix m = Matrix::identity(4);
            m(3, 3) = -1.0;
            return m;
        }
        case GateKind::CNOT:
            return Matrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
        case GateKind::Custom:
            return *custom;
    }
    throw std::logic_error("Gate::matrix: unreachable");
}

Circuit::Circuit(std::size_t wires_, std::vector<Gate> gates_)
    : wires(wires_), gates(std::move(gates_)) {
    for (const Gate& g : gates)
        for (std::size_t t : g.targets)
            if (t >= wires)
                throw std::invalid_argument("Circuit: gate target exceeds wire count");
}

Circuit Circuit::then(const Circuit& next) const {
    if (next.wires != wires)
        throw std::invalid_argument("Circuit::then: wire count mismatch");
    Circuit out = *this;
    out.gates.insert(out.gates.end(), next.gates.begin(), next.gates.end());
    return out;
}

PureState simulate(const Circuit& c, const PureState& initial) {
    if (initial.dims() != std::vector<std::size_t>(c.wires, 2))
        throw std::invalid_argument("simulate: initial state is not a " +
                                    std::to_string(c.wires) + "-qubit register");
    linalg::Vec amps = initial.amplitudes();
    const std::vector<std::size_t> dims(c.wires, 2);
    for (const Gate& g : c.gates)
        linalg::apply_on_targets(amps, dims, g.matrix(), g.targets);
    return PureState::normalized(std::move(amps), dims);
}

PureState simulate(const Circuit& c) {
    return simulate(c, PureState::zero(std::vector<std::size_t>(c.wires, 2)));
}

UnitaryOp circuit_unitary(const Circuit& c) {
    if (c.wires > desk_cap()) throw CapExceeded(c.wires, desk_cap());
    const std::vector<std::size_t> dims(c.wires, 2);
    Matrix u = Matrix::identity(linalg::dim_product(dims));
    for (const Gate& g : c.gates) u = linalg::embed(g.matrix(), g.targets, dims) * u;
    return UnitaryOp(std::move(u), dims);
}

namespace {

// Depth-first walk over {H, T} words of exactly `depth` letters, products
// built incrementally, H branch explored before T so the in-depth order is
// deterministic. Returns the first word within eps.
bool dfs_words(const Matrix& target, double eps, std::size_t depth,
               std::vector<Matrix>& stack, std::vector<GateKind>& word) {
    if (word.size() == depth) {
        // the + 1e-12 floor lets eps = 0 mean "exact up to roundoff"
        return core::phase_aligned_distance(target, stack.back()) <= eps + 1e-12;
    }
    static const Matrix h = Gate(GateKind::H, {0}).matrix();
    static const Matrix t = Gate(GateKind::T, {0}).matrix();
    for (GateKind k : {GateKind::H, GateKind::T}) {
        word.push_back(k);
        stack.push_back((k == GateKind::H ? h : t) * stack[stack.size() - 1]);
        if (dfs_words(target, eps, depth, stack, word)) return true;
        stack.pop_back();
        word.pop_back();
    }
    return false;
}

}  // namespace

std::optional<Circuit> compile_su2_bruteforce(const Matrix& target,
                                              std::size_t max_depth, double eps) {
    if (target.rows() != 2 || !target.square())
        throw std::invalid_argument("compile_su2_bruteforce: target must be 2x2");
    if (!linalg::is_unitary(target, 1e-10))
        throw std::invalid_argument("compile_su2_bruteforce: target is not unitary");
    if (max_depth > 20)
        throw std::invalid_argument("compile_su2_bruteforce: max_depth capped at 20");

    for (std::size_t depth = 0; depth <= max_depth; ++depth) {
        std::vector<Matrix> stack{Matrix::identity(2)};
        std::vector<GateKind> word;
        if (dfs_words(target, eps, depth, stack, word)) {
            std::vector<Gate> gates;
            for (GateKind k : word) gates.emplace_back(k, std::vector<std::size_t>{0});
            return Circuit(1, std::move(gates));
        }
    }
    return std::nullopt;
}

}  // namespace uqcm::circuit
