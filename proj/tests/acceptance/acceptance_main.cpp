// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, in code.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "uqcm/algorithms.hpp"
#include "uqcm/aqc.hpp"
#include "uqcm/codes.hpp"
#include "uqcm/equivalence.hpp"
#include "uqcm/mbqc.hpp"
#include "uqcm/qca.hpp"
#include "uqcm/random.hpp"
#include "uqcm/tensor.hpp"

using namespace uqcm;
using linalg::cxd;
using linalg::Matrix;
using linalg::Vec;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                what, detail.c_str());
    if (!pass) ++failures;
}

circuit::Circuit random_htcz_circuit(std::size_t wires, std::size_t depth,
                                     rng::Rng& r) {
    std::vector<circuit::Gate> gates;
    for (std::size_t i = 0; i < depth; ++i) {
        const int pick = int(r.integer(3));
        if (pick == 2 && wires >= 2) {
            std::size_t a = r.integer(wires), b = r.integer(wires);
            if (a == b) b = (b + 1) % wires;
            gates.emplace_back(circuit::GateKind::CZ, std::vector<std::size_t>{a, b});
        } else {
            gates.emplace_back(pick ? circuit::GateKind::T : circuit::GateKind::H,
                               std::vector<std::size_t>{r.integer(wires)});
        }
    }
    return circuit::Circuit(wires, std::move(gates));
}

// ---- criterion 1: cross-model equivalence ----

void criterion_1() {
    rng::Rng r(1001);
    double worst = 1.0;
    bool pass = true;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + r.integer(3);
        circuit::Circuit c = random_htcz_circuit(n, 1 + r.integer(12), r);
        auto rep = equiv::cross_model_equivalence(
            c, {equiv::Model::CircuitModel, equiv::Model::Mps, equiv::Model::Mbqc},
            1e-9, r.integer(1u << 30));
        for (const auto& o : rep.outcomes) pass = pass && o.ok;
        for (const auto& f : rep.fidelities) worst = std::min(worst, f.fidelity);
        pass = pass && rep.pass;
    }
    double worst_fkch = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + r.integer(3);
        circuit::Circuit c = random_htcz_circuit(n, 1 + r.integer(5), r);
        auto rep = equiv::cross_model_equivalence(
            c, {equiv::Model::CircuitModel, equiv::Model::Fkch}, 1e-9, 0);
        for (const auto& o : rep.outcomes) pass = pass && o.ok;
        for (const auto& f : rep.fidelities) worst_fkch = std::min(worst_fkch, f.fidelity);
        pass = pass && rep.pass;
    }
    pass = pass && worst >= 1.0 - 1e-9 && worst_fkch >= 1.0 - 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "min fidelity circuit/mps/mbqc %.3e, circuit/fkch %.3e from 1",
                  1.0 - worst, 1.0 - worst_fkch);
    report(1, "cross-model equivalence on 50 random circuits", pass, buf);
}

// ---- criterion 2: KL / recovery on the repetition code ----

void criterion_2() {
    codes::StabilizerCode rep3(3, {codes::PauliString::parse("ZZI"),
                                   codes::PauliString::parse("IZZ")});
    codes::CodeProjector p = codes::projector_from_stabilizers(rep3);

    std::vector<Matrix> xerrs{Matrix::identity(8)};
    for (std::size_t w = 0; w < 3; ++w)
        xerrs.push_back(codes::PauliString::single(3, 'X', w).to_matrix());
    auto ok = codes::kl_check(p, xerrs);

    std::vector<Matrix> zerrs{Matrix::identity(8),
                              codes::PauliString::single(3, 'Z', 0).to_matrix()};
    auto bad = codes::kl_check(p, zerrs);

    codes::KrausChannel rec = codes::recovery_from_errors(p, xerrs);
    // noise supported on the correctable span
    const double q = 0.05;
    std::vector<Matrix> noise_ops{Matrix::identity(8) * cxd{std::sqrt(1 - 3 * q), 0.0}};
    for (std::size_t w = 0; w < 3; ++w)
        noise_ops.push_back(codes::PauliString::single(3, 'X', w).to_matrix() *
                            cxd{std::sqrt(q), 0.0});
    const double acc = codes::qec_accuracy(rec, codes::KrausChannel(noise_ops), p);

    // iid bit flip p = 0.1: logical error rate 3p^2(1-p) + p^3 = 0.028
    const double pflip = 0.1;
    Matrix k0 = Matrix::identity(2) * cxd{std::sqrt(1 - pflip), 0.0};
    Matrix k1 = Matrix(2, 2, {0, 1, 1, 0}) * cxd{std::sqrt(pflip), 0.0};
    std::vector<Matrix> prod{Matrix::identity(1)};
    for (int qb = 0; qb < 3; ++qb) {
        std::vector<Matrix> next;
        for (const Matrix& m : prod) {
            next.push_back(linalg::kron(m, k0));
            next.push_back(linalg::kron(m, k1));
        }
        prod = std::move(next);
    }
    Vec zero_l(8, cxd{});
    zero_l[0] = 1.0;
    Matrix rho = linalg::outer(zero_l, zero_l);
    Matrix out = core::channel_apply(
        core::channel_apply(rho, codes::KrausChannel(prod)), rec);
    const double logical_err = 1.0 - (rho * out).trace().real();
    const double expect = 3 * pflip * pflip * (1 - pflip) + pflip * pflip * pflip;

    const bool pass = ok.correctable && !bad.correctable && bad.witness.has_value() &&
                      acc <= 1e-9 && std::abs(logical_err - expect) <= 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "accuracy %.2e, logical rate %.6f vs %.6f, witness (%zu,%zu)", acc,
                  logical_err, expect, bad.witness ? bad.witness->first : 99,
                  bad.witness ? bad.witness->second : 99);
    report(2, "KL and recovery on the 3-qubit repetition code", pass, buf);
}

// ---- criterion 3: Trotter scaling ----

void criterion_3() {
    std::vector<qca::Term> terms;
    Matrix zz = linalg::kron(Matrix(2, 2, {1, 0, 0, -1}), Matrix(2, 2, {1, 0, 0, -1}));
    Matrix x(2, 2, {0, 1, 1, 0});
    for (std::size_t i = 0; i + 1 < 3; ++i)
        terms.push_back({zz * cxd{-1.0, 0.0}, {i, i + 1}});
    for (std::size_t i = 0; i < 3; ++i) terms.push_back({x * cxd{-1.0, 0.0}, {i}});
    qca::LocalHamiltonian tfi(terms, 3);
    Matrix exact = linalg::expm_hermitian(tfi.dense(), 1.0);

    bool pass = true;
    std::string ratios;
    for (std::size_t r : {25u, 50u, 100u}) {
        const double e1 = linalg::spectral_norm(
            circuit::circuit_unitary(qca::trotterize(tfi, 1.0, r, 1)).matrix() - exact);
        const double e2 = linalg::spectral_norm(
            circuit::circuit_unitary(qca::trotterize(tfi, 1.0, 2 * r, 1)).matrix() -
            exact);
        const double ratio = e2 / e1;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f ", ratio);
        ratios += buf;
        pass = pass && ratio >= 0.4 && ratio <= 0.6;
    }

    std::vector<qca::Term> comm{{Matrix(2, 2, {1, 0, 0, -1}), {0}},
                                {Matrix(2, 2, {1, 0, 0, -1}), {1}}};
    qca::LocalHamiltonian hc(comm, 2);
    const double ec = linalg::spectral_norm(
        circuit::circuit_unitary(qca::trotterize(hc, 1.3, 1, 1)).matrix() -
        linalg::expm_hermitian(hc.dense(), 1.3));
    pass = pass && ec <= 1e-10;

    report(3, "Trotter error halves with doubled r, commuting case exact", pass,
           "ratios " + ratios + "commuting error " + std::to_string(ec));
}

// ---- criterion 4: MPS layer ----

void criterion_4() {
    rng::Rng r(4004);
    bool pass = true;
    double worst_rt = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + r.integer(5);
        core::PureState s(rng::random_state_vector(std::size_t(1) << n, r),
                          std::vector<std::size_t>(n, 2));
        tensor::MPS m = tensor::state_to_mps(s, 0, 0.0);
        worst_rt = std::min(worst_rt, core::fidelity(tensor::mps_contract(m), s));
        auto bonds = m.bond_dims();
        for (std::size_t cut = 1; cut < n; ++cut)
            pass = pass &&
                   tensor::bond_entanglement(m, cut) <=
                       std::log2(double(bonds[cut])) + 1e-9;
    }
    pass = pass && worst_rt >= 1.0 - 1e-10;

    double worst_elem = 0.0;
    for (std::size_t chi : {2u, 4u, 8u}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<std::vector<Matrix>> t(3);
            for (int site = 0; site < 3; ++site)
                for (int i = 0; i < 2; ++i) {
                    Matrix a(chi, chi);
                    for (std::size_t xx = 0; xx < chi; ++xx)
                        for (std::size_t y = 0; y < chi; ++y)
                            a(xx, y) = {r.gaussian(), r.gaussian()};
                    t[site].push_back(std::move(a));
                }
            Matrix b(chi, chi);
            for (std::size_t xx = 0; xx < chi; ++xx)
                for (std::size_t y = 0; y < chi; ++y)
                    b(xx, y) = {r.gaussian(), r.gaussian()};
            tensor::MPS m(std::move(t), std::move(b),
                          std::vector<std::size_t>(3, 2));
            tensor::MPS back = tensor::homps_reconstruct(tensor::homps_decompose(m, 2));
            for (int site = 0; site < 3; ++site)
                for (int i = 0; i < 2; ++i) {
                    Matrix d = back.site_tensors[site][i];
                    d -= m.site_tensors[site][i];
                    worst_elem = std::max(worst_elem, d.max_abs());
                }
        }
    }
    pass = pass && worst_elem <= 1e-10;
    char buf[120];
    std::snprintf(buf, sizeof buf, "round trip 1-%.2e, HO-MPS max elementwise %.2e",
                  1.0 - worst_rt, worst_elem);
    report(4, "MPS round trips, entropy bounds, HO-MPS exactness", pass, buf);
}

// ---- criterion 5: QSVT ----

void criterion_5() {
    rng::Rng r(5005);
    double worst_val = 0.0, worst_align = 1.0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t d = 2 + inst % 2;
        Matrix a(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a(i, j) = {r.gaussian(), r.gaussian()};
        a *= cxd{0.85 / linalg::spectral_norm(a), 0.0};
        auto sa = linalg::svd(a);
        algo::BlockEncoding be = algo::block_encode(a);
        const std::size_t len = 1 + r.integer(8);
        std::vector<double> ph(len);
        for (double& v : ph) v = (r.uniform() - 0.5) * 2.0 * M_PI;
        algo::PhaseSequence phases(ph);
        Matrix b = algo::qsvt_apply(be, phases);

        const bool to_out = (len % 2) == 0;  // L+1 odd maps in to out frame
        for (std::size_t i = 0; i < d; ++i) {
            Vec vi(d), xi(d);
            for (std::size_t q = 0; q < d; ++q) {
                vi[q] = sa.v(q, i);
                xi[q] = to_out ? sa.u(q, i) : sa.v(q, i);
            }
            const cxd want = algo::qsp_reduction_oracle(sa.sigma[i], phases);
            Vec bv = linalg::mat_vec(b, vi);
            const cxd beta = linalg::dot(xi, bv);
            worst_val = std::max(worst_val, std::abs(std::abs(beta) - std::abs(want)));
            const double bn = linalg::norm(bv);
            if (bn > 1e-9)
                worst_align = std::min(worst_align, std::abs(beta) / bn);
        }
    }
    bool pass = worst_val <= 1e-8 && worst_align >= 1.0 - 1e-6;

    // LCU of noncommuting seeds
    Matrix ax = Matrix(2, 2, {0, 1, 1, 0}) * cxd{0.8, 0.0};
    Matrix az = Matrix(2, 2, {1, 0, 0, -1}) * cxd{0.7, 0.0};
    algo::PhaseSequence p1(std::vector<double>{0.3, -0.9});
    algo::PhaseSequence p2(std::vector<double>{1.1, 0.4, -2.0});
    const cxd b1{0.6, -0.1}, b2{0.2, 0.5};
    auto combo = algo::lcu_combine({{b1, algo::block_encode(ax), p1},
                                    {b2, algo::block_encode(az), p2}});
    Matrix direct = algo::qsvt_apply(algo::block_encode(ax), p1) * b1 +
                    algo::qsvt_apply(algo::block_encode(az), p2) * b2;
    Matrix got = combo.be.block() * cxd{combo.subnormalization, 0.0};
    got -= direct;
    const double lcu_err = got.max_abs();
    pass = pass && lcu_err <= 1e-8;

    // degree-10 cos/sin simulation of a 2x2 Hamiltonian with |Ht| <= 1
    Matrix h = rng::random_hermitian(2, r);
    h *= cxd{1.0 / linalg::spectral_norm(h), 0.0};
    auto sim = algo::hamiltonian_sim_lcu(h, 1.0, 10);
    const double sim_err =
        linalg::spectral_norm(sim.matrix - linalg::expm_hermitian(h, -1.0));
    pass = pass && sim_err <= 1e-6;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "value err %.2e, alignment 1-%.2e, lcu %.2e, hamsim %.2e", worst_val,
                  1.0 - worst_align, lcu_err, sim_err);
    report(5, "QSVT against the 2x2 oracle, LCU, cos/sin simulation", pass, buf);
}

// ---- criterion 6: AQC ----

void criterion_6() {
    qca::LocalHamiltonian hx({{Matrix(2, 2, {0, -1, -1, 0}), {0}}}, 1);
    qca::LocalHamiltonian hz({{Matrix(2, 2, {-1, 0, 0, 1}), {0}}}, 1);
    aqc::AdiabaticPath path(hx, hz);

    auto prof = aqc::gap_profile(path, 1025);
    const double gap_err = std::abs(prof.delta_min - std::sqrt(2.0));

    core::PureState plus = core::PureState::normalized(Vec{1.0, 1.0}, {2});
    auto slow = aqc::adiabatic_evolve(path, 50.0, 500, plus);
    auto sudden = aqc::adiabatic_evolve(path, 0.0, 10, plus);

    rng::Rng r(6006);
    double worst_res = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t wires = 1 + r.integer(2);
        circuit::Circuit c = random_htcz_circuit(wires, 1 + r.integer(5), r);
        auto ch = aqc::fkch_hamiltonian(c);
        core::PureState hist = aqc::history_state(
            c, core::PureState::zero(std::vector<std::size_t>(wires, 2)));
        worst_res = std::max(
            worst_res, linalg::norm(linalg::mat_vec(ch.terms.dense(),
                                                    hist.amplitudes())));
    }

    const bool pass = gap_err <= 1e-6 && slow.ground_overlap >= 0.99 &&
                      std::abs(sudden.ground_overlap - 0.5) <= 1e-3 &&
                      worst_res <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gap err %.2e, overlap(50) %.4f, overlap(0) %.4f, residual %.2e",
                  gap_err, slow.ground_overlap, sudden.ground_overlap, worst_res);
    report(6, "gap profile, adiabatic and sudden limits, history residuals", pass, buf);
}

// ---- criterion 7: SPQC ----

void criterion_7() {
    rng::Rng r(7007);
    bool pass = true;

    std::vector<core::UnitaryOp> programs;
    for (int i = 0; i < 4; ++i) programs.emplace_back(rng::random_unitary(2, r));
    auto proc = algo::build_select_processor(programs);
    double max_overlap = 0.0;
    for (std::size_t i = 0; i < programs.size(); ++i)
        for (std::size_t j = i + 1; j < programs.size(); ++j) {
            auto rep = algo::no_programming_check(
                proc.g, proc.program_states[i], proc.program_states[j],
                programs[i].matrix(), programs[j].matrix());
            pass = pass && rep.implements_u && rep.implements_v;
            max_overlap = std::max(max_overlap, std::abs(rep.program_overlap));
        }
    pass = pass && max_overlap <= 1e-12;

    bool roundtrips = true;
    for (int trial = 0; trial < 20; ++trial) {
        circuit::Circuit c = random_htcz_circuit(2 + r.integer(3), 1 + r.integer(10), r);
        algo::ClassicalProgram enc = algo::program_encode(c);
        circuit::Circuit back = algo::program_decode(enc);
        algo::ClassicalProgram enc2 = algo::program_encode(back);
        roundtrips = roundtrips && enc.bits == enc2.bits &&
                     back.gates.size() == c.gates.size();
        for (std::size_t g = 0; g < c.gates.size() && roundtrips; ++g)
            roundtrips = back.gates[g].kind == c.gates[g].kind &&
                         back.gates[g].targets == c.gates[g].targets;
    }
    pass = pass && roundtrips;

    // "00 for H" byte layout, plus T = 01 and CZ = 10 in the first two bits
    circuit::Circuit h1(1, {circuit::Gate(circuit::GateKind::H, {0})});
    circuit::Circuit t1(1, {circuit::Gate(circuit::GateKind::T, {0})});
    circuit::Circuit cz(2, {circuit::Gate(circuit::GateKind::CZ, {0, 1})});
    const bool layout = (algo::program_encode(h1).bits[0] & 0b11) == 0b00 &&
                        (algo::program_encode(t1).bits[0] & 0b11) == 0b01 &&
                        (algo::program_encode(cz).bits[0] & 0b11) == 0b10;
    pass = pass && layout;

    char buf[120];
    std::snprintf(buf, sizeof buf, "max program overlap %.2e, layout %s", max_overlap,
                  layout ? "ok" : "bad");
    report(7, "select-processor orthogonality and classical program format", pass, buf);
}

// ---- criterion 8: uncertainty relations ----

void criterion_8() {
    rng::Rng r(8008);
    double worst_rs = 1.0, worst_te = 1.0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 2 + i % 3;
        core::PureState psi(rng::random_state_vector(d, r), {d});
        Matrix a = rng::random_hermitian(d, r);
        Matrix b = rng::random_hermitian(d, r);
        auto rep = core::uncertainty_bounds(psi, a, b);
        const double lhs = rep.delta_a * rep.delta_a * rep.delta_b * rep.delta_b;
        worst_rs = std::min(worst_rs, lhs - rep.rs_bound);
        if (rep.tau_a)
            worst_te = std::min(worst_te, *rep.tau_a * rep.delta_b - 0.5);
    }
    const bool pass = worst_rs >= -1e-10 && worst_te >= -1e-10;
    char buf[120];
    std::snprintf(buf, sizeof buf, "min RS slack %.2e, min time-energy slack %.2e",
                  worst_rs, worst_te);
    report(8, "uncertainty relations on 1000 random triples", pass, buf);
}

// ---- criterion 9: MBQC determinism ----

void criterion_9() {
    rng::Rng r(9009);
    std::vector<Matrix> gates{
        Matrix::identity(2),
        Matrix(2, 2, {1, 0, 0, cxd{0, 1}}),  // S
        circuit::Gate(circuit::GateKind::H, {0}).matrix(),
        circuit::Gate(circuit::GateKind::T, {0}).matrix(),
    };
    for (int i = 0; i < 4; ++i) gates.push_back(rng::random_unitary(2, r));

    double worst = 1.0;
    for (const Matrix& u : gates) {
        mbqc::MeasurementPattern p = mbqc::compile_1q_gate(u);
        core::PureState in(rng::random_state_vector(2, r), {2});
        core::PureState resource = mbqc::wire_resource(in, 5);
        std::vector<Vec> outs;
        for (int mask = 0; mask < 16; ++mask) {
            auto run = mbqc::run_pattern(
                resource, p,
                mbqc::Branch::fixed({mask & 1, (mask >> 1) & 1, (mask >> 2) & 1,
                                     (mask >> 3) & 1}));
            Vec corrected = run.final_state.amplitudes();
            linalg::apply_on_targets(corrected, {2},
                                     run.byproduct.to_matrix().adjoint(), {0});
            linalg::normalize(corrected);
            outs.push_back(std::move(corrected));
        }
        for (std::size_t i = 0; i < outs.size(); ++i)
            for (std::size_t j = i + 1; j < outs.size(); ++j)
                worst = std::min(worst, core::fidelity(outs[i], outs[j]));
    }
    const bool pass = worst >= 1.0 - 1e-9;
    char buf[80];
    std::snprintf(buf, sizeof buf, "min pairwise branch fidelity 1-%.2e", 1.0 - worst);
    report(9, "compiled patterns are branch-deterministic after correction", pass, buf);
}

// ---- criterion 10: CLI contract ----

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun cli_run(const std::string& args) {
    const std::string cmd = std::string(UQCM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {127, ""};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), got);
    return {WEXITSTATUS(pclose(pipe)), std::move(out)};
}

void criterion_10() {
    auto write = [](const char* name, const char* text) {
        std::string path = std::string("acceptance_") + name;
        std::ofstream f(path);
        f << text;
        return path;
    };
    std::string good = write("ok.json",
        R"({"version":1,"qubits":2,"gates":[{"kind":"H","targets":[0]},
            {"kind":"CZ","targets":[0,1]},{"kind":"T","targets":[1]}]})");
    std::string bad = write("bad.json",
        R"({"version":1,"qubits":2,"gates":[{"kind":"H","targets":[-1]}]})");
    std::string rep3 = write("rep3.json",
        R"({"n":3,"stabilizers":["ZZI","IZZ"]})");
    std::string zerr = write("zerr.json", R"({"errors":["III","ZII"]})");

    const CliRun pass_run =
        cli_run("equiv --circuit " + good + " --models circuit,mps,mbqc --seed 11");
    const CliRun fail_run = cli_run("check-code --code " + rep3 + " --errors " + zerr);
    const CliRun usage_run = cli_run("simulate --circuit " + bad);

    const std::string repeat_args =
        "equiv --circuit " + good + " --models circuit,mps,mbqc,fkch --seed 99";
    const CliRun r1 = cli_run(repeat_args);
    const CliRun r2 = cli_run(repeat_args);

    const bool pass = pass_run.exit_code == 0 && fail_run.exit_code == 1 &&
                      usage_run.exit_code == 2 && r1.exit_code == r2.exit_code &&
                      !r1.out.empty() && r1.out == r2.out;
    char buf[120];
    std::snprintf(buf, sizeof buf, "exit codes %d/%d/%d, reproducible %s",
                  pass_run.exit_code, fail_run.exit_code, usage_run.exit_code,
                  r1.out == r2.out ? "yes" : "no");
    report(10, "CLI exit-code contract and byte reproducibility", pass, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
}
