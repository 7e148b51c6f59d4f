// uqcm: universal-model quantum computing toolkit, command-line surface.
//
// Exit codes: 0 success / check passed, 1 check or equivalence failure,
// 2 usage error or malformed input. Reports are single JSON objects on
// stdout; --pretty switches to indented output. All randomness flows from
// --seed (default 0), so identical invocations produce identical bytes
// (timings are only attached under --timings).

#include <cinttypes>
#include <iostream>

#include <CLI11.hpp>

#include "uqcm/algorithms.hpp"
#include "uqcm/aqc.hpp"
#include "uqcm/equivalence.hpp"
#include "uqcm/random.hpp"
#include "uqcm/serialize.hpp"
#include "uqcm/tensor.hpp"

using namespace uqcm;
using nlohmann::ordered_json;

namespace {

ordered_json complex_to_json(const linalg::cxd& z) {
    return ordered_json::array({z.real(), z.imag()});
}

ordered_json state_to_json(const core::PureState& s) {
    ordered_json a = ordered_json::array();
    for (const linalg::cxd& z : s.amplitudes()) a.push_back(complex_to_json(z));
    return a;
}

ordered_json matrix_to_json(const linalg::Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit(const ordered_json& doc, bool pretty) {
    if (pretty)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << doc.dump() << "\n";
}

int run_simulate(const std::string& circuit_path, bool pretty) {
    circuit::Circuit c =
        cli::parse_circuit_document(cli::load_json_file(circuit_path));
    core::PureState out = circuit::simulate(c);
    ordered_json doc;
    doc["command"] = "simulate";
    doc["qubits"] = c.wires;
    doc["gates"] = c.gates.size();
    doc["state"] = state_to_json(out);
    emit(doc, pretty);
    return 0;
}

int run_convert(const std::string& circuit_path, const std::string& to, bool pretty) {
    circuit::Circuit c =
        cli::parse_circuit_document(cli::load_json_file(circuit_path));
    ordered_json doc;
    doc["command"] = "convert";
    doc["to"] = to;

    if (to == "mps") {
        core::PureState dense = circuit::simulate(c);
        tensor::MPS m = tensor::state_to_mps(dense, 0, 0.0);
        doc["bond_dims"] = m.bond_dims();
        ordered_json ent = ordered_json::array();
        for (std::size_t cut = 1; cut < m.sites(); ++cut)
            ent.push_back(tensor::bond_entanglement(m, cut));
        doc["cut_entropies_bits"] = std::move(ent);
        doc["round_trip_fidelity"] =
            core::fidelity(tensor::mps_contract(m), dense);
    } else if (to == "program") {
        algo::ClassicalProgram p = algo::program_encode(c);
        doc["qubits"] = p.qubits;
        doc["gate_count"] = p.gate_count;
        char buf[3];
        std::string hex;
        for (std::uint8_t b : p.bits) {
            std::snprintf(buf, sizeof buf, "%02x", b);
            hex += buf;
        }
        doc["bits_hex"] = hex;
        doc["bits_per_gate"] = 26;
        circuit::Circuit back = algo::program_decode(p);
        doc["round_trip_ok"] = back.gates.size() == c.gates.size();
    } else if (to == "fkch") {
        auto ch = aqc::fkch_hamiltonian(c);
        core::PureState hist = aqc::history_state(
            c, core::PureState::zero(std::vector<std::size_t>(c.wires, 2)));
        linalg::Vec hpsi = linalg::mat_vec(ch.terms.dense(), hist.amplitudes());
        doc["clock_qubits"] = ch.clock_qubits;
        doc["total_qubits"] = c.wires + ch.clock_qubits;
        doc["terms"] = ch.terms.terms().size();
        doc["history_residual"] = linalg::norm(hpsi);
    } else {
        throw cli::ParseError("--to: expected one of mps, program, fkch");
    }
    emit(doc, pretty);
    return 0;
}

std::vector<linalg::Matrix> error_set(const std::string& spec,
                                      const codes::StabilizerCode& code) {
    const std::size_t n = code.n();
    std::vector<linalg::Matrix> errs{
        linalg::Matrix::identity(std::size_t(1) << n)};
    if (spec == "single-x") {
        for (std::size_t w = 0; w < n; ++w)
            errs.push_back(codes::PauliString::single(n, 'X', w).to_matrix());
        return errs;
    }
    if (spec == "single-pauli") {
        for (const auto& p : codes::pauli_errors_up_to_weight(n, 1))
            if (p.weight() == 1) errs.push_back(p.to_matrix());
        return errs;
    }
    // otherwise a JSON file with {"errors": ["IXZ", ...]}
    ordered_json doc = cli::load_json_file(spec);
    if (!doc.is_object() || !doc.contains("errors") || !doc["errors"].is_array())
        throw cli::ParseError("errors: expected an object with an \"errors\" array");
    errs.clear();
    std::size_t i = 0;
    for (const auto& e : doc["errors"]) {
        if (!e.is_string())
            throw cli::ParseError("errors[" + std::to_string(i) + "]: expected a string");
        codes::PauliString p = codes::PauliString::parse(e.get<std::string>());
        if (p.size() != n)
            throw cli::ParseError("errors[" + std::to_string(i) + "]: length mismatch");
        errs.push_back(p.to_matrix());
        ++i;
    }
    return errs;
}

int run_check_code(const std::string& code_path, const std::string& errors_spec,
                   bool pretty) {
    codes::StabilizerCode code =
        cli::parse_code_document(cli::load_json_file(code_path));
    codes::CodeProjector proj = codes::projector_from_stabilizers(code);
    std::vector<linalg::Matrix> errs = error_set(errors_spec, code);
    codes::KlReport rep = codes::kl_check(proj, errs);

    ordered_json doc;
    doc["command"] = "check-code";
    doc["n"] = code.n();
    doc["k"] = code.k();
    doc["rank"] = proj.rank();
    doc["errors"] = errs.size();
    doc["correctable"] = rep.correctable;
    doc["a_matrix"] = matrix_to_json(rep.a);
    if (rep.witness) {
        doc["witness"] = ordered_json::array({rep.witness->first, rep.witness->second});
    } else {
        codes::KrausChannel rec = codes::recovery_from_errors(proj, errs);
        doc["recovery_kraus_count"] = rec.kraus_ops().size();
    }
    emit(doc, pretty);
    return rep.correctable ? 0 : 1;
}

int run_qsvt(std::size_t dim, std::size_t length, std::size_t count,
             std::uint64_t seed, bool pretty) {
    if (dim < 2 || dim > 4) throw cli::ParseError("--dim: expected 2..4");
    if (length < 1 || length > 8) throw cli::ParseError("--length: expected 1..8");
    rng::Rng r(seed);
    double max_value_err = 0.0, min_alignment = 1.0;
    for (std::size_t inst = 0; inst < count; ++inst) {
        linalg::Matrix a(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                a(i, j) = {r.gaussian(), r.gaussian()};
        a *= linalg::cxd{0.9 / linalg::spectral_norm(a), 0.0};
        auto sa = linalg::svd(a);
        algo::BlockEncoding be = algo::block_encode(a);
        std::vector<double> ph(length);
        for (double& v : ph) v = (r.uniform() - 0.5) * 2.0 * M_PI;
        algo::PhaseSequence phases(ph);
        linalg::Matrix b = algo::qsvt_apply(be, phases);

        const bool to_out_frame = (length % 2) == 0;
        for (std::size_t i = 0; i < dim; ++i) {
            linalg::Vec vi(dim), xi(dim);
            for (std::size_t q = 0; q < dim; ++q) {
                vi[q] = sa.v(q, i);
                xi[q] = to_out_frame ? sa.u(q, i) : sa.v(q, i);
            }
            const linalg::cxd beta = linalg::dot(xi, linalg::mat_vec(b, vi));
            const linalg::cxd want = algo::qsp_reduction_oracle(sa.sigma[i], phases);
            max_value_err = std::max(max_value_err, std::abs(std::abs(beta) -
                                                             std::abs(want)));
            linalg::Vec bv = linalg::mat_vec(b, vi);
            const double bn = linalg::norm(bv);
            if (bn > 1e-9)
                min_alignment = std::min(min_alignment, std::abs(beta) / bn);
        }
    }
    const bool pass = max_value_err <= 1e-8 && min_alignment >= 1.0 - 1e-6;
    ordered_json doc;
    doc["command"] = "qsvt";
    doc["instances"] = count;
    doc["dim"] = dim;
    doc["phase_length"] = length;
    doc["max_singular_value_error"] = max_value_err;
    doc["min_vector_alignment"] = min_alignment;
    doc["pass"] = pass;
    emit(doc, pretty);
    return pass ? 0 : 1;
}

int run_equiv(const std::string& circuit_path, const std::string& models_csv,
              double tol, std::uint64_t seed, bool pretty, bool timings) {
    circuit::Circuit c =
        cli::parse_circuit_document(cli::load_json_file(circuit_path));
    std::vector<equiv::Model> models;
    std::string token;
    for (std::size_t i = 0; i <= models_csv.size(); ++i) {
        if (i == models_csv.size() || models_csv[i] == ',') {
            if (!token.empty()) {
                auto m = equiv::model_from_name(token);
                if (!m)
                    throw cli::ParseError("--models: unknown model \"" + token + "\"");
                models.push_back(*m);
                token.clear();
            }
        } else {
            token += models_csv[i];
        }
    }
    if (models.empty()) throw cli::ParseError("--models: empty list");

    equiv::EquivReport rep = equiv::cross_model_equivalence(c, models, tol, seed);

    ordered_json doc;
    doc["command"] = "equiv";
    doc["tolerance"] = rep.tolerance;
    doc["models"] = ordered_json::array();
    for (const auto& o : rep.outcomes) {
        ordered_json mo;
        mo["name"] = equiv::model_name(o.model);
        mo["ok"] = o.ok;
        if (!o.ok) mo["error"] = o.error;
        if (timings) mo["runtime_ms"] = o.runtime_ms;
        doc["models"].push_back(std::move(mo));
    }
    doc["fidelities"] = ordered_json::array();
    for (const auto& f : rep.fidelities) {
        ordered_json fj;
        fj["pair"] = std::string(equiv::model_name(f.a)) + "/" +
                     equiv::model_name(f.b);
        fj["fidelity"] = f.fidelity;
        doc["fidelities"].push_back(std::move(fj));
    }
    doc["pass"] = rep.pass;
    emit(doc, pretty);
    return rep.pass ? 0 : 1;
}

int run_demo(std::uint64_t seed, bool pretty) {
    ordered_json doc;
    doc["command"] = "demo";

    // GHZ preparation checked across three representations
    circuit::Circuit ghz(3, {circuit::Gate(circuit::GateKind::H, {0}),
                             circuit::Gate(circuit::GateKind::CNOT, {0, 1}),
                             circuit::Gate(circuit::GateKind::CNOT, {1, 2})});
    auto rep = equiv::cross_model_equivalence(
        ghz, {equiv::Model::CircuitModel, equiv::Model::Mps, equiv::Model::Mbqc},
        1e-9, seed);
    ordered_json ghzj;
    ghzj["pass"] = rep.pass;
    for (const auto& f : rep.fidelities)
        ghzj[std::string(equiv::model_name(f.a)) + "/" + equiv::model_name(f.b)] =
            f.fidelity;
    doc["ghz_equivalence"] = std::move(ghzj);

    // repetition code corrects a deterministic bit flip
    codes::StabilizerCode rep3(3, {codes::PauliString::parse("ZZI"),
                                   codes::PauliString::parse("IZZ")});
    codes::CodeProjector proj = codes::projector_from_stabilizers(rep3);
    std::vector<linalg::Matrix> errs{linalg::Matrix::identity(8)};
    for (std::size_t w = 0; w < 3; ++w)
        errs.push_back(codes::PauliString::single(3, 'X', w).to_matrix());
    auto kl = codes::kl_check(proj, errs);
    auto rec = codes::recovery_from_errors(proj, errs);
    linalg::Vec zero_l(8, linalg::cxd{});
    zero_l[0] = 1.0;
    linalg::Matrix rho = linalg::outer(zero_l, zero_l);
    linalg::Matrix x1 = codes::PauliString::single(3, 'X', 1).to_matrix();
    linalg::Matrix recovered =
        core::channel_apply(x1 * rho * x1.adjoint(), rec);
    ordered_json cj;
    cj["correctable"] = kl.correctable;
    cj["flip_recovered_fidelity"] = (rho * recovered).trace().real();
    doc["repetition_code"] = std::move(cj);

    // a QSVT transform verified against the 2x2 oracle
    linalg::Matrix a(2, 2);
    a(0, 0) = 0.8;
    a(1, 1) = 0.3;
    algo::PhaseSequence phases(std::vector<double>{0.4, -1.1, 2.2});
    linalg::Matrix b = algo::qsvt_apply(algo::block_encode(a), phases);
    ordered_json qj;
    qj["sigma_in"] = ordered_json::array({0.8, 0.3});
    qj["oracle_error"] = std::max(
        std::abs(b(0, 0) - algo::qsp_reduction_oracle(0.8, phases)),
        std::abs(b(1, 1) - algo::qsp_reduction_oracle(0.3, phases)));
    doc["qsvt_sample"] = std::move(qj);

    emit(doc, pretty);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal quantum computing model toolkit"};
    app.require_subcommand(1);

    std::string circuit_path, code_path, errors_spec = "single-x";
    std::string to = "mps", models_csv = "circuit,mps";
    double tol = 1e-9;
    std::uint64_t seed = 0;
    bool pretty = false, timings = false;
    std::size_t dim = 2, length = 4, count = 20;

    app.add_flag("--pretty", pretty, "indent the JSON report");
    app.add_option("--seed", seed, "seed for every stochastic path");

    auto* sim = app.add_subcommand("simulate", "dense statevector run of a circuit");
    sim->fallthrough();
    sim->add_option("--circuit", circuit_path, "circuit JSON file")->required();

    auto* conv = app.add_subcommand("convert",
                                    "re-express a circuit in another representation");
    conv->fallthrough();
    conv->add_option("--circuit", circuit_path, "circuit JSON file")->required();
    conv->add_option("--to", to, "mps | program | fkch");

    auto* chk = app.add_subcommand(
        "check-code", "correctability of an error set on a stabilizer code");
    chk->fallthrough();
    chk->add_option("--code", code_path, "code JSON file")->required();
    chk->add_option("--errors", errors_spec, "single-x | single-pauli | JSON file");

    auto* qs = app.add_subcommand("qsvt",
                                  "verify random transforms against the 2x2 oracle");
    qs->fallthrough();
    qs->add_option("--dim", dim, "encoded matrix dimension (2..4)");
    qs->add_option("--length", length, "phase sequence length (1..8)");
    qs->add_option("--count", count, "number of random instances");

    auto* eq = app.add_subcommand("equiv", "cross-model equivalence of a circuit");
    eq->fallthrough();
    eq->add_option("--circuit", circuit_path, "circuit JSON file")->required();
    eq->add_option("--models", models_csv, "comma list from circuit,mps,mbqc,fkch");
    eq->add_option("--tol", tol, "fidelity tolerance");
    eq->add_flag("--timings", timings, "attach per-model runtimes (non-reproducible)");

    auto* demo = app.add_subcommand("demo", "small cross-module showcase");
    demo->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(sim)) return run_simulate(circuit_path, pretty);
        if (app.got_subcommand(conv)) return run_convert(circuit_path, to, pretty);
        if (app.got_subcommand(chk))
            return run_check_code(code_path, errors_spec, pretty);
        if (app.got_subcommand(qs)) return run_qsvt(dim, length, count, seed, pretty);
        if (app.got_subcommand(eq))
            return run_equiv(circuit_path, models_csv, tol, seed, pretty, timings);
        return run_demo(seed, pretty);
    } catch (const cli::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
