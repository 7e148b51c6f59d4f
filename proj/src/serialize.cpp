#include "uqcm/serialize.hpp"

#include <fstream>

namespace uqcm::cli {

namespace {

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) throw ParseError(field + ": " + why);
}

std::size_t get_count(const json& j, const std::string& field) {
    require(j.is_number_integer() || j.is_number_unsigned(), field,
            "expected a non-negative integer");
    const auto v = j.get<long long>();
    require(v >= 0, field, "expected a non-negative integer");
    return std::size_t(v);
}

}  // namespace

circuit::Circuit parse_circuit_document(const json& doc) {
    require(doc.is_object(), "$", "expected an object");
    require(doc.contains("version"), "version", "missing");
    require(doc["version"].is_number_integer() && doc["version"].get<int>() == 1,
            "version", "expected 1");
    require(doc.contains("qubits"), "qubits", "missing");
    const std::size_t qubits = get_count(doc["qubits"], "qubits");
    require(doc.contains("gates") && doc["gates"].is_array(), "gates",
            "expected an array");

    std::vector<circuit::Gate> gates;
    std::size_t gi = 0;
    for (const json& g : doc["gates"]) {
        const std::string path = "gates[" + std::to_string(gi) + "]";
        require(g.is_object(), path, "expected an object");
        require(g.contains("kind") && g["kind"].is_string(), path + ".kind",
                "expected a string");
        auto kind = circuit::gate_kind_from_name(g["kind"].get<std::string>());
        require(kind.has_value(), path + ".kind",
                "unknown gate \"" + g["kind"].get<std::string>() + "\"");
        require(g.contains("targets") && g["targets"].is_array(), path + ".targets",
                "expected an array");
        std::vector<std::size_t> targets;
        std::size_t ti = 0;
        for (const json& t : g["targets"]) {
            const std::string tpath = path + ".targets[" + std::to_string(ti) + "]";
            require(t.is_number_integer() || t.is_number_unsigned(), tpath,
                    "expected an integer");
            const long long v = t.get<long long>();
            require(v >= 0, tpath, "negative wire index");
            require(std::size_t(v) < qubits, tpath, "wire index exceeds qubit count");
            targets.push_back(std::size_t(v));
            ++ti;
        }
        require(targets.size() == circuit::gate_arity(*kind), path + ".targets",
                "wrong arity for " + std::string(circuit::gate_name(*kind)));
        if (targets.size() == 2)
            require(targets[0] != targets[1], path + ".targets", "duplicate wires");
        gates.emplace_back(*kind, std::move(targets));
        ++gi;
    }
    return circuit::Circuit(qubits, std::move(gates));
}

json emit_circuit_document(const circuit::Circuit& c) {
    json doc;
    doc["version"] = 1;
    doc["qubits"] = c.wires;
    doc["gates"] = json::array();
    for (const circuit::Gate& g : c.gates) {
        if (g.kind == circuit::GateKind::Custom)
            throw std::invalid_argument("emit_circuit_document: custom gates have no name");
        json gj;
        gj["kind"] = circuit::gate_name(g.kind);
        gj["targets"] = g.targets;
        doc["gates"].push_back(std::move(gj));
    }
    return doc;
}

codes::StabilizerCode parse_code_document(const json& doc) {
    require(doc.is_object(), "$", "expected an object");
    require(doc.contains("n"), "n", "missing");
    const std::size_t n = get_count(doc["n"], "n");
    require(n >= 1, "n", "expected at least one qubit");
    require(doc.contains("stabilizers") && doc["stabilizers"].is_array(),
            "stabilizers", "expected an array");

    auto parse_pauli = [&](const json& j, const std::string& field) {
        require(j.is_string(), field, "expected a Pauli string");
        codes::PauliString p = [&] {
            try {
                return codes::PauliString::parse(j.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ParseError(field + ": " + e.what());
            }
        }();
        require(p.size() == n, field, "length does not match n");
        return p;
    };

    std::vector<codes::PauliString> gens;
    std::size_t si = 0;
    for (const json& s : doc["stabilizers"]) {
        gens.push_back(parse_pauli(s, "stabilizers[" + std::to_string(si) + "]"));
        ++si;
    }
    std::optional<codes::PauliString> lx, lz;
    if (doc.contains("logical_x")) lx = parse_pauli(doc["logical_x"], "logical_x");
    if (doc.contains("logical_z")) lz = parse_pauli(doc["logical_z"], "logical_z");
    std::optional<std::string> label;
    if (doc.contains("label")) {
        require(doc["label"].is_string(), "label", "expected a string");
        label = doc["label"].get<std::string>();
    }
    try {
        return codes::StabilizerCode(n, std::move(gens), std::move(lx), std::move(lz),
                                     std::move(label));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("stabilizers: ") + e.what());
    }
}

json emit_code_document(const codes::StabilizerCode& code) {
    json doc;
    doc["n"] = code.n();
    doc["stabilizers"] = json::array();
    for (const codes::PauliString& g : code.generators())
        doc["stabilizers"].push_back(g.str());
    if (code.logical_x()) doc["logical_x"] = code.logical_x()->str();
    if (code.logical_z()) doc["logical_z"] = code.logical_z()->str();
    if (code.label()) doc["label"] = *code.label();
    return doc;
}

mbqc::MeasurementPattern parse_pattern_document(const json& doc) {
    require(doc.is_object(), "$", "expected an object");
    require(doc.contains("sites"), "sites", "missing");
    const std::size_t sites = get_count(doc["sites"], "sites");
    require(doc.contains("steps") && doc["steps"].is_array(), "steps",
            "expected an array");

    std::vector<mbqc::MeasStep> steps;
    std::size_t si = 0;
    for (const json& s : doc["steps"]) {
        const std::string path = "steps[" + std::to_string(si) + "]";
        require(s.is_object(), path, "expected an object");
        require(s.contains("site"), path + ".site", "missing");
        mbqc::MeasStep step;
        step.site = get_count(s["site"], path + ".site");
        std::string plane = "XY";
        if (s.contains("plane")) {
            require(s["plane"].is_string(), path + ".plane", "expected a string");
            plane = s["plane"].get<std::string>();
        }
        require(plane == "XY" || plane == "Z", path + ".plane",
                "expected \"XY\" or \"Z\"");
        step.plane = plane == "XY" ? mbqc::Plane::XY : mbqc::Plane::Z;
        step.angle = 0.0;
        if (s.contains("angle")) {
            require(s["angle"].is_number(), path + ".angle", "expected a number");
            step.angle = s["angle"].get<double>();
        }
        if (s.contains("deps")) {
            require(s["deps"].is_array(), path + ".deps", "expected an array");
            std::size_t di = 0;
            for (const json& d : s["deps"]) {
                step.sign_deps.push_back(
                    get_count(d, path + ".deps[" + std::to_string(di) + "]"));
                ++di;
            }
        }
        steps.push_back(std::move(step));
        ++si;
    }

    require(doc.contains("outputs") && doc["outputs"].is_array(), "outputs",
            "expected an array");
    std::vector<std::size_t> outputs, inputs;
    std::size_t oi = 0;
    for (const json& o : doc["outputs"]) {
        outputs.push_back(get_count(o, "outputs[" + std::to_string(oi) + "]"));
        ++oi;
    }
    if (doc.contains("inputs")) {
        require(doc["inputs"].is_array(), "inputs", "expected an array");
        std::size_t ii = 0;
        for (const json& i : doc["inputs"]) {
            inputs.push_back(get_count(i, "inputs[" + std::to_string(ii) + "]"));
            ++ii;
        }
    }

    std::vector<mbqc::OutputCorrection> corrections(outputs.size());
    if (doc.contains("corrections")) {
        require(doc["corrections"].is_array(), "corrections", "expected an array");
        std::size_t ci = 0;
        for (const json& c : doc["corrections"]) {
            const std::string path = "corrections[" + std::to_string(ci) + "]";
            require(c.is_object() && c.contains("site"), path,
                    "expected an object with a site");
            const std::size_t site = get_count(c["site"], path + ".site");
            auto it = std::find(outputs.begin(), outputs.end(), site);
            require(it != outputs.end(), path + ".site", "not an output site");
            mbqc::OutputCorrection& oc = corrections[std::size_t(it - outputs.begin())];
            for (const char* key : {"x_deps", "z_deps"}) {
                if (!c.contains(key)) continue;
                require(c[key].is_array(), path + "." + key, "expected an array");
                std::size_t di = 0;
                for (const json& d : c[key]) {
                    const std::size_t v = get_count(
                        d, path + "." + key + "[" + std::to_string(di) + "]");
                    (std::string(key) == "x_deps" ? oc.x_deps : oc.z_deps).push_back(v);
                    ++di;
                }
            }
            ++ci;
        }
    }
    try {
        return mbqc::MeasurementPattern(sites, std::move(steps), std::move(inputs),
                                        std::move(outputs), std::move(corrections));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("steps: ") + e.what());
    }
}

json emit_pattern_document(const mbqc::MeasurementPattern& p) {
    json doc;
    doc["sites"] = p.sites;
    doc["steps"] = json::array();
    for (const mbqc::MeasStep& s : p.steps) {
        json sj;
        sj["site"] = s.site;
        sj["plane"] = s.plane == mbqc::Plane::XY ? "XY" : "Z";
        sj["angle"] = s.angle;
        sj["deps"] = s.sign_deps;
        doc["steps"].push_back(std::move(sj));
    }
    doc["inputs"] = p.inputs;
    doc["outputs"] = p.outputs;
    doc["corrections"] = json::array();
    for (std::size_t i = 0; i < p.outputs.size(); ++i) {
        json cj;
        cj["site"] = p.outputs[i];
        cj["x_deps"] = p.corrections[i].x_deps;
        cj["z_deps"] = p.corrections[i].z_deps;
        doc["corrections"].push_back(std::move(cj));
    }
    return doc;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

}  // namespace uqcm::cli
