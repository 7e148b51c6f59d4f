#pragma once

#include <string>

#include <json.hpp>

#include "uqcm/circuit.hpp"
#include "uqcm/codes.hpp"
#include "uqcm/mbqc.hpp"

// File formats. Circuit documents, stabilizer codes and measurement
// patterns travel as JSON; parse errors name the offending field.

namespace uqcm::cli {

using json = nlohmann::ordered_json;

// malformed document; what() names the offending field
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// {"version":1,"qubits":n,"gates":[{"kind":"H","targets":[0]},...]}
circuit::Circuit parse_circuit_document(const json& doc);
json emit_circuit_document(const circuit::Circuit& c);

// {"n":3,"stabilizers":["ZZI","IZZ"],"logical_x":"XXX","logical_z":"ZII"}
codes::StabilizerCode parse_code_document(const json& doc);
json emit_code_document(const codes::StabilizerCode& code);

// {"sites":5,"steps":[{"site":0,"plane":"XY","angle":0.785,"deps":[]}],
//  "inputs":[0],"outputs":[4],
//  "corrections":[{"site":4,"x_deps":[1,3],"z_deps":[0,2]}]}
mbqc::MeasurementPattern parse_pattern_document(const json& doc);
json emit_pattern_document(const mbqc::MeasurementPattern& p);

json load_json_file(const std::string& path);

}  // namespace uqcm::cli
