#pragma once

// JSON encodings shared by the CLI and the test suites.
//
//   matrix:   row-major array of rows, each entry a two-element [re, im]
//   sequence: {"dim": d, "positive": bool, "items": [matrix, ...]}
//   grid:     {"dim": d, "grid_size": L, "points": [matrix, ...]}
//   report:   the fields of VerificationReport, ratios as a flat array

#include "ncmax/grid.hpp"
#include "ncmax/sequence.hpp"
#include "ncmax/verify.hpp"

#include <json.hpp>

#include <string>

namespace ncmax {

using json = nlohmann::json;

json matrix_to_json(const GeneralOperator& m);
GeneralOperator matrix_from_json(const json& j);

json sequence_to_json(const OperatorSequence& seq);
OperatorSequence sequence_from_json(const json& j);

json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const json& j);

json report_to_json(const VerificationReport& rep);
std::string reports_to_csv(const std::vector<VerificationReport>& reps);

json solver_config_to_json(const SolverConfig& c);
SolverConfig solver_config_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// "inf" or a decimal exponent >= 1.
double parse_exponent(const std::string& text);

}  // namespace ncmax
