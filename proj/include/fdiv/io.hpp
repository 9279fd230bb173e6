#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdiv/bounds.hpp"
#include "fdiv/circuit.hpp"
#include "fdiv/measure.hpp"

namespace structdiv {

/// Measure file:
///   { "domain": "theta" | "unitary",
///     "atoms": [ { "params": [radians...] | "label": str | "matrix": [[[re, im], ...], ...],
///                  "weight": num } ] }
/// "matrix" is accepted on the unitary domain and is encoded losslessly into
/// the atom label. Errors name the offending field, e.g. "atoms[2].weight".
DiscreteMeasure parse_measure(const nlohmann::json& doc);
DiscreteMeasure load_measure(const std::filesystem::path& path);
nlohmann::json measure_to_json(const DiscreteMeasure& m);

/// Circuit file:
///   { "qubits": n,
///     "layers": [ [ {"pauli_sum": [[coef, "IZX"], ...]}, ... ], ... ],
///     "observable": {"pauli_sum": ...},
///     "init": "plus_all" | [amplitude, ...] }
/// Amplitudes are numbers or [re, im] pairs.
CircuitProblem parse_circuit(const nlohmann::json& doc);
CircuitProblem load_circuit(const std::filesystem::path& path);

/// Column order of report tables.
inline constexpr const char* kReportColumns[] = {
    "kind", "space", "generator", "k", "n", "r", "lhs", "rhs", "slack", "tight"};

void write_reports_csv(std::ostream& out, std::span<const BoundReport> reports);
nlohmann::json reports_to_json(std::span<const BoundReport> reports);

/// Minimal CSV writer for ad-hoc tables: header then rows of preformatted
/// cells.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Array of objects keyed by header names. Cells that parse as numbers are
/// emitted as numbers, "true"/"false" as booleans.
nlohmann::json table_to_json(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows);

}  // namespace structdiv
