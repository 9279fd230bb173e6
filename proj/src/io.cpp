#include "fdiv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "fdiv/error.hpp"
#include "fdiv/pushforward.hpp"

namespace structdiv {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

Complex complex_at(const json& node, const std::string& where) {
  if (node.is_number()) return {number_at(node, where), 0.0};
  if (node.is_array() && node.size() == 2) {
    return {number_at(node[0], where + "[0]"), number_at(node[1], where + "[1]")};
  }
  fail(where, "expected a number or a [re, im] pair");
}

Matrix matrix_at(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) fail(where, "expected a square matrix");
  const auto dim = static_cast<Eigen::Index>(node.size());
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = node[static_cast<std::size_t>(i)];
    const auto row_where = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      fail(row_where, "row length does not match the matrix size");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = complex_at(row[static_cast<std::size_t>(j)],
                           row_where + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

HermitianOperator operator_at(const json& node, const std::string& where, int qubits) {
  if (!node.is_object() || !node.contains("pauli_sum")) {
    fail(where, "expected an object with a \"pauli_sum\" field");
  }
  const auto& sum = node["pauli_sum"];
  if (!sum.is_array() || sum.empty()) fail(where + ".pauli_sum", "expected a non-empty array");
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const auto term_where = where + ".pauli_sum[" + std::to_string(i) + "]";
    const auto& term = sum[i];
    if (!term.is_array() || term.size() != 2 || !term[1].is_string()) {
      fail(term_where, "expected [coefficient, \"pauli string\"]");
    }
    auto paulis = term[1].get<std::string>();
    if (static_cast<int>(paulis.size()) != qubits) {
      fail(term_where, "Pauli string length " + std::to_string(paulis.size()) +
                           " does not match qubit count " + std::to_string(qubits));
    }
    if (paulis.find_first_not_of("IXYZ") != std::string::npos) {
      fail(term_where, "Pauli string may only contain I, X, Y, Z");
    }
    terms.push_back({number_at(term[0], term_where + "[0]"), std::move(paulis)});
  }
  try {
    return HermitianOperator::from_pauli_sum(std::move(terms));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::string cell_for(double v) { return format_double(v); }

}  // namespace

DiscreteMeasure parse_measure(const json& doc) {
  if (!doc.is_object()) fail("measure", "expected a JSON object");
  if (!doc.contains("domain") || !doc["domain"].is_string()) {
    fail("domain", "expected \"theta\" or \"unitary\"");
  }
  const auto domain_name = doc["domain"].get<std::string>();
  Domain domain;
  if (domain_name == "theta") {
    domain = Domain::ParameterSpace;
  } else if (domain_name == "unitary") {
    domain = Domain::UnitaryGroup;
  } else {
    fail("domain", "expected \"theta\" or \"unitary\", got \"" + domain_name + "\"");
  }
  if (!doc.contains("atoms") || !doc["atoms"].is_array() || doc["atoms"].empty()) {
    fail("atoms", "expected a non-empty array");
  }
  std::vector<Atom> atoms;
  std::set<std::string> seen;
  const auto& list = doc["atoms"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "atoms[" + std::to_string(i) + "]";
    const auto& node = list[i];
    if (!node.is_object()) fail(where, "expected an object");
    if (!node.contains("weight")) fail(where + ".weight", "missing");
    const double weight = number_at(node["weight"], where + ".weight");
    if (weight < 0.0) fail(where + ".weight", "negative weight " + format_double(weight));

    std::string label;
    if (node.contains("params")) {
      if (domain != Domain::ParameterSpace) fail(where + ".params", "only valid on the theta domain");
      const auto& params = node["params"];
      if (!params.is_array()) fail(where + ".params", "expected an array of angles");
      ParameterPoint point;
      for (std::size_t j = 0; j < params.size(); ++j) {
        point.angles.push_back(
            number_at(params[j], where + ".params[" + std::to_string(j) + "]"));
      }
      label = parameter_label(point);
    } else if (node.contains("matrix")) {
      if (domain != Domain::UnitaryGroup) fail(where + ".matrix", "only valid on the unitary domain");
      const Matrix u = matrix_at(node["matrix"], where + ".matrix");
      const Matrix gram = u.adjoint() * u;
      if (max_abs_diff(gram, Matrix::Identity(u.rows(), u.cols())) > 1e-10) {
        fail(where + ".matrix", "matrix is not unitary");
      }
      label = unitary_label(u);
    } else if (node.contains("label")) {
      if (!node["label"].is_string()) fail(where + ".label", "expected a string");
      label = node["label"].get<std::string>();
    } else {
      fail(where, "needs one of \"params\", \"label\" or \"matrix\"");
    }
    if (!seen.insert(label).second) fail(where, "duplicate atom");
    atoms.push_back({std::move(label), weight});
  }
  try {
    return make_measure(std::move(atoms), domain);
  } catch (const ValidationError& e) {
    fail("atoms", e.what());
  }
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  try {
    return parse_measure(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json measure_to_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) {
    json node{{"weight", a.weight}};
    if (m.domain() == Domain::ParameterSpace && a.label.starts_with("t:")) {
      node["params"] = decode_parameter_label(a.label).angles;
    } else {
      node["label"] = a.label;
    }
    atoms.push_back(std::move(node));
  }
  return json{{"domain", m.domain() == Domain::UnitaryGroup ? "unitary" : "theta"},
              {"atoms", std::move(atoms)}};
}

CircuitProblem parse_circuit(const json& doc) {
  if (!doc.is_object()) fail("circuit", "expected a JSON object");
  if (!doc.contains("qubits") || !doc["qubits"].is_number_integer()) {
    fail("qubits", "expected an integer");
  }
  const int qubits = doc["qubits"].get<int>();
  if (qubits < 1 || qubits > 10) fail("qubits", "must lie in [1, 10]");
  if (!doc.contains("layers") || !doc["layers"].is_array() || doc["layers"].empty()) {
    fail("layers", "expected a non-empty array of layers");
  }
  std::vector<std::vector<HermitianOperator>> layers;
  for (std::size_t l = 0; l < doc["layers"].size(); ++l) {
    const auto& layer = doc["layers"][l];
    const auto where = "layers[" + std::to_string(l) + "]";
    if (!layer.is_array()) fail(where, "expected an array of gates");
    std::vector<HermitianOperator> gates;
    for (std::size_t m = 0; m < layer.size(); ++m) {
      gates.push_back(operator_at(layer[m], where + "[" + std::to_string(m) + "]", qubits));
    }
    layers.push_back(std::move(gates));
  }
  if (!doc.contains("observable")) fail("observable", "missing");
  auto observable = operator_at(doc["observable"], "observable", qubits);

  const json init_node = doc.contains("init") ? doc["init"] : json("plus_all");
  auto init = [&]() -> QuantumState {
    if (init_node.is_string()) {
      if (init_node.get<std::string>() != "plus_all") {
        fail("init", "expected \"plus_all\" or an amplitude list");
      }
      return QuantumState::plus_all(qubits);
    }
    if (!init_node.is_array()) fail("init", "expected \"plus_all\" or an amplitude list");
    if (init_node.size() != (std::size_t{1} << qubits)) {
      fail("init", "amplitude list must have length 2^qubits");
    }
    Vector amps(static_cast<Eigen::Index>(init_node.size()));
    for (std::size_t i = 0; i < init_node.size(); ++i) {
      amps(static_cast<Eigen::Index>(i)) =
          complex_at(init_node[i], "init[" + std::to_string(i) + "]");
    }
    try {
      return QuantumState(amps);
    } catch (const ValidationError& e) {
      fail("init", e.what());
    }
  }();
  try {
    return CircuitProblem{CircuitSpec(qubits, std::move(layers)), std::move(init),
                          std::move(observable)};
  } catch (const ValidationError& e) {
    fail("circuit", e.what());
  }
}

CircuitProblem load_circuit(const std::filesystem::path& path) {
  const auto doc = read_json(path);
  try {
    return parse_circuit(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

json table_to_json(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
      const auto& cell = row[i];
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (cell == "true" || cell == "false") {
        obj[header[i]] = cell == "true";
      } else if (!cell.empty() && ec == std::errc() && ptr == last && std::isfinite(v)) {
        obj[header[i]] = v;
      } else {
        obj[header[i]] = cell;  // includes "inf"
      }
    }
    out.push_back(std::move(obj));
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> report_rows(std::span<const BoundReport> reports) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) {
    rows.push_back({std::string(to_string(r.kind)), std::string(to_string(r.space)),
                    r.generator, std::to_string(r.k), std::to_string(r.n), cell_for(r.r),
                    cell_for(r.lhs), cell_for(r.rhs), cell_for(r.slack),
                    r.tight ? "true" : "false"});
  }
  return rows;
}

std::vector<std::string> report_header() {
  return {std::begin(kReportColumns), std::end(kReportColumns)};
}

}  // namespace

void write_reports_csv(std::ostream& out, std::span<const BoundReport> reports) {
  write_csv(out, report_header(), report_rows(reports));
}

json reports_to_json(std::span<const BoundReport> reports) {
  return table_to_json(report_header(), report_rows(reports));
}

}  // namespace structdiv
