#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fdiv/bounds.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/io.hpp"
#include "fdiv/pushforward.hpp"
#include "fdiv/sweeps.hpp"

namespace py = pybind11;
using namespace structdiv;

namespace {

Domain parse_domain(const std::string& name) {
  if (name == "theta") return Domain::ParameterSpace;
  if (name == "unitary") return Domain::UnitaryGroup;
  if (name == "abstract") return Domain::Abstract;
  throw ArgumentError("unknown domain '" + name + "'");
}

std::vector<Atom> to_atoms(const std::vector<std::pair<std::string, double>>& items) {
  std::vector<Atom> atoms;
  atoms.reserve(items.size());
  for (const auto& [label, weight] : items) atoms.push_back({label, weight});
  return atoms;
}

std::vector<GeneratorSpec> to_generators(const py::object& obj) {
  if (obj.is_none()) return builtin_generators();
  if (py::isinstance<py::str>(obj)) return generators_from_list(obj.cast<std::string>());
  return obj.cast<std::vector<GeneratorSpec>>();
}

}  // namespace

PYBIND11_MODULE(_fdiv, m) {
  m.doc() = "Structural f-divergences and the moment and gradient bounds they imply";

  static py::exception<Error> base(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<GeneratorSpec>(m, "Generator")
      .def_property_readonly("name", &GeneratorSpec::name)
      .def_property_readonly("is_smooth", &GeneratorSpec::is_smooth)
      .def_property_readonly("f_at_zero", &GeneratorSpec::f_at_zero)
      .def_property_readonly("slope_at_infinity", &GeneratorSpec::slope_at_infinity)
      .def("__call__", &GeneratorSpec::f, py::arg("x"))
      .def("__repr__", [](const GeneratorSpec& g) { return "<Generator " + g.name() + ">"; });

  m.def("builtin_generators", &builtin_generators);
  m.def("generator", [](const std::string& name) { return generator_by_name(name); },
        py::arg("name"));

  py::class_<DiscreteMeasure>(m, "Measure")
      .def_property_readonly("atoms",
                             [](const DiscreteMeasure& d) {
                               std::vector<std::pair<std::string, double>> out;
                               for (const auto& a : d.atoms()) out.emplace_back(a.label, a.weight);
                               return out;
                             })
      .def_property_readonly("domain",
                             [](const DiscreteMeasure& d) { return std::string(to_string(d.domain())); })
      .def("weight", [](const DiscreteMeasure& d, const std::string& label) { return d.weight_of(label); },
           py::arg("label"))
      .def("__len__", &DiscreteMeasure::size)
      .def("__eq__", [](const DiscreteMeasure& a, const DiscreteMeasure& b) { return a == b; })
      .def("to_json", [](const DiscreteMeasure& d) { return measure_to_json(d).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return parse_measure(nlohmann::json::parse(text)); },
                  py::arg("text"));

  m.def("measure",
        [](const std::vector<std::pair<std::string, double>>& atoms, const std::string& domain) {
          return make_measure(to_atoms(atoms), parse_domain(domain));
        },
        py::arg("atoms"), py::arg("domain") = "abstract",
        "Measure from (label, weight) pairs.");
  m.def("parameter_measure",
        [](const std::vector<std::pair<std::vector<double>, double>>& atoms) {
          std::vector<std::pair<ParameterPoint, double>> points;
          for (const auto& [angles, w] : atoms) points.push_back({ParameterPoint{angles}, w});
          return parameter_measure(points);
        },
        py::arg("atoms"), "Measure on the parameter space from (angles, weight) pairs.");
  m.def("binary_pair",
        [](double r, const std::string& lo, const std::string& hi) { return binary_pair(r, lo, hi); },
        py::arg("r"), py::arg("lo") = "a", py::arg("hi") = "b");
  m.def("load_measure", &load_measure, py::arg("path"));

  py::class_<CircuitProblem>(m, "Circuit")
      .def_property_readonly("num_qubits", [](const CircuitProblem& c) { return c.circuit.num_qubits(); })
      .def_property_readonly("arity", [](const CircuitProblem& c) { return c.circuit.arity(); })
      .def_static("from_json",
                  [](const std::string& text) { return parse_circuit(nlohmann::json::parse(text)); },
                  py::arg("text"));
  m.def("load_circuit", &load_circuit, py::arg("path"));
  m.def("canonical_circuit", &canonical_cn1, py::arg("num_qubits") = 1,
        "One-layer ansatz with sigma_z / 2 rotations, observable X^n and |+>^n input.");

  m.def("f_divergence",
        [](const GeneratorSpec& g, const DiscreteMeasure& p, const DiscreteMeasure& q) {
          return f_divergence(g, p, q).value();
        },
        py::arg("g"), py::arg("p"), py::arg("q"));
  m.def("symmetric_f_divergence",
        [](const GeneratorSpec& g, const DiscreteMeasure& p, const DiscreteMeasure& q) {
          return symmetric_f_divergence(g, p, q).value();
        },
        py::arg("g"), py::arg("p"), py::arg("q"));
  m.def("binary_divergence",
        [](const GeneratorSpec& g, double s) { return binary_divergence(g, s).value(); },
        py::arg("g"), py::arg("s"));
  m.def("invert_binary_divergence",
        [](const GeneratorSpec& g, double y) { return invert_binary_divergence(g, ExtendedReal(y)); },
        py::arg("g"), py::arg("y"));
  m.def("structural_divergence", &structural_divergence, py::arg("g"), py::arg("p"), py::arg("q"));
  m.def("min_structural_divergence",
        [](const py::object& gs, const DiscreteMeasure& p, const DiscreteMeasure& q) {
          return min_structural_divergence(to_generators(gs), p, q);
        },
        py::arg("generators"), py::arg("p"), py::arg("q"));
  m.def("total_variation", &total_variation, py::arg("p"), py::arg("q"));
  m.def("triangular_discrimination", &triangular_discrimination, py::arg("p"), py::arg("q"));

  m.def("cost",
        [](const CircuitProblem& c, const std::vector<double>& theta) {
          return cost(c.circuit, ParameterPoint{theta}, c.init, c.observable);
        },
        py::arg("circuit"), py::arg("theta"));
  m.def("gradient",
        [](const CircuitProblem& c, const std::vector<double>& theta, int j) {
          return gradient(c.circuit, ParameterPoint{theta}, j, c.init, c.observable);
        },
        py::arg("circuit"), py::arg("theta"), py::arg("j"));
  m.def("pushforward",
        [](const std::vector<DiscreteMeasure>& measures, const CircuitProblem& c, double tol,
           bool identify_global_phase) {
          return pushforward_joint(measures, c.circuit, {tol, identify_global_phase});
        },
        py::arg("measures"), py::arg("circuit"), py::arg("tol") = 1e-9,
        py::arg("identify_global_phase") = true,
        "Push parameter-space measures to the unitary group with shared atom labels.");

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("kind", [](const BoundReport& r) { return std::string(to_string(r.kind)); })
      .def_property_readonly("space", [](const BoundReport& r) { return std::string(to_string(r.space)); })
      .def_readonly("generator", &BoundReport::generator)
      .def_readonly("k", &BoundReport::k)
      .def_readonly("n", &BoundReport::n)
      .def_readonly("r", &BoundReport::r)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("satisfied", &BoundReport::satisfied)
      .def_readonly("tight", &BoundReport::tight);

  m.def("check_gradient_bound", &check_gradient_bound, py::arg("g"), py::arg("p"), py::arg("q"),
        py::arg("circuit"), py::arg("j"));
  m.def("check_moment_bound", &check_moment_bound, py::arg("g"), py::arg("p"), py::arg("q"),
        py::arg("circuit"), py::arg("k"));
  m.def("tightness_sweep",
        [](const std::vector<double>& r_grid, const std::vector<int>& k_list, const py::object& gs,
           const std::vector<int>& n_list, const std::string& space, bool with_gradient) {
          TightnessOptions options;
          options.spaces = space == "both" ? std::vector<Domain>{Domain::ParameterSpace,
                                                                 Domain::UnitaryGroup}
                                           : std::vector<Domain>{parse_domain(space)};
          options.include_gradient = with_gradient;
          return tightness_sweep(r_grid, k_list, to_generators(gs), n_list, options);
        },
        py::arg("r_grid"), py::arg("k_list"), py::arg("generators") = py::none(),
        py::arg("n_list") = std::vector<int>{1}, py::arg("space") = "theta",
        py::arg("with_gradient") = false);

  m.def("bp_divergence_threshold",
        [](double g_th, double half_range, double op_norm, double e_bp, double actual) {
          const auto r = bp_divergence_threshold(g_th, half_range, op_norm, e_bp, actual);
          return py::make_tuple(r.threshold, r.verdict);
        },
        py::arg("g_th"), py::arg("half_range"), py::arg("op_norm"), py::arg("e_bp"),
        py::arg("actual"), "Returns (threshold, verdict).");
  m.def("cc_divergence_threshold",
        [](double delta, double op_norm, int k, double actual) {
          const auto r = cc_divergence_threshold(delta, op_norm, k, actual);
          return py::make_tuple(r.threshold, r.verdict);
        },
        py::arg("delta"), py::arg("op_norm"), py::arg("k"), py::arg("actual"),
        "Returns (threshold, verdict).");
}
