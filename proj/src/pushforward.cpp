#include "fdiv/pushforward.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr double kPivotSlack = 1e-10;

std::vector<double> parse_doubles(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    double v = 0.0;
    const auto* first = text.data() + start;
    const auto* last = text.data() + comma;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw ValidationError("malformed unitary label entry '" +
                            std::string(text.substr(start, comma - start)) + "'");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

}  // namespace

Matrix canonicalize_phase(const Matrix& u) {
  if (u.size() == 0) return u;
  const double largest = u.cwiseAbs().maxCoeff();
  if (largest == 0.0) return u;
  Eigen::Index pi = 0;
  Eigen::Index pj = 0;
  bool found = false;
  for (Eigen::Index i = 0; i < u.rows() && !found; ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (std::abs(u(i, j)) >= largest - kPivotSlack) {
        pi = i;
        pj = j;
        found = true;
        break;
      }
    }
  }
  const Complex pivot = u(pi, pj);
  const Complex rotation = std::conj(pivot) / std::abs(pivot);
  Matrix out = u * rotation;
  out(pi, pj) = Complex(std::abs(pivot), 0.0);
  return out;
}

std::string unitary_label(const Matrix& u) {
  std::string out = "U" + std::to_string(u.rows()) + ":";
  bool first = true;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (!first) out += ',';
      first = false;
      out += format_double(u(i, j).real());
      out += ',';
      out += format_double(u(i, j).imag());
    }
  }
  return out;
}

Matrix decode_unitary_label(std::string_view label) {
  const auto colon = label.find(':');
  if (!label.starts_with("U") || colon == std::string_view::npos) {
    throw ValidationError("label '" + std::string(label) +
                          "' does not encode a unitary");
  }
  int dim = 0;
  const auto dim_text = label.substr(1, colon - 1);
  auto [ptr, ec] =
      std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
  if (ec != std::errc() || ptr != dim_text.data() + dim_text.size() || dim < 1) {
    throw ValidationError("label '" + std::string(label) +
                          "' has a malformed dimension");
  }
  const auto values = parse_doubles(label.substr(colon + 1));
  if (values.size() != static_cast<std::size_t>(2 * dim * dim)) {
    throw ValidationError("label '" + std::string(label) +
                          "' has the wrong number of entries");
  }
  Matrix u(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      u(i, j) = Complex(values[k], values[k + 1]);
      k += 2;
    }
  }
  return u;
}

DiscreteMeasure unitary_measure(
    const std::vector<std::pair<Matrix, double>>& atoms) {
  std::vector<Atom> raw;
  raw.reserve(atoms.size());
  for (const auto& [u, w] : atoms) raw.push_back({unitary_label(u), w});
  return make_measure(std::move(raw), Domain::UnitaryGroup);
}

DiscreteMeasure pushforward(const DiscreteMeasure& p, const CircuitSpec& c,
                            const PushforwardOptions& options) {
  return pushforward_joint(std::span(&p, 1), c, options).front();
}

std::vector<DiscreteMeasure> pushforward_joint(
    std::span<const DiscreteMeasure> measures, const CircuitSpec& c,
    const PushforwardOptions& options) {
  if (!(options.tol >= 0.0)) {
    throw ArgumentError("push-forward tolerance must be >= 0");
  }
  std::set<std::string> support;
  for (const auto& m : measures) {
    if (m.domain() != Domain::ParameterSpace) {
      throw ValidationError("push-forward needs a parameter-space measure");
    }
    for (const auto& a : m.atoms()) support.insert(a.label);
  }

  std::vector<Matrix> representatives;
  std::vector<std::string> cluster_labels;
  std::map<std::string, std::size_t, std::less<>> cluster_of;
  for (const auto& label : support) {
    Matrix u = build_unitary(c, decode_parameter_label(label));
    if (options.identify_global_phase) u = canonicalize_phase(u);
    std::size_t id = representatives.size();
    for (std::size_t r = 0; r < representatives.size(); ++r) {
      if (max_abs_diff(representatives[r], u) <= options.tol) {
        id = r;
        break;
      }
    }
    if (id == representatives.size()) {
      cluster_labels.push_back(unitary_label(u));
      representatives.push_back(std::move(u));
    }
    cluster_of.emplace(label, id);
  }

  std::vector<DiscreteMeasure> out;
  out.reserve(measures.size());
  for (const auto& m : measures) {
    std::vector<double> mass(representatives.size(), 0.0);
    for (const auto& a : m.atoms()) mass[cluster_of.find(a.label)->second] += a.weight;
    std::vector<Atom> atoms;
    for (std::size_t r = 0; r < mass.size(); ++r) {
      if (mass[r] > 0.0) atoms.push_back({cluster_labels[r], mass[r]});
    }
    out.push_back(make_measure(std::move(atoms), Domain::UnitaryGroup));
  }
  return out;
}

}  // namespace structdiv
