#include "fdiv/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <system_error>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr double kPruneBelow = 1e-15;
constexpr double kMassTolerance = 1e-9;
constexpr std::string_view kParameterPrefix = "t:";

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::ParameterSpace:
      return "theta";
    case Domain::UnitaryGroup:
      return "unitary";
    case Domain::Abstract:
      return "abstract";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double DiscreteMeasure::weight_of(std::string_view label) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), label,
      [](const Atom& a, std::string_view l) { return a.label < l; });
  if (it != atoms_.end() && it->label == label) return it->weight;
  return 0.0;
}

DiscreteMeasure make_measure(std::vector<Atom> atoms, Domain domain) {
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.weight)) {
      throw ValidationError("atom '" + a.label + "': non-finite weight");
    }
    if (a.weight < 0.0) {
      throw ValidationError("atom '" + a.label +
                            "': negative weight " + format_double(a.weight));
    }
    total += a.weight;
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].label == atoms[i - 1].label) {
      throw ValidationError("atom '" + atoms[i].label + "': duplicate label");
    }
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ValidationError("total mass " + format_double(total) +
                          " deviates from 1");
  }
  std::erase_if(atoms, [](const Atom& a) { return a.weight < kPruneBelow; });
  double kept = 0.0;
  for (const auto& a : atoms) kept += a.weight;
  for (auto& a : atoms) a.weight /= kept;
  return DiscreteMeasure(std::move(atoms), domain);
}

std::string parameter_label(const ParameterPoint& point) {
  std::string out(kParameterPrefix);
  for (std::size_t i = 0; i < point.angles.size(); ++i) {
    if (!std::isfinite(point.angles[i])) {
      throw ValidationError("parameter point has a non-finite angle");
    }
    if (i > 0) out += ',';
    out += format_double(point.angles[i]);
  }
  return out;
}

ParameterPoint decode_parameter_label(std::string_view label) {
  if (!label.starts_with(kParameterPrefix)) {
    throw ValidationError("label '" + std::string(label) +
                          "' is not a parameter point");
  }
  label.remove_prefix(kParameterPrefix.size());
  ParameterPoint point;
  if (label.empty()) return point;
  std::size_t start = 0;
  while (true) {
    const auto comma = label.find(',', start);
    const auto end = comma == std::string_view::npos ? label.size() : comma;
    point.angles.push_back(parse_double(label.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return point;
}

DiscreteMeasure parameter_measure(
    const std::vector<std::pair<ParameterPoint, double>>& atoms) {
  std::vector<Atom> raw;
  raw.reserve(atoms.size());
  for (const auto& [point, weight] : atoms) {
    raw.push_back({parameter_label(point), weight});
  }
  return make_measure(std::move(raw), Domain::ParameterSpace);
}

std::pair<DiscreteMeasure, DiscreteMeasure> binary_pair(double r,
                                                        std::string label_lo,
                                                        std::string label_hi,
                                                        Domain domain) {
  if (!(std::abs(r) <= 1.0)) {
    throw DomainError("binary pair requires |r| <= 1, got " +
                      format_double(r));
  }
  if (label_lo == label_hi) {
    throw ArgumentError("binary pair labels must differ");
  }
  const double lo = (1.0 - r) / 2.0;
  const double hi = (1.0 + r) / 2.0;
  return {make_measure({{label_lo, lo}, {label_hi, hi}}, domain),
          make_measure({{label_lo, hi}, {label_hi, lo}}, domain)};
}

std::pair<DiscreteMeasure, DiscreteMeasure> parameter_binary_pair(
    double r, const ParameterPoint& lo, const ParameterPoint& hi) {
  return binary_pair(r, parameter_label(lo), parameter_label(hi),
                     Domain::ParameterSpace);
}

AlignedWeights align_supports(const DiscreteMeasure& p,
                              const DiscreteMeasure& q) {
  if (p.domain() != q.domain()) {
    throw ValidationError("cannot compare measures on different domains (" +
                          std::string(to_string(p.domain())) + " vs " +
                          std::string(to_string(q.domain())) + ")");
  }
  AlignedWeights out;
  const auto& a = p.atoms();
  const auto& b = q.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].label < b[j].label)) {
      out.labels.push_back(a[i].label);
      out.p.push_back(a[i].weight);
      out.q.push_back(0.0);
      ++i;
    } else if (i == a.size() || b[j].label < a[i].label) {
      out.labels.push_back(b[j].label);
      out.p.push_back(0.0);
      out.q.push_back(b[j].weight);
      ++j;
    } else {
      out.labels.push_back(a[i].label);
      out.p.push_back(a[i].weight);
      out.q.push_back(b[j].weight);
      ++i;
      ++j;
    }
  }
  return out;
}

StochasticMap::StochasticMap(std::vector<std::string> sources,
                             std::vector<std::string> targets,
                             Eigen::MatrixXd kernel, Domain target_domain)
    : sources_(std::move(sources)),
      targets_(std::move(targets)),
      kernel_(std::move(kernel)),
      target_domain_(target_domain) {
  if (kernel_.rows() != static_cast<Eigen::Index>(sources_.size()) ||
      kernel_.cols() != static_cast<Eigen::Index>(targets_.size())) {
    throw ValidationError("kernel shape does not match label lists");
  }
  for (Eigen::Index z = 0; z < kernel_.rows(); ++z) {
    double row = 0.0;
    for (Eigen::Index y = 0; y < kernel_.cols(); ++y) {
      if (!(kernel_(z, y) >= 0.0)) {
        throw ValidationError("kernel row '" + sources_[z] +
                              "' has a negative entry");
      }
      row += kernel_(z, y);
    }
    if (std::abs(row - 1.0) > 1e-12) {
      throw ValidationError("kernel row '" + sources_[z] + "' sums to " +
                            format_double(row));
    }
  }
}

DiscreteMeasure apply_stochastic_map(const StochasticMap& k,
                                     const DiscreteMeasure& p) {
  std::map<std::string, Eigen::Index, std::less<>> row_of;
  for (std::size_t z = 0; z < k.sources().size(); ++z) {
    if (!row_of.emplace(k.sources()[z], static_cast<Eigen::Index>(z)).second) {
      throw ValidationError("kernel source '" + k.sources()[z] +
                            "' is duplicated");
    }
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k.kernel().cols());
  for (const auto& atom : p.atoms()) {
    auto it = row_of.find(atom.label);
    if (it == row_of.end()) {
      throw ValidationError("atom '" + atom.label +
                            "' is not a source of the kernel");
    }
    out += atom.weight * k.kernel().row(it->second).transpose();
  }
  std::vector<Atom> atoms;
  for (std::size_t y = 0; y < k.targets().size(); ++y) {
    atoms.push_back({k.targets()[y], out(static_cast<Eigen::Index>(y))});
  }
  return make_measure(std::move(atoms), k.target_domain());
}

}  // namespace structdiv
