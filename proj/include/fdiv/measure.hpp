#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace structdiv {

/// Where the atoms of a measure live. Operations that need to decode labels
/// (circuit evaluation, push-forward) check this tag.
enum class Domain { ParameterSpace, UnitaryGroup, Abstract };

std::string_view to_string(Domain domain);

struct Atom {
  std::string label;
  double weight = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite atomic probability measure. Atoms are kept sorted by label, with
/// unique labels, strictly positive weights and total mass 1 within 1e-12.
/// Construct through make_measure.
class DiscreteMeasure {
 public:
  const std::vector<Atom>& atoms() const { return atoms_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return atoms_.size(); }

  /// Weight of the atom with this label, or 0 when it is not in the support.
  double weight_of(std::string_view label) const;

  friend bool operator==(const DiscreteMeasure&,
                         const DiscreteMeasure&) = default;

 private:
  friend DiscreteMeasure make_measure(std::vector<Atom> atoms, Domain domain);
  DiscreteMeasure(std::vector<Atom> atoms, Domain domain)
      : atoms_(std::move(atoms)), domain_(domain) {}

  std::vector<Atom> atoms_;
  Domain domain_;
};

/// Validates raw atoms: rejects negative weights, duplicate labels and a
/// total mass deviating from 1 by more than 1e-9. Weights below 1e-15 are
/// pruned and the remainder renormalised.
DiscreteMeasure make_measure(std::vector<Atom> atoms,
                             Domain domain = Domain::Abstract);

/// A point of the parameter space: one angle (radians) per gate.
struct ParameterPoint {
  std::vector<double> angles;
  friend bool operator==(const ParameterPoint&,
                         const ParameterPoint&) = default;
};

/// Lossless text encoding of a parameter point, e.g. "t:0,1.5707963267948966".
std::string parameter_label(const ParameterPoint& point);
ParameterPoint decode_parameter_label(std::string_view label);

/// Convenience constructor for measures over the parameter space.
DiscreteMeasure parameter_measure(
    const std::vector<std::pair<ParameterPoint, double>>& atoms);

/// The swapped two-element pair
///   P_B = {lo: (1-r)/2, hi: (1+r)/2},  Q_B = {lo: (1+r)/2, hi: (1-r)/2}.
std::pair<DiscreteMeasure, DiscreteMeasure> binary_pair(
    double r, std::string label_lo, std::string label_hi,
    Domain domain = Domain::Abstract);

/// Same pair with atoms at two parameter points.
std::pair<DiscreteMeasure, DiscreteMeasure> parameter_binary_pair(
    double r, const ParameterPoint& lo, const ParameterPoint& hi);

struct AlignedWeights {
  std::vector<std::string> labels;
  std::vector<double> p;
  std::vector<double> q;
};

/// Union support in label order with zero fill. Throws ValidationError when
/// the domain tags differ.
AlignedWeights align_supports(const DiscreteMeasure& p,
                              const DiscreteMeasure& q);

/// Row-stochastic kernel K(y|z): rows are source labels, columns targets.
class StochasticMap {
 public:
  StochasticMap(std::vector<std::string> sources,
                std::vector<std::string> targets, Eigen::MatrixXd kernel,
                Domain target_domain = Domain::Abstract);

  const std::vector<std::string>& sources() const { return sources_; }
  const std::vector<std::string>& targets() const { return targets_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  Domain target_domain() const { return target_domain_; }

 private:
  std::vector<std::string> sources_;
  std::vector<std::string> targets_;
  Eigen::MatrixXd kernel_;
  Domain target_domain_;
};

/// P_Y(y) = sum_z K(y|z) P(z).
DiscreteMeasure apply_stochastic_map(const StochasticMap& k,
                                     const DiscreteMeasure& p);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace structdiv
