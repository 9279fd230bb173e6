#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdiv/circuit.hpp"
#include "fdiv/measure.hpp"
#include "fdiv/operator.hpp"

namespace structdiv {

/// How unitaries are identified when parameter points collide.
struct PushforwardOptions {
  /// Max-entry distance under which two (canonicalised) unitaries merge.
  double tol = 1e-9;
  /// Identify unitaries that differ only by a global phase.
  bool identify_global_phase = true;
};

/// Rotates the global phase so that the first entry (row-major) whose
/// magnitude is within 1e-10 of the largest becomes real and positive.
Matrix canonicalize_phase(const Matrix& u);

/// Lossless text encoding "U<dim>:re,im,re,im,..." (row-major).
std::string unitary_label(const Matrix& u);
Matrix decode_unitary_label(std::string_view label);

/// Measure on the unitary group with the given atoms.
DiscreteMeasure unitary_measure(
    const std::vector<std::pair<Matrix, double>>& atoms);

/// Push-forward of a parameter-space measure through U(theta).
DiscreteMeasure pushforward(const DiscreteMeasure& p, const CircuitSpec& c,
                            const PushforwardOptions& options = {});

/// Push-forward of several measures with one shared identification of
/// unitaries, so that equal unitaries receive equal labels across measures.
/// Use this whenever the results will be compared with each other.
std::vector<DiscreteMeasure> pushforward_joint(
    std::span<const DiscreteMeasure> measures, const CircuitSpec& c,
    const PushforwardOptions& options = {});

}  // namespace structdiv
