#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace structdiv {

/// A real number or +infinity. Divergences between measures with
/// mismatched supports can be unbounded; this type carries that case
/// through sums and comparisons without special-casing at call sites.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_finite() const { return !is_infinite(); }
  constexpr double value() const { return value_; }

  friend constexpr ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    return ExtendedReal(a.value_ + b.value_);
  }
  ExtendedReal& operator+=(ExtendedReal other) {
    value_ += other.value_;
    return *this;
  }
  friend constexpr ExtendedReal operator*(double w, ExtendedReal a) {
    return ExtendedReal(w * a.value_);
  }

  friend constexpr auto operator<=>(ExtendedReal a, ExtendedReal b) {
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    return a.value_ == b.value_;
  }

 private:
  double value_ = 0.0;
};

}  // namespace structdiv
