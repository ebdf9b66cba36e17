#pragma once

#include "availkit/error.hpp"
#include "availkit/rational.hpp"

#include <string>
#include <variant>

namespace availkit {

/// Scalar conversions used by the formula templates, which are written
/// once and instantiated for both `Rational` and `double`.
template <class T>
T scalar_from(const Rational& r);

template <>
inline Rational scalar_from<Rational>(const Rational& r) { return r; }

template <>
inline double scalar_from<double>(const Rational& r) { return to_double(r); }

/// A probability carried either exactly or as a binary float.
///
/// Values are range-checked on construction and never clamped; an exact
/// value outside [0, 1] is an internal error. Float values may stray from
/// the interval by accumulated rounding (at most `kFloatSlack`).
class Probability {
 public:
  static constexpr double kFloatSlack = 1e-12;

  explicit Probability(Rational exact) : value_(std::move(exact)) {
    const auto& r = std::get<Rational>(value_);
    if (r < 0 || r > 1)
      throw std::logic_error("probability out of range: " + rational_string(r));
  }

  explicit Probability(double approx) : value_(approx) {
    if (!(approx >= -kFloatSlack && approx <= 1.0 + kFloatSlack))
      throw std::logic_error("probability out of range: " + std::to_string(approx));
  }

  bool exact() const { return std::holds_alternative<Rational>(value_); }

  double value() const {
    if (exact()) return to_double(std::get<Rational>(value_));
    return std::get<double>(value_);
  }

  /// Throws if the value is a float.
  const Rational& rational() const {
    if (!exact()) throw InvalidArgument("probability has no exact form");
    return std::get<Rational>(value_);
  }

  /// The exact value if there is one, else the double converted exactly.
  Rational as_rational() const { return exact() ? rational() : to_rational(value()); }

  Probability complement() const {
    if (exact()) return Probability(Rational(1 - rational()));
    return Probability(1.0 - value());
  }

  std::string decimal(int sig = 12) const { return format_significant(as_rational(), sig); }

  friend bool operator==(const Probability& a, const Probability& b) {
    if (a.exact() != b.exact()) return false;
    return a.exact() ? a.rational() == b.rational() : a.value() == b.value();
  }

 private:
  std::variant<Rational, double> value_;
};

}  // namespace availkit
