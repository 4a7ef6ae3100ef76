#pragma once

#include <optional>
#include <string_view>

namespace qhe {

enum class PotentialKind { Sharp, Power, Parabolic, Free };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

// Even confining potential V0(x) of the strip/cylinder models.
//   Sharp:     strength * 1{|x| > width/2}
//   Power:     strength * (|x| - width/2)_+^exponent
//   Parabolic: stiffness^2 * x^2
//   Free:      0
class ConfiningPotential {
 public:
  static ConfiningPotential sharp(double strength, double width);
  static ConfiningPotential power(double strength, double width, double exponent);
  static ConfiningPotential parabolic(double stiffness);
  static ConfiningPotential free();

  PotentialKind kind() const { return kind_; }
  double strength() const { return strength_; }
  double width() const { return width_; }
  double half_width() const { return 0.5 * width_; }
  double exponent() const { return exponent_; }
  double stiffness() const { return stiffness_; }
  bool has_walls() const {
    return kind_ == PotentialKind::Sharp || kind_ == PotentialKind::Power;
  }

  // Value of V0 as |x| -> infinity; +inf for unbounded potentials.
  double limit_at_infinity() const;

  double operator()(double x) const;

 private:
  ConfiningPotential() = default;

  PotentialKind kind_ = PotentialKind::Free;
  double strength_ = 0.0;
  double width_ = 0.0;
  double exponent_ = 0.0;
  double stiffness_ = 0.0;
};

// A point sitting exactly on a sharp wall gets the mean of the two sides.
double evaluate(const ConfiningPotential& v, double x);

// dV0/dx; empty for the sharp wall, where it is a pair of delta functions.
std::optional<double> smooth_derivative(const ConfiningPotential& v, double x);

}  // namespace qhe
