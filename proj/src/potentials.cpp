#include "qhe/potentials.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Sharp: return "sharp";
    case PotentialKind::Power: return "power";
    case PotentialKind::Parabolic: return "parabolic";
    case PotentialKind::Free: return "free";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  if (name == "sharp") return PotentialKind::Sharp;
  if (name == "power") return PotentialKind::Power;
  if (name == "parabolic") return PotentialKind::Parabolic;
  if (name == "free") return PotentialKind::Free;
  throw DomainError("unknown potential kind '" + std::string(name) + "'");
}

ConfiningPotential ConfiningPotential::sharp(double strength, double width) {
  if (!(strength >= 0.0) || !std::isfinite(strength))
    throw DomainError("sharp wall: strength must be finite and >= 0");
  if (!(width > 0.0) || !std::isfinite(width))
    throw DomainError("sharp wall: width must be positive");
  ConfiningPotential v;
  v.kind_ = PotentialKind::Sharp;
  v.strength_ = strength;
  v.width_ = width;
  return v;
}

ConfiningPotential ConfiningPotential::power(double strength, double width,
                                             double exponent) {
  if (!(strength > 0.0) || !std::isfinite(strength))
    throw DomainError("power wall: strength must be positive");
  if (!(width > 0.0) || !std::isfinite(width))
    throw DomainError("power wall: width must be positive");
  if (!(exponent > 1.0) || !std::isfinite(exponent))
    throw DomainError("power wall: exponent must exceed 1");
  ConfiningPotential v;
  v.kind_ = PotentialKind::Power;
  v.strength_ = strength;
  v.width_ = width;
  v.exponent_ = exponent;
  return v;
}

ConfiningPotential ConfiningPotential::parabolic(double stiffness) {
  if (!(stiffness > 0.0) || !std::isfinite(stiffness))
    throw DomainError("parabolic potential: stiffness must be positive");
  ConfiningPotential v;
  v.kind_ = PotentialKind::Parabolic;
  v.stiffness_ = stiffness;
  return v;
}

ConfiningPotential ConfiningPotential::free() { return ConfiningPotential(); }

double ConfiningPotential::limit_at_infinity() const {
  switch (kind_) {
    case PotentialKind::Sharp: return strength_;
    case PotentialKind::Free: return 0.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

double ConfiningPotential::operator()(double x) const { return evaluate(*this, x); }

double evaluate(const ConfiningPotential& v, double x) {
  const double ax = std::fabs(x);
  switch (v.kind()) {
    case PotentialKind::Sharp:
      if (ax > v.half_width()) return v.strength();
      if (ax == v.half_width()) return 0.5 * v.strength();
      return 0.0;
    case PotentialKind::Power: {
      const double d = ax - v.half_width();
      return d > 0.0 ? v.strength() * std::pow(d, v.exponent()) : 0.0;
    }
    case PotentialKind::Parabolic:
      return v.stiffness() * v.stiffness() * x * x;
    case PotentialKind::Free:
      return 0.0;
  }
  return 0.0;
}

std::optional<double> smooth_derivative(const ConfiningPotential& v, double x) {
  switch (v.kind()) {
    case PotentialKind::Sharp:
      return std::nullopt;
    case PotentialKind::Power: {
      const double d = std::fabs(x) - v.half_width();
      if (d <= 0.0) return 0.0;
      const double mag = v.exponent() * v.strength() * std::pow(d, v.exponent() - 1.0);
      return x > 0.0 ? mag : -mag;
    }
    case PotentialKind::Parabolic:
      return 2.0 * v.stiffness() * v.stiffness() * x;
    case PotentialKind::Free:
      return 0.0;
  }
  return 0.0;
}

}  // namespace qhe
