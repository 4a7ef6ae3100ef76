#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qhe/dispersion.hpp"
#include "qhe/oracle.hpp"

namespace qhe {

enum class ProfileShape { Flat, CosineBump };

// Coefficients of one band on its minus interval and the mirrored plus
// interval. Node i of the plus side sits at -k[i].
struct BandPacket {
  std::size_t band = 0;
  Interval interval;                    // minus interval
  std::vector<double> k;                // ascending nodes on the minus interval
  std::vector<double> beta_minus;       // beta_j(k)
  std::vector<double> beta_plus;        // beta_j(-k)
  std::vector<double> d_omega;          // omega_j'(k), Feynman-Hellmann
  std::vector<double> velocity_minus;   // <phi_j(k), (k - Bx) phi_j(k)>
  std::vector<double> velocity_plus;    // <phi_j(-k), (-k - Bx) phi_j(-k)>, solved at -k
};

struct WavePacket {
  EnergyWindow window;
  double field = 1.0;
  double gamma = 0.0;  // +inf puts all weight on k < 0
  double norm_sq = 1.0;
  std::vector<BandPacket> bands;
};

struct PacketOptions {
  ProfileShape shape = ProfileShape::CosineBump;
  std::size_t nodes = 201;
  bool refine_endpoints = true;
  double jitter = 0.0;  // relative random amplitude noise (robustness runs)
  std::uint64_t seed = 0;
};

WavePacket build_packet(const StripModel& model, const std::vector<DispersionCurve>& curves,
                        const EnergyWindow& window, double gamma,
                        const PacketOptions& options = {});

// Sum over bands of the integral of |beta(k)|^2 + |beta(-k)|^2.
double packet_norm(const WavePacket& packet);

// (1/2) sum_j int_minus (|beta_j(k)|^2 - |beta_j(-k)|^2) omega_j'(k) dk.
double edge_current(const WavePacket& packet);

// sum_j int |beta_j(k)|^2 <phi_j, (k - Bx) phi_j> dk over both signs of k.
double direct_current(const WavePacket& packet);

// Closed-form lower bound on -current for the parabolic channel.
double parabolic_bound(const ParabolicModel& model, const EnergyWindow& window, double gamma);

// Asymmetry weight gamma^2 / (2 + gamma^2), equal to 1 at gamma = inf.
double asymmetry_factor(double gamma);

struct PerturbationBudget {
  double outer_lower = 1.2;  // a~
  double outer_upper = 2.8;  // c~
  double v1_ratio = 0.0;     // ||V1||_inf / B
  double fitted_cn = 0.0;
  double gamma = 1.0;

  void validate(const EnergyWindow& window) const;
};

struct PerturbationMargin {
  double f_n = 0.0;
  double coefficient = 0.0;  // gamma-factor * Cn (3-c~)^2 (a~-1)^2 - F_n
  double bound = 0.0;        // sqrt(B) * coefficient
};

PerturbationMargin perturbation_margin(const PerturbationBudget& budget,
                                       const EnergyWindow& window, double field);

struct MourreProbe {
  double alpha = 0.0;
  double s_constant = 0.0;  // min of sin(alpha |k|) at the support ends
  double k_min = 0.0;       // smallest |k| on the minus support
  double k_max = 0.0;       // largest |k| on the minus support

  // Rejects alpha outside (0, pi / k_max).
  static MourreProbe for_packet(const WavePacket& packet, double alpha);
};

// sum_j int_minus sin(alpha k)(|beta_j(k)|^2 + |beta_j(-k)|^2) omega_j'(k) dk,
// positive on edge-localized packets.
double mourre_form(const WavePacket& packet, const MourreProbe& probe);

double mourre_perturbation_budget(double alpha, double v1_inf, double yv1_inf);

}  // namespace qhe
