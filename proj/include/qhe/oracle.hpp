#pragma once

#include <cstddef>
#include <vector>

namespace qhe {

// Parabolic channel V0 = g^2 x^2, solvable in closed form.
class ParabolicModel {
 public:
  ParabolicModel(double field, double stiffness);

  double field() const { return field_; }
  double stiffness() const { return stiffness_; }
  double modified_field() const { return modified_field_; }  // sqrt(B^2 + g^2)

 private:
  double field_;
  double stiffness_;
  double modified_field_;
};

// Physicists' Hermite polynomial H_m(u).
double hermite(int m, double u);

// Normalized oscillator function h_m(t) = H_m(t) e^{-t^2/2} / sqrt(2^m m! sqrt(pi)),
// computed by the stable three-term recurrence.
double hermite_function(int m, double t);

// Landau level (2j+1)B.
double landau_level(int j, double field);

// Landau-gauge oscillator eigenfunction centred at k/B.
double landau_psi(int m, double x, double k, double field);

double parabolic_omega(const ParabolicModel& model, int j, double k);
double parabolic_phi(const ParabolicModel& model, int j, double x, double k);

// k_j^{(n)}(endpoint): the minus interval of band j over the window is
// [-k_j(c), -k_j(a)].
double parabolic_kinv(const ParabolicModel& model, int j, int n, double endpoint);

struct HermiteConstants {
  std::vector<double> sup_weighted;          // sup_u |H_m(u)| e^{-u^2/2}
  std::vector<double> aggregate;             // (sum_{m<=n} sup_weighted_m^2 / (2^m m!))^{1/2}
  std::vector<double> sup_quarter_weighted;  // sup_u |H_m(u)| e^{-u^2/4}
};

HermiteConstants hermite_constants(int n_max);

}  // namespace qhe
