#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qhe/dispersion.hpp"
#include "qhe/fiber.hpp"

namespace qhe {

enum class VerdictStatus { Pass, Precondition, Fail };

std::string_view to_string(VerdictStatus status);

// Number with a unit tag: energy, length, inverse_length, field,
// energy_length (band slopes), current (energy * length), current_sqrtB
// (current / sqrt(B)), count or dimensionless.
struct Quantity {
  std::string name;
  double value = 0.0;
  std::string unit = "dimensionless";
};

// Machine-readable outcome of one check. A failed hypothesis is reported as
// Precondition rather than Fail.
struct Verdict {
  std::string lemma;
  std::vector<Quantity> parameters;
  double margin = 0.0;
  std::string margin_unit = "dimensionless";
  VerdictStatus status = VerdictStatus::Fail;
  std::string detail;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log residuals
};

// Least-squares line through (log x, log y); needs two or more positive points.
LogLogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

struct EmpiricalConstant {
  std::string name;
  double value = 0.0;
  std::vector<double> fit_range;  // B values
  std::vector<double> samples;    // per-B estimates
  double slope = 0.0;             // log-log trend of the samples against B
  double residual = 0.0;
  double variation = 0.0;         // coefficient of variation of the samples
};

// Refined minus part of the inverse image of `band`; throws InversionError
// when the window is missed.
Interval minus_interval(const StripModel& model, std::size_t band, const EnergyWindow& window,
                        std::size_t samples = 401);

// W_j(x;k) = (k - Bx)^2 + V0(x) - omega on every node.
std::vector<double> forbidden_potential(const FiberHamiltonian& h, double omega);

// 0 <= phi(t) <= phi(s) exp(-int_s^t sqrt(W)) for s <= t in [s_min, s_max].
// The exponent uses the three-point rate (2/h) asinh(h sqrt(W)/2), which the
// discrete solution obeys exactly for constant W. Nodes below the roundoff
// level of the eigenvector (16 eps max|phi|) are skipped. The margin is the
// smallest log slack over pairs s < t.
Verdict forbidden_decay_check(const GridFunction& phi, const std::vector<double>& w,
                              double s_min, double s_max);

// phi(0)^2 <= (BL/2) exp(-BL^2/24), with the hypothesis W >= (BL/8)^2 on x >= -L/6.
Verdict trace_bound_check(const GridFunction& phi, const std::vector<double>& w, double field,
                          double width);

struct SedOptions {
  std::size_t k_samples = 41;
  bool left_trace = false;  // use phi(-L/2) instead of phi(L/2)
};

// gamma_hat = max_k V0 phi_j(+-L/2;k)^2 / B over the minus interval, per B,
// for a sharp wall of height 2(2n+c)B.
EmpiricalConstant sed_constant_extract(double width, std::size_t band, int level, double lower,
                                       double upper, const std::vector<double>& fields,
                                       const SedOptions& options = {});

// int_{-inf}^{-L/2} (-x-L/2)^{p+1} psi_m(x;k)^2 dx for the Landau function psi_m.
double ipm_integral(int m, double exponent, double width, double k, double field);

struct IpmResult {
  std::vector<double> fields;
  std::vector<double> k_left;    // left endpoint of the band-0 minus interval
  std::vector<double> integral;
  LogLogFit fit;
  double limit = 0.0;            // -(p+1)/2 + 0.1
  bool pass = false;
};

// Power wall with V0 = (2n+c) B^{(p+2)/2}.
IpmResult ipm_scaling_check(int m, double exponent, double width, const std::vector<double>& fields,
                            int level, double lower, double upper);

// 0 <= int_{R+} V0 phi_j psi_m dx <= (L/2) sqrt((2n+c)B) across the minus interval.
Verdict lmTE_check(const StripModel& model, std::size_t band, int m, const EnergyWindow& window,
                   std::size_t k_samples = 9);

// One B value: band slopes sampled over a minus interval.
struct SlopeSample {
  double field = 1.0;
  std::vector<double> d_omega;
};

// C_hat = min(-omega') / ((a-1)^2 (3-c)^2 sqrt(B)); throws DomainError if any
// slope is non-negative.
EmpiricalConstant cn_extract(const std::vector<SlopeSample>& samples, double lower, double upper);

}  // namespace qhe
