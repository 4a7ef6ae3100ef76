#include <doctest.h>

#include <cmath>

#include "qhe/errors.hpp"
#include "qhe/verify.hpp"

using namespace qhe;

namespace {

const Quantity* find(const Verdict& v, const std::string& name) {
  for (const auto& q : v.parameters)
    if (q.name == name) return &q;
  return nullptr;
}

}  // namespace

TEST_CASE("verdict status names") {
  CHECK(to_string(VerdictStatus::Pass) == "pass");
  CHECK(to_string(VerdictStatus::Precondition) == "precondition");
  CHECK(to_string(VerdictStatus::Fail) == "fail");
}

TEST_CASE("log-log fit recovers an exact power law") {
  const std::vector<double> x = {50.0, 100.0, 200.0, 400.0};
  std::vector<double> y;
  for (double b : x) y.push_back(3.0 * std::pow(b, 0.5));
  const LogLogFit f = fit_log_log(x, y);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK_THROWS_AS(fit_log_log({1.0, 2.0}, {1.0, -1.0}), DomainError);
}

TEST_CASE("forbidden decay: exact discrete decay passes, sign changes fail") {
  const Grid g{0, 0.01, 201};
  const double w = 400.0;
  const double rate = (2.0 / g.spacing) * std::asinh(g.spacing * std::sqrt(w) / 2.0);
  std::vector<double> ww(g.n_points, w);
  GridFunction phi = sample(g, [&](double x) { return std::exp(-1.05 * rate * x); });
  const Verdict ok = forbidden_decay_check(phi, ww, 0.0, 2.0);
  CHECK(ok.status == VerdictStatus::Pass);
  CHECK(ok.margin > 0.0);

  GridFunction slow = sample(g, [&](double x) { return std::exp(-0.9 * rate * x); });
  CHECK(forbidden_decay_check(slow, ww, 0.0, 2.0).status == VerdictStatus::Fail);

  GridFunction flip = phi;
  flip.values[100] = -flip.values[100];
  CHECK(forbidden_decay_check(flip, ww, 0.0, 2.0).status == VerdictStatus::Fail);

  std::vector<double> allowed(g.n_points, -1.0);
  CHECK(forbidden_decay_check(phi, allowed, 0.0, 2.0).status == VerdictStatus::Precondition);
}

TEST_CASE("trace bound reports a failed hypothesis as a precondition") {
  const Grid g{-100, 0.01, 201};
  GridFunction phi = sample(g, [](double x) { return std::exp(-x * x); });
  std::vector<double> w(g.n_points, 1.0);
  CHECK(trace_bound_check(phi, w, 200.0, 1.0).status == VerdictStatus::Precondition);
}

TEST_CASE("ipm integrals decay with the power-law slope") {
  CHECK(ipm_integral(0, 2.0, 1.0, -200.0, 100.0) > 0.0);
  const std::vector<double> fields = {100.0, 200.0, 400.0};
  const IpmResult p2 = ipm_scaling_check(0, 2.0, 1.0, fields, 0, 1.5, 1.7);
  CHECK(p2.pass);
  CHECK(p2.fit.slope == doctest::Approx(-1.5).epsilon(0.1 / 1.5));
  const IpmResult p3 = ipm_scaling_check(0, 3.0, 1.0, fields, 0, 1.5, 1.7);
  CHECK(p3.fit.slope == doctest::Approx(-2.0).epsilon(0.1 / 2.0));
  CHECK(p3.fit.slope < p2.fit.slope);
}

TEST_CASE("lm-TE bound on a power wall") {
  StripModel model;
  model.field = 200.0;
  model.potential = ConfiningPotential::power(1.7 * 200.0 * 200.0, 1.0, 2.0);
  const auto w = EnergyWindow::make(0, 1.5, 1.7, 200.0);
  const Verdict v = lmTE_check(model, 0, 0, w, 5);
  const Quantity* bound = find(v, "bound");
  REQUIRE(bound != nullptr);
  CHECK(bound->value == doctest::Approx(9.219544457292887).epsilon(1e-13));
  CHECK(v.status == VerdictStatus::Pass);

  StripModel flat;
  flat.field = 200.0;
  CHECK(lmTE_check(flat, 0, 0, w).status == VerdictStatus::Pass);
}

TEST_CASE("C_n extraction from slope samples") {
  const double shape = 0.25 * 1.3 * 1.3;  // (a-1)^2 (3-c)^2 at a=1.5, c=1.7
  std::vector<SlopeSample> s;
  for (double b : {50.0, 100.0, 200.0, 400.0})
    s.push_back({b, {-2.0 * shape * std::sqrt(b), -3.0 * shape * std::sqrt(b)}});
  const EmpiricalConstant c = cn_extract(s, 1.5, 1.7);
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.variation < 1e-12);
  s[1].d_omega.push_back(0.1);
  CHECK_THROWS_AS(cn_extract(s, 1.5, 1.7), DomainError);
}
