#include "qhe/report/commands.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qhe/current.hpp"
#include "qhe/cylinder.hpp"
#include "qhe/dispersion.hpp"
#include "qhe/errors.hpp"
#include "qhe/oracle.hpp"
#include "qhe/report/output.hpp"
#include "qhe/report/suite.hpp"
#include "qhe/verify.hpp"

namespace qhe::report {

namespace {

std::string path(const RunConfig& c, const std::string& name) { return c.out_dir + "/" + name; }

std::string field_tag(double b) {
  std::string s = format_number(b);
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return "B" + s;
}

StripModel make_model(const RunConfig& c, const PotentialSpec& pot, double field) {
  StripModel m;
  m.potential = pot.build(field, c.window.level, c.window.upper);
  m.field = field;
  m.grid = c.solver.grid;
  m.solver = c.solver.solver;
  return m;
}

EnergyWindow make_window(const RunConfig& c, double reference_field) {
  return EnergyWindow::make(c.window.level, c.window.lower, c.window.upper, reference_field);
}

Json window_json(const EnergyWindow& w) {
  Json j;
  j["level"] = w.level;
  j["lower"] = w.lower;
  j["upper"] = w.upper;
  j["energy_lo"] = quantity(w.energy_lo(), "energy");
  j["energy_hi"] = quantity(w.energy_hi(), "energy");
  return j;
}

Json potential_json(const ConfiningPotential& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind()));
  switch (v.kind()) {
    case PotentialKind::Sharp:
      j["strength"] = quantity(v.strength(), "energy");
      j["width"] = quantity(v.width(), "length");
      break;
    case PotentialKind::Power:
      j["strength"] = quantity(v.strength(), "energy");
      j["width"] = quantity(v.width(), "length");
      j["exponent"] = quantity(v.exponent(), "dimensionless");
      break;
    case PotentialKind::Parabolic: j["stiffness"] = quantity(v.stiffness(), "field"); break;
    case PotentialKind::Free: break;
  }
  return j;
}

void require_potentials(const RunConfig& c) {
  if (c.potentials.empty()) throw ConfigError("no [[potential]] entries in the config");
}

PacketOptions packet_options(const RunConfig& c) {
  PacketOptions o;
  o.shape = c.packet.shape;
  o.nodes = c.packet.nodes;
  o.jitter = c.packet.jitter;
  o.seed = c.seed;
  return o;
}

Json gamma_json(double gamma) { return std::isinf(gamma) ? Json("inf") : Json(gamma); }

}  // namespace

int cmd_dispersion(const RunConfig& c) {
  require_potentials(c);
  bool ok = true;
  Json summary = Json::array();
  for (const auto& pot : c.potentials) {
    for (double b : c.fields) {
      const StripModel model = make_model(c, pot, b);
      const EnergyWindow w = make_window(c, model.reference_field());
      const std::vector<double> k = default_k_grid(model, w.level, c.solver.k_samples);
      const auto curves = trace_curves(model, c.solver.bands, k);

      std::vector<std::string> header = {"k"};
      for (const auto& cv : curves) {
        const std::string j = std::to_string(cv.band);
        header.insert(header.end(), {"omega_" + j, "domega_fh_" + j, "domega_fd_" + j});
      }
      CsvWriter csv(header);
      for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<double> row = {k[i]};
        for (const auto& cv : curves)
          row.insert(row.end(), {cv.omega[i], cv.d_omega_fh[i], cv.d_omega_fd[i]});
        csv.add_row(row);
      }
      const std::string stem = "dispersion_" + pot.label() + "_" + field_tag(b);
      write_text(path(c, stem + ".csv"), csv.str());
      std::vector<std::pair<int, std::string>> series;
      for (const auto& cv : curves)
        series.push_back({2 + 3 * static_cast<int>(cv.band), "omega_" + std::to_string(cv.band)});
      write_text(path(c, stem + ".gp"),
                 gnuplot_script(stem + ".csv", pot.label() + " " + field_tag(b), "k", "omega", series));

      Json rec;
      rec["potential"] = potential_json(model.potential);
      rec["B"] = quantity(b, "field");
      rec["window"] = window_json(w);
      rec["csv"] = stem + ".csv";
      const double ref = model.reference_field();
      Json bands = Json::array();
      for (const auto& cv : curves) {
        Json jb;
        jb["band"] = cv.band;
        try {
          const InverseImage img = inverse_image(cv, w);
          jb["inverse_image"]["empty"] = img.empty;
          if (!img.empty) {
            jb["inverse_image"]["minus"] = {quantity(img.minus.lo, "inverse_length"),
                                            quantity(img.minus.hi, "inverse_length")};
            jb["inverse_image"]["plus"] = {quantity(img.plus.lo, "inverse_length"),
                                           quantity(img.plus.hi, "inverse_length")};
          }
        } catch (const InversionError& e) {
          jb["inverse_image"]["error"] = e.what();
          ok = false;
        }
        const double even = evenness_defect(cv);
        const double odd = oddness_defect(cv);
        const bool even_ok = even <= 1e-8 * ref;
        const bool odd_ok = odd <= 1e-6 * std::sqrt(ref);
        jb["evenness_defect"] = quantity(even, "energy");
        jb["oddness_defect"] = quantity(odd, "energy_length");
        const DerivativeConsistency fd = fh_fd_consistency(cv, 1e-3, 1e-3 * std::sqrt(b));
        jb["fh_fd"]["pass"] = fd.pass;
        jb["fh_fd"]["worst_excess"] = quantity(fd.worst_excess, "dimensionless");
        jb["fh_fd"]["worst_k"] = quantity(fd.worst_k, "inverse_length");
        const AsymptoteReport as = asymptote_check(cv, model.potential, b);
        jb["asymptote"]["pass"] = as.pass;
        jb["asymptote"]["limit"] = quantity(as.limit, "energy");
        jb["asymptote"]["tail_value"] = quantity(as.tail_value, "energy");
        jb["asymptote"]["monotone"] = as.monotone;
        jb["pass"] = even_ok && odd_ok && fd.pass && as.pass;
        ok = ok && even_ok && odd_ok && fd.pass && as.pass;
        bands.push_back(jb);
      }
      rec["bands"] = bands;
      try {
        const GapReport g = gap_test(curves, w);
        rec["gap_test"]["pass"] = g.pass;
        rec["gap_test"]["min_gap"] = quantity(g.min_gap, "energy");
        rec["gap_test"]["window_width"] = quantity(g.window_width, "energy");
        rec["gap_test"]["disjoint"] = g.disjoint;
        ok = ok && g.pass;
      } catch (const Error& e) {
        rec["gap_test"]["error"] = e.what();
        ok = false;
      }
      if (model.potential.has_walls()) {
        try {
          const WaveNumberReport r = wave_number_check(curves, w, model.potential, b, 3.0);
          rec["wave_number"]["alpha"] = quantity(3.0, "dimensionless");
          rec["wave_number"]["pass"] = r.pass;
          rec["wave_number"]["vacuous"] = r.vacuous;
          rec["wave_number"]["threshold"] = quantity(r.threshold, "inverse_length");
          rec["wave_number"]["worst_endpoint"] = quantity(r.worst_endpoint, "inverse_length");
        } catch (const Error& e) {
          rec["wave_number"]["error"] = e.what();
        }
      }
      summary.push_back(rec);
    }
  }
  Json out;
  out["command"] = "dispersion";
  out["pass"] = ok;
  out["runs"] = summary;
  write_json(path(c, "dispersion.json"), out);
  return ok ? 0 : 1;
}

namespace {

struct CurrentRecord {
  Json json;
  double current = 0.0;
  std::vector<double> slopes;  // FH slopes on the packet support
  bool pass = true;
};

CurrentRecord current_record(const RunConfig& c, const PotentialSpec& pot, double b) {
  const StripModel model = make_model(c, pot, b);
  const EnergyWindow w = make_window(c, model.reference_field());
  const auto curves = trace_curves(model, static_cast<std::size_t>(w.level),
                                   default_k_grid(model, w.level, c.solver.k_samples));
  const double gamma = c.packet.gamma;
  const WavePacket packet = build_packet(model, curves, w, gamma, packet_options(c));
  CurrentRecord r;
  r.current = edge_current(packet);
  const double direct = direct_current(packet);
  for (const auto& band : packet.bands) r.slopes.insert(r.slopes.end(), band.d_omega.begin(), band.d_omega.end());

  Json& j = r.json;
  j["potential"] = potential_json(model.potential);
  j["B"] = quantity(b, "field");
  j["window"] = window_json(w);
  j["gamma"] = gamma_json(gamma);
  j["norm_sq"] = quantity(packet_norm(packet), "dimensionless");
  j["current"] = quantity(r.current, "current");
  j["current_over_sqrtB"] = quantity(r.current / std::sqrt(b), "current_sqrtB");
  j["direct_current"] = quantity(direct, "current");
  j["route_difference"] = quantity(std::abs(direct - r.current), "current");

  double margin = 0.0;
  bool pass = true;
  if (gamma == 0.0) {
    const double tol = 1e-10 * std::sqrt(b);
    margin = tol - std::abs(r.current);
    pass = margin >= 0.0;
    j["bound"] = quantity(0.0, "current");
  } else if (pot.kind == PotentialKind::Parabolic) {
    const ParabolicModel exact(b, pot.stiffness);
    const double bound = parabolic_bound(exact, w, gamma);
    margin = -r.current - bound;
    pass = margin > 0.0;
    j["bound"] = quantity(bound, "current");
  } else {
    margin = -r.current;
    pass = margin > 0.0;
    j["bound"] = quantity(0.0, "current");
  }
  j["margin"] = quantity(margin, "current");

  double k_max = 0.0;
  for (const auto& band : packet.bands) k_max = std::max(k_max, std::abs(band.interval.lo));
  const double alpha = c.packet.alpha.value_or(0.5 * std::numbers::pi / k_max);
  try {
    const MourreProbe probe = MourreProbe::for_packet(packet, alpha);
    const double form = mourre_form(packet, probe);
    j["mourre"]["alpha"] = quantity(alpha, "length");
    j["mourre"]["s_constant"] = quantity(probe.s_constant, "dimensionless");
    j["mourre"]["form"] = quantity(form, "current");
    j["mourre"]["pass"] = form > 0.0;
    pass = pass && form > 0.0;
  } catch (const DomainError& e) {
    j["mourre"]["error"] = e.what();
  }
  j["pass"] = pass;
  r.pass = pass;
  return r;
}

}  // namespace

int cmd_current(const RunConfig& c) {
  require_potentials(c);
  bool ok = true;
  Json runs = Json::array();
  Json sweeps = Json::array();
  for (const auto& pot : c.potentials) {
    std::vector<double> minus;
    std::vector<SlopeSample> slopes;
    for (double b : c.fields) {
      CurrentRecord r = current_record(c, pot, b);
      ok = ok && r.pass;
      runs.push_back(r.json);
      minus.push_back(-r.current);
      slopes.push_back({b, r.slopes});
    }
    if (c.fields.size() >= 2 && c.packet.gamma > 0.0) {
      Json s;
      s["potential"] = pot.label();
      try {
        const LogLogFit fit = fit_log_log(c.fields, minus);
        s["slope"] = quantity(fit.slope, "dimensionless");
        s["fit_residual"] = quantity(fit.residual, "dimensionless");
      } catch (const DomainError& e) {
        s["error"] = e.what();
      }
      if (c.fields.size() >= 4 && pot.kind == PotentialKind::Sharp) {
        try {
          const EmpiricalConstant cn = cn_extract(slopes, c.window.lower, c.window.upper);
          s["C_n_hat"] = quantity(cn.value, "dimensionless");
          s["C_n_variation"] = quantity(cn.variation, "dimensionless");
        } catch (const DomainError& e) {
          s["C_n_error"] = e.what();
          ok = false;
        }
      }
      sweeps.push_back(s);
    }
  }
  Json out;
  out["command"] = "current";
  out["pass"] = ok;
  out["runs"] = runs;
  if (!sweeps.empty()) out["sweeps"] = sweeps;
  write_json(path(c, "current.json"), out);
  return ok ? 0 : 1;
}

int cmd_cylinder(const RunConfig& c) {
  require_potentials(c);
  const PotentialSpec& pot = c.potentials.front();
  bool ok = true;
  Json runs = Json::array();
  for (double b : c.fields) {
    CylinderGeometry geom;
    geom.circumference = c.cylinder.circumference;
    geom.field = b;
    geom.wall = pot.build(b, c.window.level, c.window.upper);
    const EnergyWindow w = make_window(c, b);
    CylinderOptions co;
    co.grid = c.solver.grid;
    co.solver = c.solver.solver;
    const CylinderSpectrum spectrum = assemble_spectrum(geom, c.cylinder.bands, w, co);

    CsvWriter csv({"m", "p", "k_p", "omega", "current"});
    for (const auto& [key, e] : spectrum.entries)
      csv.add_row({static_cast<double>(key.first), static_cast<double>(key.second), e.k, e.omega,
                   eigenstate_current(spectrum, key.first, key.second)});
    const std::string stem = "cylinder_spectrum_" + field_tag(b);
    write_text(path(c, stem + ".csv"), csv.str());

    Json rec;
    rec["potential"] = potential_json(geom.wall);
    rec["B"] = quantity(b, "field");
    rec["circumference"] = quantity(geom.circumference, "length");
    rec["window"] = window_json(w);
    rec["csv"] = stem + ".csv";
    rec["p_max"] = spectrum.p_max;
    rec["p_star"] = spectrum.p_star ? Json(*spectrum.p_star) : Json(nullptr);
    const auto modes = spectrum.window_modes();
    rec["window_modes"] = modes.size();

    double anti = 0.0;
    for (const auto& [m, p] : modes)
      anti = std::max(anti, std::abs(eigenstate_current(spectrum, m, p) +
                                     eigenstate_current(spectrum, m, -p)));
    rec["mirror_defect"] = quantity(anti, "current");
    const bool anti_ok = anti <= 1e-8;
    ok = ok && anti_ok;

    if (!modes.empty()) {
      const double pc = packet_current(spectrum, build_cylinder_packet(spectrum, c.packet.gamma));
      const double sym = packet_current(spectrum, build_cylinder_packet(spectrum, 0.0));
      const bool sym_ok = std::abs(sym) <= 1e-10 * std::sqrt(b);
      rec["gamma"] = gamma_json(c.packet.gamma);
      rec["packet_current"] = quantity(pc, "current");
      rec["packet_current_over_sqrtB"] = quantity(pc / std::sqrt(b), "current_sqrtB");
      rec["symmetric_packet_current"] = quantity(sym, "current");
      ok = ok && sym_ok;

      if (c.cylinder.perturbation) {
        const PerturbationSpec& ps = *c.cylinder.perturbation;
        const double eps = ps.epsilon * b;
        const double half = geom.wall.has_walls() ? geom.wall.half_width() : 0.5;
        CylinderPerturbation v1;
        if (eps > 0.0)
          v1.terms.push_back(make_harmonic(ps.harmonic, ps.sine, -half, half, 201, [&](double x) {
            const double cs = std::cos(0.5 * std::numbers::pi * x / half);
            return eps * cs * cs;
          }));
        PerturbedOptions po;
        po.x_points = ps.x_points;
        po.p_margin = ps.p_margin;
        po.dimension_cap = ps.dimension_cap;
        po.outer_lower = c.window.outer_lower;
        po.outer_upper = c.window.outer_upper;
        po.solver = c.solver.solver;
        const PerturbedResult r = perturbed_cylinder_project(geom, v1, w, c.packet.gamma, po);
        Json jp;
        jp["epsilon"] = quantity(eps, "energy");
        jp["harmonic"] = ps.harmonic;
        jp["sine"] = ps.sine;
        jp["dimension"] = r.dimension;
        jp["p_max"] = r.p_max;
        jp["grid_points"] = r.grid.n_points;
        Json pe = Json::array(), ue = Json::array();
        for (const auto& e : r.perturbed)
          pe.push_back({{"index", e.global_index}, {"value", quantity(e.value, "energy")}});
        for (const auto& e : r.unperturbed)
          ue.push_back({{"index", e.global_index}, {"value", quantity(e.value, "energy")}});
        jp["perturbed_eigenvalues"] = pe;
        jp["unperturbed_eigenvalues"] = ue;
        jp["max_shift"] = quantity(r.max_shift, "energy");
        jp["projection_norm_sq"] = quantity(r.projection_norm_sq, "dimensionless");
        jp["current_unperturbed"] = quantity(r.current_unperturbed, "current");
        jp["current_perturbed"] = quantity(r.current_perturbed, "current");
        const double sup = v1.sup_bound();
        bool pass = r.max_shift <= sup + 1e-8;
        if (eps == 0.0) {
          pass = pass && std::abs(r.current_perturbed - r.current_unperturbed) <= 1e-8;
        } else if (c.packet.gamma > 0.0) {
          pass = pass && (r.current_perturbed < 0.0) == (r.current_unperturbed < 0.0) &&
                 r.current_perturbed / r.current_unperturbed >= 0.5;
        }
        jp["pass"] = pass;
        ok = ok && pass;
        rec["perturbed"] = jp;
      }
    }
    rec["pass"] = ok;
    runs.push_back(rec);
  }
  Json out;
  out["command"] = "cylinder";
  out["pass"] = ok;
  out["runs"] = runs;
  write_json(path(c, "cylinder.json"), out);
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c) {
  if (c.criteria.empty()) throw ConfigError("empty criteria selection");
  SuiteOptions options;
  options.grid = c.solver.grid;
  options.solver = c.solver.solver;
  std::vector<Json> lines;
  CsvWriter summary({"criterion", "name", "verdicts", "failed", "status"});
  bool ok = true;
  for (int id : c.criteria) {
    const CriterionResult r = run_criterion(id, options);
    std::size_t failed = 0;
    for (const auto& v : r.verdicts) {
      Json j;
      j["criterion"] = id;
      j.update(to_json(v));
      lines.push_back(j);
      if (v.status != VerdictStatus::Pass) ++failed;
    }
    ok = ok && r.pass();
    summary.add_row(std::vector<std::string>{std::to_string(id), "\"" + r.name + "\"",
                                             std::to_string(r.verdicts.size()),
                                             std::to_string(failed), r.pass() ? "pass" : "fail"});
  }
  write_jsonl(path(c, "verdicts.jsonl"), lines);
  write_text(path(c, "summary.csv"), summary.str());
  return ok ? 0 : 1;
}

int cmd_scaling(const RunConfig& c) {
  require_potentials(c);
  if (c.fields.size() < 2) throw ConfigError("scaling needs two or more fields");
  if (!(c.packet.gamma > 0.0)) throw ConfigError("scaling needs gamma > 0");
  bool ok = true;
  Json sweeps = Json::array();
  for (const auto& pot : c.potentials) {
    CsvWriter csv({"B", "minus_current", "minus_current_over_sqrtB"});
    std::vector<double> minus;
    std::vector<SlopeSample> slopes;
    for (double b : c.fields) {
      const CurrentRecord r = current_record(c, pot, b);
      minus.push_back(-r.current);
      slopes.push_back({b, r.slopes});
      csv.add_row({b, -r.current, -r.current / std::sqrt(b)});
    }
    const std::string stem = "scaling_" + pot.label();
    write_text(path(c, stem + ".csv"), csv.str());
    write_text(path(c, stem + ".gp"), gnuplot_script(stem + ".csv", pot.label() + " edge current",
                                                     "B", "-current", {{2, "-current"}}, true));
    Json s;
    s["potential"] = pot.label();
    s["csv"] = stem + ".csv";
    s["gamma"] = gamma_json(c.packet.gamma);
    Json f = Json::array();
    for (double b : c.fields) f.push_back(quantity(b, "field"));
    s["fields"] = f;
    try {
      const LogLogFit fit = fit_log_log(c.fields, minus);
      s["slope"] = quantity(fit.slope, "dimensionless");
      s["fit_residual"] = quantity(fit.residual, "dimensionless");
      if (pot.kind == PotentialKind::Sharp || pot.kind == PotentialKind::Power) {
        const bool pass = std::abs(fit.slope - 0.5) <= 0.1;
        s["pass"] = pass;
        ok = ok && pass;
      }
    } catch (const DomainError& e) {
      s["error"] = e.what();
      ok = false;
    }
    if (c.fields.size() >= 4 && pot.kind == PotentialKind::Sharp) {
      try {
        const EmpiricalConstant cn = cn_extract(slopes, c.window.lower, c.window.upper);
        Json jc;
        jc["value"] = quantity(cn.value, "dimensionless");
        jc["variation"] = quantity(cn.variation, "dimensionless");
        jc["trend_slope"] = quantity(cn.slope, "dimensionless");
        jc["residual"] = quantity(cn.residual, "dimensionless");
        s["C_n_hat"] = jc;
      } catch (const DomainError& e) {
        s["C_n_error"] = e.what();
        ok = false;
      }
    }
    if (pot.kind == PotentialKind::Power) {
      Json ipm = Json::array();
      for (int m = 0; m <= c.window.level; ++m) {
        const IpmResult r = ipm_scaling_check(m, pot.exponent, pot.width, c.fields, c.window.level,
                                              c.window.lower, c.window.upper);
        ipm.push_back({{"m", m},
                       {"slope", quantity(r.fit.slope, "dimensionless")},
                       {"limit", quantity(r.limit, "dimensionless")},
                       {"pass", r.pass}});
        ok = ok && r.pass;
      }
      s["ipm"] = ipm;
    }
    sweeps.push_back(s);
  }
  Json out;
  out["command"] = "scaling";
  out["pass"] = ok;
  out["sweeps"] = sweeps;
  write_json(path(c, "scaling.json"), out);
  return ok ? 0 : 1;
}

}  // namespace qhe::report
