#include "flrw/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace flrw {

namespace {

using nlohmann::json;

double as_number(const json& j, const std::string& key) {
  if (!j.is_number())
    throw ScenarioError("config: '" + key + "' must be a number");
  return j.get<double>();
}

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return as_number(j.at(key), key);
}

std::vector<double> get_list(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.empty())
    throw ScenarioError("config: '" + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const json& e : v) out.push_back(as_number(e, key));
  return out;
}

Vec get_vector(const json& j, const std::string& key) {
  std::vector<double> v = get_list(j, key);
  Vec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("none");
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::BlowUpDetected: return "blowup_detected";
    case RunStatus::HorizonReached: return "horizon_reached";
    case RunStatus::StepFloor: return "stepfloor";
  }
  return "unknown";
}

const char* case_name(RegimeCase c) {
  switch (c) {
    case RegimeCase::I: return "I";
    case RegimeCase::II: return "II";
    case RegimeCase::III: return "III";
    case RegimeCase::IV: return "IV";
    case RegimeCase::Other: return "other";
  }
  return "other";
}

char sign_char(Sign s) {
  return s == Sign::Positive ? '+' : (s == Sign::Negative ? '-' : '0');
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& ex) {
    throw ScenarioError(std::string("config: invalid JSON: ") + ex.what());
  }
  if (!root.is_object()) throw ScenarioError("config: top level must be an object");

  ScenarioFile sf;
  try {
    if (root.contains("cosmology")) {
      const json& c = root.at("cosmology");
      sf.scenario.cosmology.n =
          static_cast<int>(get_number(c, "n", sf.scenario.cosmology.n));
      sf.scenario.cosmology.sigma =
          get_number(c, "sigma", sf.scenario.cosmology.sigma);
      sf.scenario.cosmology.a0 = get_number(c, "a0", sf.scenario.cosmology.a0);
      sf.scenario.cosmology.a1 = get_number(c, "a1", sf.scenario.cosmology.a1);
      sf.has_cosmology = true;
    }
    if (root.contains("nonlinearity")) {
      const json& f = root.at("nonlinearity");
      sf.scenario.nonlinearity.lambda =
          get_number(f, "lambda", sf.scenario.nonlinearity.lambda);
      sf.scenario.nonlinearity.p = get_number(f, "p", sf.scenario.nonlinearity.p);
      if (f.contains("kind")) {
        const std::string kind = f.at("kind").get<std::string>();
        if (kind == "power_vector")
          sf.scenario.nonlinearity.kind = NonlinKind::PowerVector;
        else if (kind == "power_scalar")
          sf.scenario.nonlinearity.kind = NonlinKind::PowerScalar;
        else
          throw ScenarioError(
              "config: nonlinearity.kind must be power_vector or power_scalar");
      }
      sf.has_nonlinearity = true;
    }
    if (root.contains("initial")) {
      const json& i = root.at("initial");
      sf.scenario.Y0 = get_vector(i, "Y0");
      sf.scenario.Y1 = get_vector(i, "Y1");
      sf.has_initial = true;
    }
    sf.scenario.t_end = get_number(root, "t_end", sf.scenario.t_end);
    if (root.contains("tolerances")) {
      const json& t = root.at("tolerances");
      sf.scenario.tol.rel = get_number(t, "rel", sf.scenario.tol.rel);
      sf.scenario.tol.abs = get_number(t, "abs", sf.scenario.tol.abs);
    }
    sf.scenario.blow_threshold =
        get_number(root, "blow_threshold", sf.scenario.blow_threshold);
    sf.scenario.output_points = static_cast<int>(
        get_number(root, "grid", sf.scenario.output_points));
    if (root.contains("solver")) {
      sf.solver = root.at("solver").get<std::string>();
      if (sf.solver != "rk" && sf.solver != "picard" && sf.solver != "both")
        throw ScenarioError("config: solver must be rk, picard, or both");
    }
    if (root.contains("budget")) {
      const json& b = root.at("budget");
      sf.budget.constants.C0 = get_number(b, "C0", 1.0);
      sf.budget.constants.C = get_number(b, "C", 1.0);
      if (b.contains("q_star")) {
        const json& q = b.at("q_star");
        if (q.is_string()) {
          const std::string s = q.get<std::string>();
          if (s != "inf" && s != "infinity")
            throw ScenarioError("config: budget.q_star string must be 'inf'");
          sf.budget.q_star = kInfinity;
        } else {
          sf.budget.q_star = as_number(q, "budget.q_star");
        }
      }
    }
    if (root.contains("sweep")) {
      const json& s = root.at("sweep");
      if (s.contains("lambda")) sf.sweep_lambda = get_list(s, "lambda");
      if (s.contains("p")) sf.sweep_p = get_list(s, "p");
      if (s.contains("y0")) sf.sweep_y0 = get_list(s, "y0");
      if (s.contains("y1")) sf.sweep_y1 = get_list(s, "y1");
    }
    if (root.contains("orbit")) {
      const json& o = root.at("orbit");
      sf.orbit = solar_orbit();
      sf.orbit.G = get_number(o, "G", sf.orbit.G);
      sf.orbit.M = get_number(o, "M", sf.orbit.M);
      sf.orbit.R = get_number(o, "R", sf.orbit.R);
      sf.orbit.T = get_number(o, "T", sf.orbit.T);
      if (o.contains("H_km_s_per_Mpc"))
        sf.orbit.H = hubble_per_second(as_number(o.at("H_km_s_per_Mpc"),
                                                 "orbit.H_km_s_per_Mpc"));
    } else {
      sf.orbit = solar_orbit();
    }
  } catch (const json::exception& ex) {
    throw ScenarioError(std::string("config: ") + ex.what());
  }
  return sf;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const EnergyLedger& led) {
  if (traj.t.empty()) throw std::invalid_argument("csv: empty trajectory");
  const int n = static_cast<int>(traj.Y[0].size());
  os << 't';
  for (int i = 1; i <= n; ++i) os << ",Y_" << i;
  for (int i = 1; i <= n; ++i) os << ",DtY_" << i;
  os << ",e0,drift\n";
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    os << fmt(traj.t[k]);
    for (int i = 0; i < n; ++i) os << ',' << fmt(traj.Y[k][i]);
    for (int i = 0; i < n; ++i) os << ',' << fmt(traj.DtY[k][i]);
    os << ',' << fmt(led.e0[k]) << ',' << fmt(led.drift[k]) << '\n';
  }
}

int sweep_thread_cap() {
  if (const char* env = std::getenv("FLRW_ODE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

std::vector<SweepCell> run_sweep(const ScenarioFile& sf) {
  if (!sf.has_cosmology)
    throw ScenarioError("sweep: config needs a cosmology section");
  const Scenario& base = sf.scenario;
  const int dim = sf.has_initial ? static_cast<int>(base.Y0.size()) : 1;

  auto axis = [](const std::vector<double>& list, double fixed) {
    return list.empty() ? std::vector<double>{fixed} : list;
  };
  const std::vector<double> ls = axis(sf.sweep_lambda, base.nonlinearity.lambda);
  const std::vector<double> ps = axis(sf.sweep_p, base.nonlinearity.p);
  const std::vector<double> y0s =
      axis(sf.sweep_y0, sf.has_initial ? base.Y0.norm() : 1.0);
  const std::vector<double> y1s =
      axis(sf.sweep_y1, sf.has_initial ? base.Y1.norm() : 0.0);

  std::vector<SweepCell> cells;
  for (double l : ls)
    for (double p : ps)
      for (double v0 : y0s)
        for (double v1 : y1s) {
          SweepCell c;
          c.lambda = l;
          c.p = p;
          c.y0 = v0;
          c.y1 = v1;
          cells.push_back(c);
        }

  auto run_cell = [&](SweepCell& cell) {
    Scenario sc = base;
    sc.nonlinearity.lambda = cell.lambda;
    sc.nonlinearity.p = cell.p;
    sc.Y0 = Vec::Zero(dim);
    sc.Y1 = Vec::Zero(dim);
    sc.Y0[0] = cell.y0;
    sc.Y1[0] = cell.y1;
    try {
      const BlowUpEstimate est = estimate_blowup_time(sc);
      cell.searched_until = est.searched_until;
      switch (est.kind) {
        case BlowUpEstimate::Kind::Bracket:
          cell.status = "bracket";
          cell.t_low = est.t_low;
          cell.t_high = est.t_high;
          break;
        case BlowUpEstimate::Kind::NoBlowUpBefore:
          cell.status = "no_blowup";
          break;
        case BlowUpEstimate::Kind::StepFloor:
          cell.status = "stepfloor";
          break;
      }
    } catch (const std::exception& ex) {
      cell.status = "error";
      cell.message = ex.what();
    }
    try {
      const ExistenceBudget b =
          existence_budget(sc.cosmology, sc.nonlinearity, sc.Y0, sc.Y1,
                           sf.budget.constants, sf.budget.q_star);
      cell.budget_T = b.T_admissible;
      cell.budget_global = b.global;
    } catch (const std::exception&) {
      cell.budget_T = std::nullopt;
      cell.budget_global = false;
    }
  };

  const int nthreads =
      std::min<std::size_t>(sweep_thread_cap(), cells.size());
  if (nthreads <= 1) {
    for (SweepCell& c : cells) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
        run_cell(cells[i]);
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "lambda,p,y0,y1,status,t_low,t_high,searched_until,budget_T,"
        "budget_global,message\n";
  for (const SweepCell& c : cells) {
    std::string msg = c.message;
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    os << fmt(c.lambda) << ',' << fmt(c.p) << ',' << fmt(c.y0) << ','
       << fmt(c.y1) << ',' << c.status << ',' << fmt(c.t_low) << ','
       << fmt(c.t_high) << ',' << fmt(c.searched_until) << ','
       << (c.budget_T ? fmt(*c.budget_T) : std::string()) << ','
       << (c.budget_global ? "1" : "0") << ',' << msg << '\n';
  }
}

namespace {

// Sink that writes either to a file or to stdout.
int with_output(const std::string& path, std::ostream& report,
                const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    report << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  body(out);
  return 0;
}

}  // namespace

int cmd_classify(const ScenarioFile& sf, std::ostream& report) {
  if (!sf.has_cosmology) {
    report << "error: classify needs a cosmology section\n";
    return 1;
  }
  try {
    const CosmologyParams& c = sf.scenario.cosmology;
    const RegimeClass rc = classify(c);
    const Horizon hz = horizon(c);
    report << "regime: " << case_name(rc.case_tag) << '\n'
           << "weight_sign: " << sign_char(rc.weight_sign) << '\n'
           << "weight_rate_sign: " << sign_char(rc.weight_rate_sign) << '\n'
           << "T0: " << (hz.t0 ? fmt(*hz.t0) : std::string("undefined")) << '\n'
           << "T1: " << fmt(hz.t1) << '\n'
           << "guarded_end: " << fmt(guarded_end(c)) << '\n'
           << "A(0): " << fmt(weight_A(c, 0.0)) << '\n'
           << "DtA(0): " << fmt(weight_A_rate(c, 0.0)) << '\n';
    return 0;
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_integrate(const ScenarioFile& sf, const std::string& out_path,
                  std::ostream& report) {
  if (!sf.has_cosmology || !sf.has_nonlinearity || !sf.has_initial) {
    report << "error: integrate needs cosmology, nonlinearity, and initial "
              "sections\n";
    return 1;
  }
  const Scenario& sc = sf.scenario;
  try {
    validate_scenario(sc);
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }

  const auto t_start = std::chrono::steady_clock::now();
  Trajectory rk, pic;
  bool have_rk = false, have_pic = false;
  try {
    if (sf.solver == "rk" || sf.solver == "both") {
      rk = integrate_Y(sc);
      have_rk = true;
    }
    if (sf.solver == "picard" || sf.solver == "both") {
      const double T = std::min(sc.t_end, guarded_end(sc.cosmology));
      const CoefficientFn coeff = coefficient_from(sc.cosmology);
      const FundamentalPair pair =
          build_fundamental(coeff, T, T / (8.0 * (sc.output_points - 1)));
      const PicardResult pr =
          solve_fixed_point(pair, sc.nonlinearity, sc.Y0, sc.Y1, T, 64, 1e-12,
                            sc.output_points);
      if (!pr.converged) {
        report << "error: fixed-point iteration did not converge (last "
                  "increment "
               << fmt(pr.final_increment) << ")\n";
        return 2;
      }
      pic = pr.trajectory;
      pic.params_hash = scenario_hash(sc);
      report << "picard_iterations: " << pr.iterations << '\n';
      have_pic = true;
    }
  } catch (const NonContractionError& ex) {
    report << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }
  const Trajectory& traj = have_rk ? rk : pic;
  const double wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t_start)
          .count();

  if (traj.status == RunStatus::StepFloor) {
    report << "error: step controller underflowed the minimum step\n";
    return 2;
  }

  if (have_rk && have_pic) {
    double sup = 0.0;
    const std::size_t m = std::min(rk.t.size(), pic.t.size());
    for (std::size_t k = 0; k < m; ++k)
      sup = std::max(sup, (rk.Y[k] - pic.Y[k]).norm());
    report << "solver_disagreement_sup: " << fmt(sup) << '\n';
  }

  const EnergyLedger led =
      ledger_generic(sc.cosmology, sc.nonlinearity, traj);
  double max_drift = 0.0;
  for (double d : led.drift) max_drift = std::max(max_drift, std::abs(d));

  report << "status: " << status_name(traj.status) << '\n'
         << "samples: " << traj.t.size() << '\n'
         << "t_final: " << fmt(traj.t.back()) << '\n'
         << "max_drift: " << fmt(max_drift) << '\n'
         << "params_hash: " << traj.params_hash << '\n'
         << "steps_accepted: " << traj.steps_accepted << '\n'
         << "steps_rejected: " << traj.steps_rejected << '\n'
         << "wall_ms: " << fmt(wall_ms) << '\n';
  if (traj.status == RunStatus::BlowUpDetected)
    report << "blowup_t_estimate: " << fmt(traj.blowup_t_estimate) << '\n';

  const int rc =
      with_output(out_path, report,
                  [&](std::ostream& os) { write_trajectory_csv(os, traj, led); });
  if (rc != 0) return rc;

  // Audit: the energy identity must hold to solver accuracy plus the
  // trapezoid resolution of the output grid.
  const double h = traj.t.size() > 1 ? traj.t[1] - traj.t[0] : 0.0;
  const double bound =
      (100.0 * sc.tol.rel + h * h) * (1.0 + std::abs(led.e0[0]));
  if (traj.status != RunStatus::BlowUpDetected && max_drift > bound) {
    report << "error: energy drift " << fmt(max_drift)
           << " exceeds the audit bound " << fmt(bound) << '\n';
    return 3;
  }
  return 0;
}

int cmd_sweep(const ScenarioFile& sf, const std::string& out_path,
              std::ostream& report) {
  try {
    const std::vector<SweepCell> cells = run_sweep(sf);
    int errors = 0;
    for (const SweepCell& c : cells)
      if (c.status == "error") ++errors;
    report << "cells: " << cells.size() << '\n'
           << "errors: " << errors << '\n'
           << "threads: " << std::min<std::size_t>(sweep_thread_cap(),
                                                   cells.size())
           << '\n';
    return with_output(out_path, report, [&](std::ostream& os) {
      write_sweep_csv(os, cells);
    });
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_orbit(const ScenarioFile& sf, std::ostream& report) {
  try {
    const OrbitNumbers n = orbit_omega(sf.orbit);
    report << "omega: " << fmt(n.omega) << '\n'
           << "omega_T: " << fmt(n.omega_T) << '\n'
           << "omega_T_over_2pi: " << fmt(n.omega_T / (2.0 * M_PI)) << '\n'
           << "correction: " << fmt(n.correction) << '\n';
    return 0;
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }
}

int cmd_budget(const ScenarioFile& sf, std::ostream& report) {
  if (!sf.has_cosmology || !sf.has_nonlinearity || !sf.has_initial) {
    report << "error: budget needs cosmology, nonlinearity, and initial "
              "sections\n";
    return 1;
  }
  try {
    const ExistenceBudget b = existence_budget(
        sf.scenario.cosmology, sf.scenario.nonlinearity, sf.scenario.Y0,
        sf.scenario.Y1, sf.budget.constants, sf.budget.q_star);
    const char* kind = b.kind == BudgetKind::Expanding    ? "expanding"
                       : b.kind == BudgetKind::Contracting ? "contracting"
                                                            : "flat";
    report << "kind: " << kind << '\n'
           << "T_admissible: " << fmt_opt(b.T_admissible) << '\n'
           << "global: " << (b.global ? "yes" : "no") << '\n'
           << "data: " << fmt(b.data) << '\n'
           << "q_star: " << fmt(b.q_star) << '\n'
           << "C0: " << fmt(b.constants.C0) << '\n'
           << "C: " << fmt(b.constants.C) << '\n';
    return 0;
  } catch (const std::exception& ex) {
    report << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace flrw
