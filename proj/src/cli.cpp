#include "kgrhs/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kgrhs/report.hpp"

namespace kgrhs {

using nlohmann::json;

namespace {

json cx(Complex z) { return json::array({z.real(), z.imag()}); }

json v4(const FourVector& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json quat_json(const Quaternion& q) {
  return json::array({q.z0().real(), q.z0().imag(), q.z1().real(), q.z1().imag()});
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Portable uniform deviate in [0, 1).
double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::vector<FourVector> sample_points(const VerificationRequest& v, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<FourVector> points;
  for (int k = 0; k < v.points; ++k) {
    FourVector x;
    x[0] = v.time_range[0] + (v.time_range[1] - v.time_range[0]) * uniform(g);
    for (std::size_t i = 0; i < 3; ++i) x[i + 1] = v.box.lower[i] + (v.box.upper[i] - v.box.lower[i]) * uniform(g);
    points.push_back(x);
  }
  return points;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NoRealRoot*>(&e)) return "NoRealRoot";
  if (dynamic_cast<const BelowRest*>(&e)) return "BelowRest";
  if (dynamic_cast<const StencilOverflow*>(&e)) return "StencilOverflow";
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "DegenerateDenominator";
  if (dynamic_cast<const NonUnitaryPhase*>(&e)) return "NonUnitaryPhase";
  if (dynamic_cast<const NotSpecified*>(&e)) return "NotSpecified";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  return "Error";
}

json meta(const Scenario& s, Command command) {
  json m;
  m["tool"] = "kg-rhs";
  m["version"] = kVersion;
  m["command"] = std::string(to_string(command));
  m["seed"] = s.seed;
  m["tolerance"] = s.tolerance;
  return m;
}

// pack joins numeric arrays into one space-separated cell.
void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows,
             int digits, bool pack) {
  if (v.is_object()) {
    for (const auto& item : v.items())
      flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), rows, digits, pack);
  } else if (pack && v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + format_number(e.get<double>(), digits);
    rows.emplace_back(prefix, s);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), rows, digits, pack);
  } else if (v.is_number_float()) {
    rows.emplace_back(prefix, format_number(v.get<double>(), digits));
  } else if (v.is_string()) {
    rows.emplace_back(prefix, v.get<std::string>());
  } else {
    rows.emplace_back(prefix, v.dump());
  }
}

std::string csv_header_line(const json& m) {
  std::string line = "# kg-rhs " + m.at("version").get<std::string>() + " command=" + m.at("command").get<std::string>() +
                     " seed=" + std::to_string(m.at("seed").get<std::uint64_t>());
  if (m.contains("parameter")) line += " parameter=" + m.at("parameter").get<std::string>();
  return line + "\n";
}

std::string render_single(const Scenario& s, const json& m, const json& result) {
  switch (s.output) {
    case OutputFormat::Json:
      return dump_json(json{{"meta", m}, {"result", result}});
    case OutputFormat::Csv: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(result, "", rows, 17, false);
      std::string out = csv_header_line(m) + "field,value\n";
      for (const auto& [k, v] : rows) out += k + "," + v + "\n";
      return out;
    }
    case OutputFormat::Human: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(result, "", rows, 6, true);
      std::size_t width = 0;
      for (const auto& r : rows) width = std::max(width, r.first.size());
      std::string out = "kg-rhs " + std::string(kVersion) + " " + m.at("command").get<std::string>() + "\n";
      for (const auto& [k, v] : rows) out += "  " + k + std::string(width - k.size() + 2, ' ') + v + "\n";
      return out;
    }
  }
  return {};
}

double max_abs(const FourVector& v) {
  double m = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) m = std::max(m, std::abs(v[mu]));
  return m;
}

}  // namespace

void apply_options(Scenario& s, const RunOptions& o) {
  if (o.output) s.output = *o.output;
  if (o.tolerance) s.tolerance = *o.tolerance;
  if (o.seed) s.seed = *o.seed;
}

json solve_result(const Scenario& s, bool full, int jobs) {
  const PlaneWaveSolution sol = build_solution(*s.solve);
  const ConstraintReport report = check(sol);
  const double normaliser = sol.mass > 0.0 ? sol.mass * sol.mass : 1.0;

  json out;
  out["case"] = std::string(to_string(sol.case_tag));
  out["solution"] = {{"P", v4(sol.P())},
                     {"K", v4(sol.K())},
                     {"phi0", cx(sol.phi0)},
                     {"phi1", cx(sol.phi1)},
                     {"exponent_side", sol.exponent_side == ExponentSide::Left ? "left" : "right"},
                     {"mass", sol.mass},
                     {"charge", sol.charge}};
  json residuals = json::object();
  for (const auto& [name, value] : report.residuals()) residuals[name] = value;
  const double constraint_max = report.max_residual() / normaliser;
  out["constraints"] = {{"trivial", report.trivial()}, {"residuals", residuals}, {"normalized_max", constraint_max}};

  const ExpectationSet e = expectations(sol, s.verification.box);
  out["expectations"] = {
      {"box", {{"lower", s.verification.box.lower}, {"upper", s.verification.box.upper}, {"t", s.verification.box.t}}},
      {"norm_integral", e.E.norm_integral},
      {"E", e.E.coefficient},
      {"p", json::array({e.p[0].coefficient, e.p[1].coefficient, e.p[2].coefficient})},
      {"E2", e.E2.coefficient},
      {"p2", e.p2.coefficient},
      {"conservation_residual", conservation_residual(sol, s.verification.box)}};

  const std::vector<FourVector> points = sample_points(s.verification, s.seed);
  const std::size_t n = points.size();
  std::vector<double> kge(n), cont(n), cur(n);
  parallel_for(static_cast<int>(n), jobs, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    kge[k] = kge_residual_fd(sol, points[k], s.verification.stencil);
    cont[k] = continuity_residual_fd(sol, points[k], s.verification.stencil);
    const FourVector closed = current(sol, points[k]);
    const FourVector fd = current_fd(sol, points[k], s.verification.stencil);
    cur[k] = max_abs(closed - fd) / std::max(max_abs(closed), std::numeric_limits<double>::min());
  });
  const double kge_max = *std::max_element(kge.begin(), kge.end());
  const double cont_max = *std::max_element(cont.begin(), cont.end());
  const double cur_max = *std::max_element(cur.begin(), cur.end());
  json verifier = {{"points", n},
                   {"seed", s.seed},
                   {"h", s.verification.stencil.h},
                   {"order", s.verification.stencil.order},
                   {"kge_max", kge_max},
                   {"continuity_max", cont_max},
                   {"current_max_rel", cur_max}};

  bool passed = constraint_max < s.tolerance && kge_max < s.tolerance && cont_max < s.tolerance &&
                conservation_residual(sol, s.verification.box) < s.tolerance;
  if (full) {
    passed = passed && cur_max < s.tolerance;
    json conv;
    try {
      const ConvergenceStudy study =
          convergence_study(sol, ResidualKind::KleinGordon, s.verification.h_list, s.verification.stencil.order,
                            s.verification.box.center());
      conv = {{"status", "ok"}, {"slope", study.slope}, {"h", study.h}, {"residuals", study.residuals}};
      passed = passed && std::abs(study.slope - s.verification.stencil.order) <= 0.3;
    } catch (const NoisePlateau&) {
      conv = {{"status", "plateau"}};
    }
    verifier["convergence"] = conv;
  }
  out["verifier"] = verifier;
  out["passed"] = passed;
  return out;
}

json klein_result(const Scenario& s) {
  const KleinRequest& k = *s.klein;
  const BarrierSpec& spec = k.spec;
  json out;
  out["E"] = spec.E;
  out["V0"] = spec.V0;
  out["V1"] = spec.V1;
  out["mass"] = spec.m;
  out["charge"] = spec.q;
  bool passed = true;

  if (spec.quat) {
    const MassShift shift = quaternionic_mass_shift(spec);
    out["mass_shift"] = {{"complex_shift", shift.complex_shift},
                         {"quaternionic_shift", shift.quaternionic_shift},
                         {"signs_opposite", shift.signs_opposite}};
    out["effective_mass_squared"] = effective_mass_squared(spec);
  }
  if (k.boundary) {
    const BoundaryCheck b = quaternionic_boundary_check(k.boundary->phi_I, k.boundary->phi_II, *spec.unitary_phase,
                                                        k.boundary->side);
    out["boundary_check"] = {{"residual", b.residual},
                             {"complex_valued", b.complex_valued},
                             {"phi_I", quat_json(k.boundary->phi_I)},
                             {"phi_II", quat_json(k.boundary->phi_II)}};
    passed = passed && b.residual < s.tolerance && b.complex_valued;
  }
  if (spec.quat && spec.quat->a1 != Complex{}) {
    out["amplitudes_unspecified"] = true;
    out["passed"] = passed;
    return out;
  }

  const ScatteringResult r = spec.V1 == 0.0 ? solve_real_barrier(spec) : solve_complex_barrier(spec);
  const Complex phase = std::exp(Complex(0.0, -spec.phi0));
  const double continuity = std::abs(1.0 + r.R - r.T * phase);
  const double derivative = std::abs(r.Q * (1.0 - r.R) - r.Qprime * r.T * phase);
  const double identity = std::abs(r.rt_sum - 1.0 - r.correction);
  out["phi0"] = spec.phi0;
  out["Q"] = cx(r.Q);
  out["Qprime"] = cx(r.Qprime);
  out["R"] = cx(r.R);
  out["T"] = cx(r.T);
  out["refl"] = r.refl_coeff;
  out["trans"] = r.trans_coeff;
  out["rt_sum"] = r.rt_sum;
  out["correction"] = r.correction;
  out["regime"] = std::string(to_string(r.regime));
  out["transmission_flagged"] = r.transmission_flagged;
  out["energy_residual"] = r.energy_residual;
  out["boundary_residuals"] = {{"continuity", continuity}, {"derivative", derivative}};
  out["identity_residual"] = identity;
  json points = json::array();
  for (const FourVector& x : k.points) {
    const double trans = transmission_at(r, x);
    const double corr = rt_sum_correction(r, x);
    const double id = std::abs(r.refl_coeff + trans - 1.0 - corr);
    points.push_back({{"x", v4(x)}, {"trans", trans}, {"correction", corr}, {"identity_residual", id}});
    passed = passed && id < s.tolerance;
  }
  out["points"] = points;
  passed = passed && continuity < s.tolerance && derivative < s.tolerance && identity < s.tolerance &&
           r.energy_residual < s.tolerance;
  out["passed"] = passed;
  return out;
}

RunOutcome run_solve(const Scenario& s, int jobs) {
  const json result = solve_result(s, false, jobs);
  return {result.at("passed").get<bool>() ? kExitOk : kExitTolerance, render_single(s, meta(s, Command::Solve), result), {}};
}

RunOutcome run_verify(const Scenario& s, int jobs) {
  const json result = solve_result(s, true, jobs);
  return {result.at("passed").get<bool>() ? kExitOk : kExitTolerance, render_single(s, meta(s, Command::Verify), result),
          {}};
}

RunOutcome run_klein(const Scenario& s, int jobs) {
  if (s.sweep) {
    RunOutcome o = run_sweep(s, jobs);
    return o;
  }
  const json result = klein_result(s);
  return {result.at("passed").get<bool>() ? kExitOk : kExitTolerance, render_single(s, meta(s, Command::Klein), result),
          {}};
}

RunOutcome run_sweep(const Scenario& s, int jobs) {
  if (!s.sweep) throw SchemaError("sweep", "required field missing");
  const SweepRequest& sw = *s.sweep;
  const bool klein = s.klein.has_value();
  std::vector<json> rows(static_cast<std::size_t>(sw.steps));

  parallel_for(sw.steps, jobs, [&](int i) {
    const double value = sw.value(i);
    json row;
    row["value"] = value;
    try {
      Scenario point = parse_scenario(with_parameter(s.raw, sw.parameter, value));
      point.tolerance = s.tolerance;
      point.seed = s.seed;
      row["result"] = klein ? klein_result(point) : solve_result(point, false, 1);
    } catch (const Error& e) {
      row["error"] = error_kind(e);
      row["message"] = e.what();
    }
    rows[static_cast<std::size_t>(i)] = row;
  });

  bool any_error = false;
  bool all_passed = true;
  std::string errors;
  for (const json& row : rows) {
    if (row.contains("error")) {
      any_error = true;
      errors += sw.parameter + "=" + format_number(row.at("value").get<double>(), 17) + ": " +
                row.at("error").get<std::string>() + ": " + row.at("message").get<std::string>() + "\n";
    } else if (!row.at("result").at("passed").get<bool>()) {
      all_passed = false;
    }
  }

  json m = meta(s, Command::Sweep);
  m["parameter"] = sw.parameter;
  std::string text;
  if (s.output == OutputFormat::Json) {
    text = dump_json(json{{"meta", m}, {"result", {{"parameter", sw.parameter}, {"rows", rows}}}});
  } else {
    const int digits = s.output == OutputFormat::Csv ? 17 : 6;
    const char sep = s.output == OutputFormat::Csv ? ',' : ' ';
    const auto num = [digits](const json& v) { return format_number(v.get<double>(), digits); };
    std::vector<std::vector<std::string>> table;
    if (klein) {
      table.push_back({"E", "V0", "V1", "refl", "trans", "rt_sum", "correction", "regime"});
      for (const json& row : rows) {
        if (row.contains("error")) {
          table.push_back({"nan", "nan", "nan", "nan", "nan", "nan", "nan", row.at("error").get<std::string>()});
          continue;
        }
        const json& r = row.at("result");
        if (r.contains("amplitudes_unspecified")) {
          table.push_back({num(r.at("E")), num(r.at("V0")), num(r.at("V1")), "nan", "nan", "nan", "nan", "NotSpecified"});
          continue;
        }
        table.push_back({num(r.at("E")), num(r.at("V0")), num(r.at("V1")), num(r.at("refl")), num(r.at("trans")),
                         num(r.at("rt_sum")), num(r.at("correction")), r.at("regime").get<std::string>()});
      }
    } else {
      table.push_back({"value", "case", "K0", "K1", "K2", "K3", "P0", "P1", "P2", "P3", "constraint_max", "kge_fd_max",
                       "continuity_fd_max", "status"});
      for (const json& row : rows) {
        std::vector<std::string> line{num(row.at("value"))};
        if (row.contains("error")) {
          line.push_back(s.solve ? std::string(to_string(s.solve->case_tag)) : "");
          for (int c = 0; c < 11; ++c) line.push_back("nan");
          line.push_back(row.at("error").get<std::string>());
        } else {
          const json& r = row.at("result");
          line.push_back(r.at("case").get<std::string>());
          for (const char* key : {"K", "P"})
            for (const auto& c : r.at("solution").at(key)) line.push_back(num(c));
          line.push_back(num(r.at("constraints").at("normalized_max")));
          line.push_back(num(r.at("verifier").at("kge_max")));
          line.push_back(num(r.at("verifier").at("continuity_max")));
          line.push_back(r.at("passed").get<bool>() ? "passed" : "failed");
        }
        table.push_back(line);
      }
    }
    if (s.output == OutputFormat::Csv) text = csv_header_line(m);
    for (const auto& line : table) {
      for (std::size_t c = 0; c < line.size(); ++c) text += (c ? std::string(1, sep) : "") + line[c];
      text += "\n";
    }
  }
  const int code = any_error ? kExitDomain : (all_passed ? kExitOk : kExitTolerance);
  return {code, text, errors};
}

RunOutcome run_command(Command command, const std::string& path, const RunOptions& options) {
  RunOutcome outcome;
  try {
    Scenario s = load_scenario(path);
    apply_options(s, options);
    if (s.command && *s.command != command)
      throw SchemaError("command", "scenario declares '" + std::string(to_string(*s.command)) + "'");
    switch (command) {
      case Command::Solve:
      case Command::Verify:
        if (!s.solve) throw SchemaError("case", "required field missing for " + std::string(to_string(command)));
        return command == Command::Solve ? run_solve(s, options.jobs) : run_verify(s, options.jobs);
      case Command::Klein:
        if (!s.klein) throw SchemaError("barrier", "required field missing for klein");
        return run_klein(s, options.jobs);
      case Command::Sweep:
        return run_sweep(s, options.jobs);
    }
  } catch (const SchemaError& e) {
    outcome.exit_code = kExitSchema;
    outcome.error = std::string("schema error: ") + e.what();
  } catch (const nlohmann::json::exception& e) {
    outcome.exit_code = kExitSchema;
    outcome.error = std::string("schema error: ") + e.what();
  } catch (const Error& e) {
    outcome.exit_code = kExitDomain;
    outcome.error = error_kind(e) + ": " + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitDomain;
    outcome.error = std::string("error: ") + e.what();
  }
  return outcome;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane-wave Klein-Gordon solutions, verification and step-barrier scattering"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  double tolerance = 0.0;
  int jobs = 1;
  std::uint64_t seed = 0;
  auto* output_opt = app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Pass threshold for residuals")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random verification points");

  std::string path;
  Command command = Command::Solve;
  const std::pair<Command, const char*> commands[] = {
      {Command::Solve, "Solve a plane-wave scenario and report residuals"},
      {Command::Verify, "Solve and run the full finite-difference verification"},
      {Command::Klein, "Solve a step-barrier scenario"},
      {Command::Sweep, "Sweep one scenario parameter"}};
  for (const auto& [c, help] : commands) {
    auto* sub = app.add_subcommand(std::string(to_string(c)), help);
    sub->add_option("file", path, "Scenario file")->required();
    sub->callback([&command, c = c] { command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitSchema;
  }

  RunOptions options;
  if (*output_opt) options.output = parse_output(output);
  if (*tol_opt) options.tolerance = tolerance;
  if (*seed_opt) options.seed = seed;
  options.jobs = jobs;

  const RunOutcome outcome = run_command(command, path, options);
  out << outcome.text;
  std::istringstream lines(outcome.error);
  for (std::string line; std::getline(lines, line);) err << "kg-rhs: " << line << "\n";
  return outcome.exit_code;
}

}  // namespace kgrhs
