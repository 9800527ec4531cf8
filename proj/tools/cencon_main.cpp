#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cencon/io.hpp"

using namespace cencon;

namespace {

int exit_code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoConvergence:
    case ErrorCode::ContinuationLost:
    case ErrorCode::InfeasibleSpectrum:
    case ErrorCode::CollisionAbort:
    case ErrorCode::CollisionSingularity:
    case ErrorCode::ZeroInertia:
    case ErrorCode::EmptyStratum:
    case ErrorCode::DegenerateGeometry:
    case ErrorCode::RigidShape:
      return 2;  // numerical failure
    default:
      return 3;  // invalid input
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CENCON_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 12345;
}

std::vector<double> parse_sigma(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<double> parse_mass_range(const std::string& text) {
  // lo:hi:steps
  auto p1 = text.find(':');
  auto p2 = text.find(':', p1 == std::string::npos ? 0 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw Error(ErrorCode::InvalidInput,
                "--mass expects lo:hi:steps, got '" + text + "'");
  double lo = std::stod(text.substr(0, p1));
  double hi = std::stod(text.substr(p1 + 1, p2 - p1 - 1));
  int steps = std::stoi(text.substr(p2 + 1));
  if (steps < 1)
    throw Error(ErrorCode::InvalidInput, "--mass needs steps >= 1");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i)
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / double(steps - 1));
  return out;
}

void print_orbit_table(const TypeTable& table) {
  json rows = json::array();
  for (const OrbitType& t : table.classes) {
    json row;
    row["class"] = t.label;
    row["subgroup_order"] = t.representative.order();
    row["orbit_size"] = t.orbit_size;
    row["fixed_dim"] = t.fixed_dim;
    row["components"] = int(table.components[t.class_id].size());
    json comps = json::array();
    for (const TopoOrbitType& c : table.components[t.class_id])
      comps.push_back(type_token(table, t.class_id, c.component));
    row["component_tokens"] = comps;
    rows.push_back(row);
  }
  json out;
  out["group"] = table.G().name;
  out["order"] = table.G().order();
  out["dim"] = table.G().dim;
  out["orbit_types"] = rows;
  std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cencon: symmetric central and balanced configurations of the n-body "
      "problem"};
  app.require_subcommand(1);
  double exponent = 1.0;
  app.add_option("--exponent", exponent,
                 "potential exponent a in U = sum m m / r^a (default 1)");

  // ---- groups ----
  auto* cmd_groups = app.add_subcommand("groups", "catalog groups");
  std::string groups_action = "list", groups_name;
  cmd_groups->add_option("action", groups_action, "list | show")
      ->check(CLI::IsMember({"list", "show"}));
  cmd_groups->add_option("name", groups_name, "group name for 'show'");

  // ---- orbits ----
  auto* cmd_orbits = app.add_subcommand("orbits", "orbit-type table");
  std::string orbits_group;
  cmd_orbits->add_option("--group", orbits_group, "catalog group name")
      ->required();

  // ---- solve / census ----
  std::string ansatz_path, csv_path;
  std::uint64_t seed = default_seed();
  int starts = 64, threads = 0;
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--ansatz", ansatz_path, "ansatz JSON file")->required();
    cmd->add_option("--seed", seed, "RNG seed (env CENCON_SEED)");
    cmd->add_option("--starts", starts, "number of solver starts");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
  };
  auto* cmd_solve = app.add_subcommand("solve", "minimize U on {I=1}");
  add_solver_flags(cmd_solve);
  cmd_solve->add_option("--csv", csv_path, "write solution points CSV");
  auto* cmd_census =
      app.add_subcommand("census", "critical-point census on {I=1}");
  add_solver_flags(cmd_census);

  // ---- verify ----
  auto* cmd_verify =
      app.add_subcommand("verify", "criticality checks of a configuration");
  std::string config_path, verify_group;
  cmd_verify->add_option("--config", config_path, "configuration JSON file")
      ->required();
  cmd_verify->add_option("--group", verify_group,
                         "check symmetry under this catalog group");

  // ---- balanced ----
  auto* cmd_balanced =
      app.add_subcommand("balanced", "spectrum-constrained critical point");
  std::string sigma_text;
  add_solver_flags(cmd_balanced);
  cmd_balanced->add_option("--sigma", sigma_text,
                           "target spectrum, comma separated, descending")
      ->required();

  // ---- spectrum ----
  auto* cmd_spectrum =
      app.add_subcommand("spectrum", "inertia matrix and its spectrum");
  std::string spectrum_config;
  cmd_spectrum
      ->add_option("--config", spectrum_config, "configuration JSON file")
      ->required();

  // ---- dynamics ----
  auto* cmd_dynamics =
      app.add_subcommand("dynamics", "dynamical certification runs");
  std::string dyn_config, dyn_mode = "homothetic", dyn_csv;
  double t_end = 0.1, dt = 1e-4, omega_scale = 1.0;
  cmd_dynamics->add_option("--config", dyn_config, "configuration JSON file")
      ->required();
  cmd_dynamics->add_option("--mode", dyn_mode, "homothetic | rotation")
      ->check(CLI::IsMember({"homothetic", "rotation"}));
  cmd_dynamics->add_option("--t-end", t_end, "integration window (default 0.1)");
  cmd_dynamics->add_option("--dt", dt, "RK4 step (default 1e-4)");
  cmd_dynamics->add_option("--omega-scale", omega_scale,
                           "scale the rotation rate (negative control)");
  cmd_dynamics->add_option("--csv", dyn_csv, "write the trajectory CSV");

  // ---- scan ----
  auto* cmd_scan = app.add_subcommand("scan", "mass continuation");
  std::string scan_mass;
  int scan_slot = 0;
  add_solver_flags(cmd_scan);
  cmd_scan->add_option("--slot", scan_slot, "slot index to scan")->required();
  cmd_scan->add_option("--mass", scan_mass, "lo:hi:steps")->required();
  cmd_scan->add_option("--csv", csv_path, "write continuation CSV");

  // ---- components ----
  auto* cmd_components =
      app.add_subcommand("components", "connected-component census");
  cmd_components->add_option("--ansatz", ansatz_path, "ansatz JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    SolveOptions opts;
    opts.seed = seed;
    opts.starts = starts;
    opts.threads = threads;

    auto load_ansatz = [&]() {
      SymmetricAnsatz A = ansatz_from_json(load_json_file(ansatz_path));
      if (app.count("--exponent")) {
        A = make_ansatz(A.types, A.slots, exponent);
      }
      return A;
    };

    if (*cmd_groups) {
      if (groups_action == "list") {
        json out;
        out["catalog"] = catalog_names();
        std::cout << out.dump(2) << "\n";
      } else {
        if (groups_name.empty())
          throw Error(ErrorCode::InvalidInput, "groups show needs a name");
        FiniteGroup G = catalog_group(groups_name);
        json out;
        out["name"] = G.name;
        out["dim"] = G.dim;
        out["order"] = G.order();
        out["generators"] = G.generators;
        std::cout << out.dump(2) << "\n";
      }
    } else if (*cmd_orbits) {
      print_orbit_table(*analyze_group(catalog_group(orbits_group)));
    } else if (*cmd_solve) {
      SymmetricAnsatz A = load_ansatz();
      CriticalPoint cp = minimize(A, opts);
      json out;
      out["ansatz"] = ansatz_to_json(A);
      out["solution"] = critical_point_to_json(cp);
      std::cout << out.dump(2) << "\n";
      if (!csv_path.empty())
        save_text_file(csv_path, points_csv(cp.configuration));
    } else if (*cmd_census) {
      SymmetricAnsatz A = load_ansatz();
      Census census = find_critical_points(A, opts);
      json out = census_to_json(census);
      out["ansatz"] = ansatz_to_json(A);
      std::cout << out.dump(2) << "\n";
    } else if (*cmd_verify) {
      Configuration C = config_from_json(load_json_file(config_path));
      json out;
      CentralResidual cr = central_residual(C, exponent);
      out["central"] = {{"lambda", cr.lambda}, {"residual", cr.residual}};
      BalancedResult br = balanced_residual(C, exponent);
      out["balanced"] = {{"residual", br.residual},
                         {"is_central", br.is_central},
                         {"degenerate", br.degenerate}};
      out["moment_of_inertia"] = moment_of_inertia(C);
      out["min_separation"] = min_separation(C);
      if (!verify_group.empty()) {
        auto table = analyze_group(catalog_group(verify_group));
        auto chk = check_symmetric(table->G(), C);
        out["symmetric"] = chk.symmetric;
        if (chk.symmetric)
          out["burnside"] = burnside_to_string(*table,
                                               burnside_type_of(*table, C));
        else
          out["failing_generator"] = chk.failing_generator;
      }
      std::cout << out.dump(2) << "\n";
    } else if (*cmd_balanced) {
      SymmetricAnsatz A = load_ansatz();
      std::vector<double> sig = parse_sigma(sigma_text);
      SpectrumTarget target;
      target.sigma = Vec(sig.size());
      for (std::size_t i = 0; i < sig.size(); ++i) target.sigma(i) = sig[i];
      BalancedResult r = solve_balanced(A, target, opts);
      json out = balanced_to_json(r);
      out["ansatz"] = ansatz_to_json(A);
      std::cout << out.dump(2) << "\n";
    } else if (*cmd_spectrum) {
      Configuration C = config_from_json(load_json_file(spectrum_config));
      std::cout << inertia_to_json(inertia_matrix(C)).dump(2) << "\n";
    } else if (*cmd_dynamics) {
      Configuration C = config_from_json(load_json_file(dyn_config));
      json out;
      out["mode"] = dyn_mode;
      out["t_end"] = t_end;
      out["dt"] = dt;
      if (dyn_mode == "homothetic")
        out["deviation"] = homothetic_test(C, t_end, dt, exponent);
      else
        out["deviation"] = rotation_test(C, t_end, dt, exponent, omega_scale);
      if (!dyn_csv.empty()) {
        std::vector<Vec> rest(C.size(), Vec::Zero(C.dim));
        save_text_file(dyn_csv,
                       trajectory_csv(integrate(C, rest, t_end, dt, exponent)));
      }
      std::cout << out.dump(2) << "\n";
    } else if (*cmd_scan) {
      SymmetricAnsatz A = load_ansatz();
      MassScanResult scan =
          mass_scan(A, scan_slot, parse_mass_range(scan_mass), opts);
      json out;
      out["completed"] = scan.completed;
      if (!scan.completed) out["failed_index"] = scan.failed_index;
      json rows = json::array();
      std::ostringstream csv;
      csv.precision(17);
      csv << "mass,U,lambda,residual\n";
      for (std::size_t i = 0; i < scan.points.size(); ++i) {
        json row;
        row["mass"] = scan.masses[i];
        row["U"] = scan.points[i].U_value;
        row["lambda"] = scan.points[i].lambda;
        row["residual"] = scan.points[i].residual;
        rows.push_back(row);
        csv << scan.masses[i] << "," << scan.points[i].U_value << ","
            << scan.points[i].lambda << "," << scan.points[i].residual << "\n";
      }
      out["steps"] = rows;
      std::cout << out.dump(2) << "\n";
      if (!csv_path.empty()) save_text_file(csv_path, csv.str());
      if (!scan.completed) {
        json err;
        err["error"] = "ContinuationLost";
        err["message"] = "continuation failed to reconverge";
        std::cerr << err.dump() << "\n";
        return 2;
      }
    } else if (*cmd_components) {
      SymmetricAnsatz A = ansatz_from_json(load_json_file(ansatz_path));
      json out;
      out["components"] = component_census(A);
      std::cout << out.dump(2) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    json err;
    err["error"] = error_name(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return exit_code_of(e.code());
  } catch (const std::exception& e) {
    json err;
    err["error"] = "InvalidInput";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
