// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in the assertions.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cencon/dynamics.hpp"
#include "cencon/io.hpp"

using namespace cencon;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  std::vector<std::string> problems;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

void run_criterion(const std::string& name,
                   const std::function<void(Criterion&)>& body) {
  Criterion c{name};
  auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.problems.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  if (c.problems.empty()) {
    std::printf("[PASS] %s (%.2fs)%s\n", name.c_str(), secs,
                c.note.str().empty() ? "" : ("  " + c.note.str()).c_str());
  } else {
    ++g_failures;
    std::printf("[FAIL] %s (%.2fs)\n", name.c_str(), secs);
    for (const std::string& p : c.problems)
      std::printf("       - %s\n", p.c_str());
  }
  std::fflush(stdout);
}

std::string fixture(const std::string& name) {
  return std::string(CENCON_FIXTURE_DIR) + "/" + name;
}

SymmetricAnsatz load_ansatz(const std::string& name) {
  return ansatz_from_json(load_json_file(fixture(name)));
}

Configuration load_config(const std::string& name) {
  return config_from_json(load_json_file(fixture(name)));
}

// Edge-length ratio of a truncated tetrahedron: at every vertex the two
// equal nearest distances are triangle edges, the odd one out is the edge
// shared by two hexagons; rho = hex edge / triangle edge.
double truncated_tetra_rho(const Configuration& C) {
  double t_sum = 0, h_sum = 0;
  for (int i = 0; i < C.size(); ++i) {
    std::vector<double> d;
    for (int j = 0; j < C.size(); ++j)
      if (j != i) d.push_back((C.points[i] - C.points[j]).norm());
    std::sort(d.begin(), d.end());
    double t, h;
    if (std::abs(d[0] - d[1]) < 1e-9 * d[0]) {
      t = d[0];
      h = d[2];
    } else {
      t = d[1];
      h = d[0];
    }
    t_sum += t;
    h_sum += h;
  }
  return (h_sum / C.size()) / (t_sum / C.size());
}

bool is_regular_tetrahedron(const Configuration& C, double tol) {
  if (C.size() != 4) return false;
  std::vector<double> d;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      d.push_back((C.points[i] - C.points[j]).norm());
  double avg = 0;
  for (double v : d) avg += v / d.size();
  for (double v : d)
    if (std::abs(v - avg) > tol * avg) return false;
  return true;
}

bool is_coordinate_plane_square(const Configuration& C, double tol) {
  if (C.size() != 4 || C.dim != 3) return false;
  int flat_axis = -1;
  for (int k = 0; k < 3; ++k) {
    double worst = 0;
    for (const Vec& p : C.points) worst = std::max(worst, std::abs(p(k)));
    if (worst < tol) flat_axis = k;
  }
  if (flat_axis < 0) return false;
  std::vector<double> d;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      d.push_back((C.points[i] - C.points[j]).norm());
  std::sort(d.begin(), d.end());
  double side = (d[0] + d[1] + d[2] + d[3]) / 4;
  for (int k = 0; k < 4; ++k)
    if (std::abs(d[k] - side) > tol) return false;
  return std::abs(d[4] - std::sqrt(2.0) * side) < tol &&
         std::abs(d[5] - std::sqrt(2.0) * side) < tol;
}

// 1-D oracle for the nested dual triangles: grid scan of U over the radius
// ratio on I=1, refined by golden-section. Independent of the solver path.
double nested_triangle_oracle() {
  auto table = analyze_group(catalog_group("D", 3));
  int z2 = table->class_by_label("Z2^k");
  SymmetricAnsatz A = make_ansatz(table, {{z2, 0, 1.0}, {z2, 1, 1.0}});
  auto U_of = [&](double ratio) {
    Vec c(2);
    c << 1.0, -ratio;
    return reduced_potential(A, project_to_sphere(A, c));
  };
  double best = 0.1, bestU = 1e300;
  for (int i = 1; i <= 1000; ++i) {
    double r = 0.01 * i;
    double u = U_of(r);
    if (u < bestU) {
      bestU = u;
      best = r;
    }
  }
  double a = best - 0.01, b = best + 0.01;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-11) {
    if (U_of(c) < U_of(d))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return 0.5 * (a + b);
}

std::vector<CriticalPoint> g_certified;  // I=1 solutions collected on the way

}  // namespace

int main() {
  // ---- 1: truncated tetrahedron -------------------------------------------
  run_criterion("1 truncated tetrahedron: rho in [0.845,0.865], unique", [](
                                                                   Criterion&
                                                                       c) {
    auto t0 = std::chrono::steady_clock::now();
    SymmetricAnsatz A = load_ansatz("truncated_tetrahedron.json");
    SolveOptions opts;
    opts.starts = 64;
    opts.seed = 20240801;
    CriticalPoint cp = minimize(A, opts);
    double rho = truncated_tetra_rho(cp.configuration);
    c.note << "rho=" << rho;
    c.require(cp.residual <= 1e-10, "solver residual too large");
    c.require(rho >= 0.845 && rho <= 0.865, "rho outside [0.845, 0.865]");
    c.require(std::abs(rho - 1.0) > 0.05,
              "rho == 1: the Archimedean shape must not be central");
    Census census = find_critical_points(A, opts);
    c.require(census.distinct.size() == 1,
              "census must report exactly one critical point, got " +
                  std::to_string(census.distinct.size()));
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    c.require(secs < 10.0, "solve + census exceeded 10 s");
    g_certified.push_back(cp);
  });

  // ---- 2: D_2 census ---------------------------------------------------------
  run_criterion("2 D_2 census: 5 critical points (2 tetrahedra + 3 squares)",
                [](Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    SymmetricAnsatz A = load_ansatz("d2_census.json");
    SolveOptions opts;
    opts.starts = 256;
    opts.seed = 31415;
    Census census = find_critical_points(A, opts);
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    c.require(secs < 60.0, "census exceeded 60 s");
    c.require(census.distinct.size() == 5,
              "expected exactly 5 distinct critical points, got " +
                  std::to_string(census.distinct.size()));
    int tetra_minima = 0, square_saddles = 0;
    for (const CriticalPoint& cp : census.distinct) {
      if (cp.morse_index == 0 &&
          is_regular_tetrahedron(cp.configuration, 1e-6))
        ++tetra_minima;
      if (cp.morse_index >= 1 &&
          is_coordinate_plane_square(cp.configuration, 1e-6))
        ++square_saddles;
      g_certified.push_back(cp);
    }
    c.require(tetra_minima == 2,
              "expected 2 regular-tetrahedron minima, got " +
                  std::to_string(tetra_minima));
    c.require(square_saddles == 3,
              "expected 3 coordinate-plane-square saddles, got " +
                  std::to_string(square_saddles));
  });

  // ---- 3: edge-regular Archimedeans -----------------------------------------
  run_criterion("3 cuboctahedron + icosidodecahedron verify central", [](
                                                                 Criterion& c) {
    for (const char* name : {"cuboctahedron.json", "icosidodecahedron.json"}) {
      Configuration C = load_config(name);
      double res = central_residual(C).residual;
      c.require(res <= 1e-10,
                std::string(name) + ": central residual " +
                    std::to_string(res));
      g_certified.push_back(
          {C, Vec(), potential(C), central_residual(C).lambda, res, 0, 0,
           CriticalKind::Minimum});
    }
  });

  // ---- 4: symmetric-criticality bridge ---------------------------------------
  run_criterion("4 bridge: 200 seeded solves, full-space residual <= 1e-8",
                [](Criterion& c) {
    const char* corpus[] = {
        "figure1_d3.json",      "figure2b_d4.json",
        "c2h.json",             "dnh_double_antiprism.json",
        "nested_tetrahedra.json", "truncated_tetrahedron.json",
        "d2_census.json",       "collinear3_distinct.json"};
    int solves = 0, ok = 0;
    for (const char* name : corpus) {
      SymmetricAnsatz A = load_ansatz(name);
      for (int rep = 0; rep < 25; ++rep) {
        SolveOptions opts;
        opts.starts = 8;
        opts.seed = 1000 + 37 * rep + solves;
        ++solves;
        try {
          CriticalPoint cp = minimize(A, opts);
          if (cp.residual <= 1e-8) ++ok;
          if (rep == 0) g_certified.push_back(cp);
        } catch (const Error& e) {
          c.problems.push_back(std::string(name) + " seed " +
                               std::to_string(opts.seed) + ": " + e.what());
        }
      }
    }
    c.note << ok << "/" << solves;
    c.require(solves == 200, "expected 200 solves");
    c.require(ok == solves, "a solve exceeded the 1e-8 bridge tolerance");
  });

  // ---- 5: gradients, homogeneity, multiplier identity -------------------------
  run_criterion("5 gradients vs finite differences, homogeneity, lambda",
                [](Criterion& c) {
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
      Rng rng(5000 + trial);
      Configuration C;
      C.dim = 2 + trial % 2;
      int n = 3 + trial % 4;
      for (int i = 0; i < n; ++i) {
        Vec p(C.dim);
        for (int k = 0; k < C.dim; ++k) p(k) = rng.uniform(-1, 1);
        C.points.push_back(p);
        C.masses.push_back(rng.uniform(0.5, 2));
      }
      if (min_separation(C) < 0.05) continue;
      auto gu = grad_potential(C);
      auto gi = grad_inertia(C);
      for (int i = 0; i < n && i < 2; ++i)
        for (int k = 0; k < C.dim; ++k) {
          Configuration P = C, M = C;
          P.points[i](k) += h;
          M.points[i](k) -= h;
          double fu = (potential(P) - potential(M)) / (2 * h);
          double fi =
              (moment_of_inertia(P) - moment_of_inertia(M)) / (2 * h);
          c.require(std::abs(gu[i](k) - fu) <=
                        1e-6 * std::max(1.0, std::abs(fu)),
                    "potential gradient mismatch vs finite differences");
          c.require(std::abs(gi[i](k) - fi) <=
                        1e-6 * std::max(1.0, std::abs(fi)),
                    "inertia gradient mismatch vs finite differences");
        }
      double U0 = potential(C), I0 = moment_of_inertia(C);
      for (double lambda : {0.5, 2.0, 10.0}) {
        Configuration L = C;
        for (Vec& p : L.points) p *= lambda;
        c.require(std::abs(potential(L) - U0 / lambda) <= 1e-12 * U0,
                  "U(lambda C) != U(C)/lambda");
        c.require(std::abs(moment_of_inertia(L) - lambda * lambda * I0) <=
                      1e-12 * lambda * lambda * I0,
                  "I(lambda C) != lambda^2 I(C)");
      }
    }
    for (const CriticalPoint& cp : g_certified)
      c.require(std::abs(cp.lambda + cp.U_value / 2) <= 1e-8 *
                    std::max(1.0, cp.U_value),
                "lambda != -U/2 at an I=1 solution");
  });

  // ---- 6: orbit-type tables ---------------------------------------------------
  run_criterion("6 orbit-type tables match the worked counts", [](Criterion&
                                                                      c) {
    auto count = [](const char* name, int param = 0) {
      FiniteGroup G = param ? catalog_group(name, param) : catalog_group(name);
      return int(enumerate_isotropy_classes(G).size());
    };
    c.require(count("D", 3) == 3, "D_3 must have 3 orbit types");
    c.require(count("D_3h") == 6, "D_3h must have 6 orbit types");
    c.require(count("T_d") == 5, "T_d must have 5 orbit types");
    c.require(count("D_2rot") == 5, "D_2rot must have 5 orbit types");
    for (int k : {3, 5}) {  // odd: one reflection class, two components
      auto table = analyze_group(catalog_group("D", k));
      c.require(int(table->classes.size()) == 3,
                "odd D_k must have 3 conjugacy classes");
      int z2 = table->class_by_label("Z2^k");
      c.require(z2 >= 0 && int(table->components[z2].size()) == 2,
                "odd D_k reflection stratum must split into 2 components");
    }
    for (int k : {4, 6}) {  // even: two reflection classes, one component each
      auto table = analyze_group(catalog_group("D", k));
      c.require(int(table->classes.size()) == 4,
                "even D_k must have 4 conjugacy classes");
      int a = table->class_by_label("Z2^k");
      int b = table->class_by_label("Z2^k'");
      c.require(a >= 0 && b >= 0, "even D_k must have kappa and kappa' classes");
      if (a >= 0 && b >= 0)
        c.require(table->components[a].size() == 1 &&
                      table->components[b].size() == 1,
                  "even D_k reflection strata must be connected");
    }
  });

  // ---- 7: Euler / Lagrange component counting ---------------------------------
  run_criterion("7 collinear census 3 vs 1; nested-triangle oracle", [](
                                                                 Criterion& c) {
    SymmetricAnsatz distinct = load_ansatz("collinear3_distinct.json");
    SymmetricAnsatz equal = load_ansatz("collinear3_equal.json");
    c.require(component_census(distinct) == 3,
              "masses (1,2,3): expected 3 components");
    c.require(component_census(equal) == 1,
              "masses (1,1,1): expected 1 component");

    auto table = analyze_group(catalog_group("D", 3));
    int z2 = table->class_by_label("Z2^k");
    SymmetricAnsatz A = make_ansatz(table, {{z2, 0, 1.0}, {z2, 1, 1.0}});
    SolveOptions opts;
    opts.starts = 32;
    opts.seed = 777;
    CriticalPoint cp = minimize(A, opts);
    double r1 = std::abs(cp.coords(0)), r2 = std::abs(cp.coords(1));
    double ratio = std::min(r1 / r2, r2 / r1);
    double oracle = nested_triangle_oracle();
    double oracle_canon = std::min(oracle, 1.0 / oracle);
    c.note << "ratio=" << ratio << " oracle=" << oracle_canon;
    c.require(std::abs(ratio - oracle_canon) <= 1e-4,
              "nested-triangle ratio disagrees with the brute-force oracle");
    g_certified.push_back(cp);
  });

  // ---- 8: balanced suite -------------------------------------------------------
  run_criterion("8 balanced: scalar B at central points, T_d equivalence, "
                "Schur blocks",
                [](Criterion& c) {
    for (const CriticalPoint& cp : g_certified) {
      BalancedResult r = balanced_residual(cp.configuration);
      c.require(r.residual <= 1e-8, "central point fails balanced residual");
      c.require(r.is_central, "central point has non-scalar multiplier");
    }
    // T_d: balanced at the central spectrum == central configuration
    SymmetricAnsatz A = load_ansatz("truncated_tetrahedron.json");
    SolveOptions opts;
    opts.starts = 16;
    opts.seed = 2718;
    CriticalPoint central = minimize(A, opts);
    SpectrumTarget target{inertia_matrix(central.configuration).spectrum};
    BalancedResult r = solve_balanced(A, target, opts);
    c.require(r.residual <= 1e-8, "T_d balanced solve residual");
    c.require(r.spectrum_error <= 1e-8, "T_d balanced spectrum error");
    c.require(config_distance(r.configuration, central.configuration) <= 1e-6,
              "balanced <=> central failed for the irreducible T_d action");
    // Schur checks on C_2h and D_3h symmetric lifts
    for (const char* name : {"c2h.json", "dnh_double_antiprism.json"}) {
      SymmetricAnsatz B = load_ansatz(name);
      SolveOptions o2;
      o2.starts = 8;
      o2.seed = 555;
      CriticalPoint cp = minimize(B, o2);
      SchurReport rep = schur_check(B.G(), cp.configuration);
      c.require(rep.max_commutator <= 1e-10,
                std::string(name) + ": AS != SA beyond 1e-10");
      c.require(rep.max_off_block <= 1e-10,
                std::string(name) + ": S has off-block mass in the isotypic "
                                    "basis");
    }
  });

  // ---- 9: dynamical certification ----------------------------------------------
  run_criterion("9 dynamics: homothetic <= 1e-5, rotation <= 1e-6, controls",
                [](Criterion& c) {
    Configuration triangle = load_config("lagrange_triangle.json");
    Configuration square = load_config("square.json");
    Configuration cubocta = load_config("cuboctahedron.json");
    Configuration icosi = load_config("icosidodecahedron.json");
    SymmetricAnsatz A = load_ansatz("truncated_tetrahedron.json");
    SolveOptions opts;
    opts.starts = 16;
    opts.seed = 4242;
    Configuration ttet = minimize(A, opts).configuration;

    for (const auto& [name, conf] :
         std::vector<std::pair<std::string, Configuration>>{
             {"triangle", triangle},
             {"square", square},
             {"cuboctahedron", cubocta},
             {"icosidodecahedron", icosi},
             {"truncated tetrahedron", ttet}}) {
      double dev = homothetic_test(conf, 0.1, 1e-4);
      c.require(dev <= 1e-5, name + ": homothetic deviation " +
                                 std::to_string(dev));
    }
    c.require(rotation_test(square, 0.1, 1e-4) <= 1e-6,
              "square rotation deviation");
    c.require(rotation_test(triangle, 0.1, 1e-4) <= 1e-6,
              "triangle rotation deviation");
    // negative controls
    c.require(rotation_test(square, 0.1, 1e-4, 1.1) > 1e-3,
              "perturbed omega must exceed 1e-3");
    Configuration bad = square;
    bad.points[0] *= 1.4;
    bad = centered(bad);
    double I = moment_of_inertia(bad);
    for (Vec& p : bad.points) p /= std::sqrt(I);
    c.require(homothetic_test(bad, 0.1, 1e-4) > 1e-3,
              "random-shape control must exceed 1e-3");
  });

  // ---- 10: existence robustness --------------------------------------------------
  run_criterion("10 robustness: 20 random Burnside types converge cleanly",
                [](Criterion& c) {
    const char* groups[] = {"D_3", "D_4", "D_5", "C_3",  "C_2h",
                            "D_3h", "T_d", "D_2rot", "O_h"};
    int built = 0;
    std::uint64_t gen_seed = 90210;
    while (built < 20) {
      Rng rng(gen_seed++);
      const char* gname = groups[rng.uniform_int(0, 8)];
      auto table = analyze_group(catalog_group(gname));
      std::vector<Slot> slots;
      int bodies = 0;
      int tries = rng.uniform_int(1, 3);
      for (int t = 0; t < tries; ++t) {
        int cls = rng.uniform_int(0, int(table->classes.size()) - 1);
        if (table->classes[cls].fixed_dim == 0) continue;
        if (bodies + table->classes[cls].orbit_size > 30) continue;
        int comp =
            rng.uniform_int(0, int(table->components[cls].size()) - 1);
        slots.push_back({cls, comp, rng.uniform(0.5, 2.0)});
        bodies += table->classes[cls].orbit_size;
      }
      if (slots.empty()) continue;
      SymmetricAnsatz A = make_ansatz(table, slots);
      if (A.coord_dim - int(A.gauge.cols()) < 1) continue;
      ++built;
      SolveOptions opts;
      opts.starts = 16;
      opts.seed = 1234 + built;
      try {
        CriticalPoint cp = minimize(A, opts);
        std::ostringstream id;
        id << gname << " n=" << bodies;
        c.require(cp.residual <= 1e-8, id.str() + ": residual too large");
        c.require(min_separation(cp.configuration) > 1e-3,
                  id.str() + ": bodies closer than 1e-3");
        g_certified.push_back(cp);
      } catch (const Error& e) {
        c.problems.push_back(std::string(gname) + ": " + e.what());
      }
    }
  });

  std::printf("%s: %d/10 criteria passed\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
