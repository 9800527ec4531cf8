#include "cencon/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

namespace cencon {

namespace {

// ---------------------------------------------------------------------------
// Evaluation helpers. Wall crossings and orbit collisions surface as thrown
// errors from lift; iterates that trigger them are treated as infeasible.
// ---------------------------------------------------------------------------

std::optional<double> try_U(const SymmetricAnsatz& A, const Vec& c,
                            double delta) {
  try {
    Configuration C = lift(A, c);
    if (C.size() > 1 && min_separation(C) < delta) return std::nullopt;
    return potential(C, A.exponent);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct Eval {
  double U = 0, I = 0, lambda = 0;
  Vec gU, gI, tangent;  // tangent = gU - lambda gI
  double rel_stat = 0;  // |tangent| / max(1, |gU|)
};

std::optional<Eval> evaluate(const SymmetricAnsatz& A, const Vec& c,
                             double delta) {
  try {
    Configuration C = lift(A, c);
    if (C.size() > 1 && min_separation(C) < delta) return std::nullopt;
    Eval e;
    Mat J = lift_jacobian(A);
    const int d = C.dim;
    Vec fu(C.size() * d), fi(C.size() * d);
    auto gu = grad_potential(C, A.exponent);
    auto gi = grad_inertia(C);
    for (int i = 0; i < C.size(); ++i) {
      fu.segment(i * d, d) = gu[i];
      fi.segment(i * d, d) = gi[i];
    }
    e.U = potential(C, A.exponent);
    e.I = moment_of_inertia(C);
    e.gU = J.transpose() * fu;
    e.gI = J.transpose() * fi;
    double gI2 = e.gI.squaredNorm();
    e.lambda = gI2 > 0 ? e.gU.dot(e.gI) / gI2 : 0.0;
    e.tangent = e.gU - e.lambda * e.gI;
    e.rel_stat = e.tangent.norm() / std::max(1.0, e.gU.norm());
    return e;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Tangent space of {I=1} inside the gauge complement at c: the orthogonal
// complement of span(gauge columns, gI).
Mat tangent_basis(const SymmetricAnsatz& A, const Vec& gI) {
  const int n = int(gI.size());
  Mat rows(A.gauge.cols() + 1, n);
  for (int q = 0; q < A.gauge.cols(); ++q) rows.row(q) = A.gauge.col(q);
  rows.row(A.gauge.cols()) = gI.transpose();
  Eigen::JacobiSVD<Mat> svd(rows, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12 * svd.singularValues()(0)) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

struct Classified {
  int morse_index = 0;
  int null_count = 0;
};

Classified classify(const SymmetricAnsatz& A, const Vec& c, double lambda,
                    double zero_eig_tol) {
  Classified out;
  Vec gI = reduced_inertia_grad(A, c);
  Mat T = tangent_basis(A, gI);
  if (T.cols() == 0) return out;  // rigid: nothing to classify
  Mat H = reduced_potential_hess(A, c) - lambda * reduced_inertia_hess(A);
  Mat M = T.transpose() * H * T;
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()(i);
    if (std::abs(e) <= zero_eig_tol * scale)
      ++out.null_count;
    else if (e < 0)
      ++out.morse_index;
  }
  return out;
}

CriticalKind kind_of(const Classified& c) {
  if (c.null_count > 0) return CriticalKind::Degenerate;
  return c.morse_index == 0 ? CriticalKind::Minimum : CriticalKind::Saddle;
}

// Newton iteration on the Lagrange system F(c,l) = [gU - l gI; I - 1].
// Rank-deficient systems (gauge or residual rotation directions) are solved
// in the minimal-norm least-squares sense.
std::optional<Vec> newton_polish(const SymmetricAnsatz& A, Vec c,
                                 const SolveOptions& opts, double* lambda_out,
                                 int max_newton = 60) {
  auto ev = evaluate(A, c, opts.min_separation);
  if (!ev) return std::nullopt;
  double lambda = ev->lambda;
  const int n = int(c.size());
  for (int iter = 0; iter < max_newton; ++iter) {
    Vec F(n + 1);
    F.head(n) = ev->gU - lambda * ev->gI;
    F(n) = ev->I - 1.0;
    double fnorm = F.norm();
    if (ev->rel_stat <= opts.tol_grad &&
        std::abs(ev->I - 1.0) <= opts.newton_tol) {
      if (lambda_out) *lambda_out = lambda;
      return c;
    }
    Mat K = Mat::Zero(n + 1, n + 1);
    K.topLeftCorner(n, n) =
        reduced_potential_hess(A, c) - lambda * reduced_inertia_hess(A);
    K.block(0, n, n, 1) = -ev->gI;
    K.block(n, 0, 1, n) = ev->gI.transpose();
    Vec step = K.completeOrthogonalDecomposition().solve(-F);
    double maxstep = 0.5;
    if (step.head(n).norm() > maxstep)
      step *= maxstep / step.head(n).norm();
    // Backtrack on |F|.
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      Vec c_new = c + t * step.head(n);
      double l_new = lambda + t * step(n);
      auto ev_new = evaluate(A, c_new, opts.min_separation);
      if (ev_new) {
        Vec Fn(n + 1);
        Fn.head(n) = ev_new->gU - l_new * ev_new->gI;
        Fn(n) = ev_new->I - 1.0;
        if (Fn.norm() <= (1.0 - 1e-4 * t) * fnorm || Fn.norm() < 1e-14) {
          c = c_new;
          lambda = l_new;
          ev = ev_new;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  // Converged iff the final iterate meets both targets.
  if (ev->rel_stat <= opts.tol_grad && std::abs(ev->I - 1.0) <= opts.newton_tol) {
    if (lambda_out) *lambda_out = lambda;
    return c;
  }
  return std::nullopt;
}

// Projected-gradient descent on {I=1} with the rescaling retraction.
std::optional<Vec> descend(const SymmetricAnsatz& A, Vec c,
                           const SolveOptions& opts) {
  auto retract = [&](const Vec& x) -> std::optional<Vec> {
    try {
      return project_to_sphere(A, x);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  auto start = retract(c);
  if (!start) return std::nullopt;
  c = *start;
  auto ev = evaluate(A, c, opts.min_separation);
  if (!ev) return std::nullopt;
  double step0 = 1.0;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (ev->rel_stat <= 1e-4) break;  // hand over to Newton
    Vec dir = -ev->tangent;
    double t2 = dir.squaredNorm();
    double alpha = step0;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      auto cand = retract(c + alpha * dir);
      if (cand) {
        auto u = try_U(A, *cand, opts.min_separation);
        if (u && *u <= ev->U - 1e-4 * alpha * t2) {
          c = *cand;
          auto ev_new = evaluate(A, c, opts.min_separation);
          if (!ev_new) return std::nullopt;
          ev = ev_new;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) break;  // stalled: let Newton decide
    step0 = std::min(1.0, 2.0 * alpha);  // mild step-size adaptation
  }
  return c;
}

struct StartResult {
  bool converged = false;
  Vec coords;
  double lambda = 0;
};

Vec random_start(const SymmetricAnsatz& A, Rng& rng,
                 const SolveOptions& opts) {
  Vec c(A.coord_dim);
  for (int attempt = 0; attempt < 32; ++attempt) {
    for (std::size_t i = 0; i < A.slots.size(); ++i) {
      if (A.slot_dims[i] == 0) continue;
      const Slot& s = A.slots[i];
      Vec x = random_representative(*A.types, s.class_id, s.component,
                                    {opts.radius_min, opts.radius_max}, rng);
      c.segment(A.slot_offsets[i], A.slot_dims[i]) =
          A.types->geometry[s.class_id].basis.transpose() * x;
    }
    try {
      Vec n = project_to_sphere(A, c);
      lift(A, n);
      return n;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::EmptyStratum, "could not sample a feasible start");
}

StartResult run_start(const SymmetricAnsatz& A, const SolveOptions& opts,
                      std::uint64_t start_index, bool descent_first) {
  StartResult out;
  Rng rng(opts.seed, start_index);
  Vec c;
  try {
    c = random_start(A, rng, opts);
  } catch (const Error&) {
    return out;
  }
  if (descent_first) {
    auto down = descend(A, c, opts);
    if (!down) return out;
    c = *down;
  }
  double lambda = 0;
  auto polished = newton_polish(A, c, opts, &lambda);
  if (!polished) return out;
  out.converged = true;
  out.coords = *polished;
  out.lambda = lambda;
  return out;
}

// Total number of particles in the tangent-free case: the I=1 sphere of a
// one-dimensional reduced space is a single chamber point.
bool is_rigid(const SymmetricAnsatz& A) {
  return A.coord_dim - int(A.gauge.cols()) <= 1;
}

CriticalPoint finalize(const SymmetricAnsatz& A, const Vec& c, double lambda,
                       const SolveOptions& opts) {
  CriticalPoint cp;
  cp.coords = c;
  cp.configuration = lift(A, c);
  cp.U_value = potential(cp.configuration, A.exponent);
  cp.lambda = lambda;
  cp.residual = central_residual(cp.configuration, A.exponent).residual;
  Classified cl = classify(A, c, lambda, opts.zero_eig_tol);
  cp.morse_index = cl.morse_index;
  cp.null_count = cl.null_count;
  cp.kind = kind_of(cl);
  return cp;
}

CriticalPoint solve_rigid(const SymmetricAnsatz& A, const SolveOptions& opts) {
  Rng rng(opts.seed, 0);
  Vec c = random_start(A, rng, opts);  // projected to I=1 already
  auto ev = evaluate(A, c, opts.min_separation);
  if (!ev)
    throw Error(ErrorCode::NoConvergence, "rigid shape evaluation failed");
  return finalize(A, c, ev->lambda, opts);
}

std::vector<StartResult> run_starts(const SymmetricAnsatz& A,
                                    const SolveOptions& opts,
                                    bool mix_pure_newton) {
  std::vector<StartResult> results(opts.starts);
  int workers = opts.threads > 0
                    ? opts.threads
                    : int(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(1, opts.starts));
  std::vector<std::future<void>> futs;
  for (int w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&, w]() {
      for (int s = w; s < opts.starts; s += workers) {
        bool descent_first = mix_pure_newton ? (s % 2 == 0) : true;
        results[s] = run_start(A, opts, std::uint64_t(s), descent_first);
      }
    }));
  }
  for (auto& f : futs) f.get();
  return results;
}

bool same_critical_point(const CriticalPoint& a, const CriticalPoint& b) {
  if (std::abs(a.U_value - b.U_value) > 1e-6) return false;
  return same_configuration(a.configuration, b.configuration, 1e-6);
}

std::vector<double> sorted_flat_points(const Configuration& C) {
  std::vector<std::vector<double>> rows;
  for (const Vec& p : C.points) {
    std::vector<double> r(p.data(), p.data() + p.size());
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end());
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

bool census_order(const CriticalPoint& a, const CriticalPoint& b) {
  if (std::abs(a.U_value - b.U_value) > 1e-10) return a.U_value < b.U_value;
  Fingerprint fa = fingerprint(a.configuration);
  Fingerprint fb = fingerprint(b.configuration);
  if (fa != fb) return fa < fb;
  return sorted_flat_points(a.configuration) <
         sorted_flat_points(b.configuration);
}

}  // namespace

CriticalPoint minimize(const SymmetricAnsatz& A, const SolveOptions& opts) {
  if (A.coord_dim == int(A.gauge.cols()))
    throw Error(ErrorCode::ZeroInertia,
                "ansatz has no shape freedom and no scale; nothing to solve");
  if (is_rigid(A)) return solve_rigid(A, opts);

  std::vector<StartResult> results = run_starts(A, opts, false);
  std::vector<CriticalPoint> minima;
  for (const StartResult& r : results) {
    if (!r.converged) continue;
    CriticalPoint cp = finalize(A, r.coords, r.lambda, opts);
    if (cp.morse_index == 0) minima.push_back(cp);
  }
  if (minima.empty())
    throw Error(ErrorCode::NoConvergence,
                "no start converged to a minimum on {I=1}");
  std::sort(minima.begin(), minima.end(), census_order);
  return minima.front();
}

Census find_critical_points(const SymmetricAnsatz& A,
                            const SolveOptions& opts) {
  Census census;
  census.starts_used = opts.starts;
  if (A.coord_dim == int(A.gauge.cols()))
    throw Error(ErrorCode::ZeroInertia,
                "ansatz has no shape freedom and no scale; nothing to solve");
  if (is_rigid(A)) {
    census.distinct.push_back(solve_rigid(A, opts));
    census.converged_count = 1;
    return census;
  }
  std::vector<StartResult> results = run_starts(A, opts, true);
  for (const StartResult& r : results) {
    if (!r.converged) {
      ++census.failures;
      continue;
    }
    ++census.converged_count;
    CriticalPoint cp = finalize(A, r.coords, r.lambda, opts);
    bool dup = false;
    for (const CriticalPoint& seen : census.distinct)
      if (same_critical_point(seen, cp)) {
        dup = true;
        break;
      }
    if (!dup) census.distinct.push_back(cp);
  }
  std::sort(census.distinct.begin(), census.distinct.end(), census_order);
  return census;
}

MassScanResult mass_scan(const SymmetricAnsatz& A, int slot_index,
                         const std::vector<double>& mass_values,
                         const SolveOptions& opts) {
  if (slot_index < 0 || slot_index >= int(A.slots.size()))
    throw Error(ErrorCode::InvalidInput, "mass_scan: slot index out of range");
  if (mass_values.empty())
    throw Error(ErrorCode::InvalidInput, "mass_scan: no mass values");

  MassScanResult out;
  SymmetricAnsatz current = A;
  Vec seed_coords;
  for (std::size_t step = 0; step < mass_values.size(); ++step) {
    std::vector<Slot> slots = current.slots;
    slots[slot_index].mass = mass_values[step];
    current = make_ansatz(current.types, slots, current.exponent);
    bool ok = false;
    if (step == 0) {
      try {
        CriticalPoint cp = minimize(current, opts);
        seed_coords = cp.coords;
        out.points.push_back(cp);
        out.masses.push_back(mass_values[step]);
        ok = true;
      } catch (const Error&) {
        ok = false;
      }
    } else {
      // Corrector from the previous solution; fall back to a short descent.
      double lambda = 0;
      try {
        Vec warm = project_to_sphere(current, seed_coords);
        auto polished = newton_polish(current, warm, opts, &lambda);
        if (!polished) {
          auto down = descend(current, warm, opts);
          if (down) polished = newton_polish(current, *down, opts, &lambda);
        }
        if (polished) {
          seed_coords = *polished;
          out.points.push_back(finalize(current, *polished, lambda, opts));
          out.masses.push_back(mass_values[step]);
          ok = true;
        }
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      out.completed = false;
      out.failed_index = int(step);
      return out;  // possible bifurcation; report the last good point
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Component census.
// ---------------------------------------------------------------------------

namespace {

long multiset_sequences(std::vector<double> masses) {
  std::sort(masses.begin(), masses.end());
  long count = 0;
  do {
    ++count;
  } while (std::next_permutation(masses.begin(), masses.end()));
  return count;
}

long palindromic_sequences(std::vector<double> masses) {
  std::sort(masses.begin(), masses.end());
  long count = 0;
  do {
    bool pal = true;
    for (std::size_t i = 0, j = masses.size(); i < j; ++i, --j)
      if (masses[i] != masses[j - 1]) {
        pal = false;
        break;
      }
    if (pal) ++count;
  } while (std::next_permutation(masses.begin(), masses.end()));
  return count;
}

// Component of the image of class cls under an orthogonal map phi that
// normalizes G, or -1 when it cannot be identified.
int mapped_component(const TypeTable& table, int cls, int comp,
                     const Mat& phi) {
  const FiniteGroup& G = table.G();
  Vec rep = table.components[cls][comp].representative;
  Vec y = phi * rep;
  Subgroup Hy = isotropy_subgroup(G, y);
  if (table.find_class_of(Hy) != cls) return -1;
  for (int g = 0; g < G.order(); ++g) {
    Vec z = G.mat(g) * y;
    if (isotropy_subgroup(G, z) == table.classes[cls].representative) {
      int c = table.component_of(cls, z);
      if (c >= 0) return c;
    }
  }
  return -1;
}

}  // namespace

long component_census(const SymmetricAnsatz& A) {
  const TypeTable& table = *A.types;
  const FiniteGroup& G = A.G();

  // Group slots into families by (class, component); only 1-dimensional
  // stratum components contribute orderings.
  std::map<std::pair<int, int>, std::vector<double>> families;
  for (const Slot& s : A.slots)
    if (table.classes[s.class_id].fixed_dim == 1)
      families[{s.class_id, s.component}].push_back(s.mass);

  long total = 1;
  for (auto& [key, masses] : families) total *= multiset_sequences(masses);
  if (families.empty()) return total;

  // Search for a compatible reversal phi in {+-g}: it must permute the
  // ansatz's slot multiset and reverse at least one family line.
  long best = total;
  for (int g = 0; g < G.order(); ++g) {
    for (int sign = 0; sign < 2; ++sign) {
      Mat phi = (sign ? -1.0 : 1.0) * G.mat(g);
      // Map every family; all must land on families of the ansatz.
      std::map<std::pair<int, int>, std::pair<int, int>> family_map;
      bool valid = true;
      bool any_reversal = false;
      for (const auto& [key, masses] : families) {
        int target_comp = mapped_component(table, key.first, key.second, phi);
        if (target_comp < 0) {
          valid = false;
          break;
        }
        auto target = std::make_pair(key.first, target_comp);
        auto it = families.find(target);
        if (it == families.end()) {
          valid = false;
          break;
        }
        // Mass multisets must match.
        std::vector<double> a = masses, b = it->second;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
          valid = false;
          break;
        }
        family_map[key] = target;
      }
      if (!valid) continue;
      // Non-family slots must map onto the slot multiset as well.
      std::multiset<std::tuple<int, int, long long>> before, after;
      for (const Slot& s : A.slots) {
        if (table.classes[s.class_id].fixed_dim == 1) continue;
        before.insert({s.class_id, s.component,
                       llround(s.mass * 1e12)});
        int tc = mapped_component(table, s.class_id, s.component, phi);
        if (tc < 0) {
          valid = false;
          break;
        }
        after.insert({s.class_id, tc, llround(s.mass * 1e12)});
      }
      if (!valid || before != after) continue;

      // Burnside count over {id, phi}: fixed sequences under phi.
      long fixed = 1;
      std::set<std::pair<int, int>> done;
      for (const auto& [key, masses] : families) {
        if (done.count(key)) continue;
        auto target = family_map[key];
        if (target == key) {
          // Orientation of phi on the family's line.
          const Mat& B = table.geometry[key.first].basis;
          double orient = (B.transpose() * (phi * B))(0, 0);
          if (orient < 0) {
            fixed *= palindromic_sequences(masses);
            any_reversal = true;
          } else {
            fixed *= multiset_sequences(masses);
          }
          done.insert(key);
        } else {
          // Swapped pair: fixed sequences are determined by one side.
          fixed *= multiset_sequences(masses);
          done.insert(key);
          done.insert(target);
          any_reversal = true;
        }
      }
      if (!any_reversal) continue;
      best = std::min(best, (total + fixed) / 2);
    }
  }
  return best;
}

}  // namespace cencon
