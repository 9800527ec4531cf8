#include "cencon/balanced.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

namespace cencon {

Vec SpectrumTarget::power_sums() const {
  const int d = int(sigma.size());
  Vec p(d);
  for (int k = 1; k <= d; ++k) {
    double s = 0;
    for (int j = 0; j < d; ++j) s += std::pow(sigma(j), k);
    p(k - 1) = s;
  }
  return p;
}

int IsotypicDecomposition::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += int(b.basis.cols());
  return n;
}

// ---------------------------------------------------------------------------
// Multiplier fit.
// ---------------------------------------------------------------------------

BalancedResult balanced_residual(const Configuration& C, double exponent) {
  const int d = C.dim, n = C.size();
  if (moment_of_inertia(C) <= 0)
    throw Error(ErrorCode::ZeroInertia, "balanced_residual: I(C) = 0");

  auto gu = grad_potential(C, exponent);
  // Unknowns: upper triangle of B, q = d(d+1)/2.
  const int q = d * (d + 1) / 2;
  Mat M = Mat::Zero(n * d, q);
  Vec rhs(n * d);
  auto col = [d](int r, int s) {  // r <= s
    return r * d - r * (r - 1) / 2 + (s - r);
  };
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < d; ++r) {
      rhs(i * d + r) = -gu[i](r);
      for (int s = 0; s < d; ++s) {
        int c = r <= s ? col(r, s) : col(s, r);
        M(i * d + r, c) += C.masses[i] * C.points[i](s);
      }
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(M);
  Vec b = cod.solve(rhs);

  BalancedResult out;
  out.configuration = C;
  out.degenerate = cod.rank() < q;
  out.B = Mat::Zero(d, d);
  for (int r = 0; r < d; ++r)
    for (int s = r; s < d; ++s) {
      out.B(r, s) = b(col(r, s));
      out.B(s, r) = b(col(r, s));
    }

  double grad_norm = 0;
  for (const Vec& g : gu) grad_norm += g.squaredNorm();
  grad_norm = std::sqrt(grad_norm);
  double worst = 0;
  for (int i = 0; i < n; ++i)
    worst = std::max(
        worst, (gu[i] + C.masses[i] * out.B * C.points[i]).norm());
  out.residual = worst / std::max(1e-300, grad_norm);

  Mat S = inertia_matrix(C).S;
  double bs = (out.B * S - S * out.B).cwiseAbs().maxCoeff();
  double scale = std::max(1e-300, out.B.cwiseAbs().maxCoeff() *
                                      S.cwiseAbs().maxCoeff());
  out.commutation = bs / scale;

  // Central iff a *scalar* multiplier fits as well as the optimal one. The
  // minimal-norm B from a rank-deficient fit (planar or collinear geometry)
  // zeroes unconstrained entries, so matrix closeness to scalar would
  // misreport those cases.
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    num -= gu[i].dot(C.masses[i] * C.points[i]);
    den += C.masses[i] * C.masses[i] * C.points[i].squaredNorm();
  }
  double b_scalar = den > 0 ? num / den : 0.0;
  double worst_scalar = 0;
  for (int i = 0; i < n; ++i)
    worst_scalar = std::max(
        worst_scalar,
        (gu[i] + C.masses[i] * b_scalar * C.points[i]).norm());
  worst_scalar /= std::max(1e-300, grad_norm);
  out.is_central = worst_scalar <= out.residual + 1e-8;
  return out;
}

// ---------------------------------------------------------------------------
// Isotypic decomposition via the commutant.
// ---------------------------------------------------------------------------

namespace {

// Basis of {A : gA = Ag for all generators g}, A symmetric (sym = true) or
// arbitrary (sym = false).
std::vector<Mat> commutant_basis(const FiniteGroup& G, bool sym,
                                 const Mat* restrict_to = nullptr) {
  const int d = G.dim;
  std::vector<int> gens = G.generators;
  if (gens.empty())
    for (int g = 1; g < G.order(); ++g) gens.push_back(g);
  if (gens.empty()) gens.push_back(0);

  // Parameterize A: symmetric -> upper triangle; general -> all entries.
  const int q = sym ? d * (d + 1) / 2 : d * d;
  auto unpack = [&](const Vec& v) {
    Mat A(d, d);
    if (sym) {
      int idx = 0;
      for (int r = 0; r < d; ++r)
        for (int s = r; s < d; ++s) {
          A(r, s) = v(idx);
          A(s, r) = v(idx);
          ++idx;
        }
    } else {
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) A(r, s) = v(r * d + s);
    }
    return A;
  };

  Mat sys(int(gens.size()) * d * d + (restrict_to ? d * d : 0), q);
  for (int c = 0; c < q; ++c) {
    Vec e = Vec::Zero(q);
    e(c) = 1;
    Mat A = unpack(e);
    int row = 0;
    for (int g : gens) {
      Mat R = G.mat(g) * A - A * G.mat(g);
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) sys(row++, c) = R(r, s);
    }
    if (restrict_to) {
      // Require A supported on the block: (I-P) A = 0 and A (I-P) = 0 is
      // equivalent to A = P A P; enforce A - P A P = 0.
      Mat P = (*restrict_to) * restrict_to->transpose();
      Mat R = A - P * A * P;
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) sys(row++, c) = R(r, s);
    }
  }
  Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
  if (svd.singularValues()(0) < 1e-12) rank = 0;  // zero system
  std::vector<Mat> basis;
  for (int i = rank; i < q; ++i) basis.push_back(unpack(svd.matrixV().col(i)));
  return basis;
}

}  // namespace

IsotypicDecomposition isotypic_decomposition(const FiniteGroup& G) {
  const int d = G.dim;
  std::vector<Mat> sym_comm = commutant_basis(G, true);

  IsotypicDecomposition out;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(911 + attempt);
    Mat M = Mat::Zero(d, d);
    for (const Mat& A : sym_comm) M += rng.uniform(0.5, 2.0) * A;
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    Vec ev = es.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

    // Group eigenvalues into summands.
    std::vector<Mat> summands;
    int i = 0;
    while (i < d) {
      int j = i;
      while (j + 1 < d && std::abs(ev(j + 1) - ev(i)) <= 1e-7 * scale) ++j;
      summands.push_back(es.eigenvectors().middleCols(i, j - i + 1));
      i = j + 1;
    }
    // Verify each summand is G-invariant; a non-generic draw merges blocks.
    bool ok = true;
    for (const Mat& E : summands) {
      Mat P = E * E.transpose();
      for (int gi : G.generators)
        if ((G.mat(gi) * P - P * G.mat(gi)).cwiseAbs().maxCoeff() > 1e-7) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (!ok) continue;

    // Merge summands connected by the commutant into isotypic blocks.
    const int ns = int(summands.size());
    std::vector<int> parent(ns);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int a = 0; a < ns; ++a)
      for (int b = a + 1; b < ns; ++b)
        for (const Mat& A : sym_comm) {
          if ((summands[b].transpose() * A * summands[a])
                  .cwiseAbs()
                  .maxCoeff() > 1e-7) {
            parent[find(b)] = find(a);
            break;
          }
        }

    out.blocks.clear();
    for (int a = 0; a < ns; ++a) {
      if (find(a) != a) continue;
      std::vector<int> group;
      for (int b = 0; b < ns; ++b)
        if (find(b) == a) group.push_back(b);
      int cols = 0;
      for (int b : group) cols += int(summands[b].cols());
      Mat basis(d, cols);
      int off = 0;
      for (int b : group) {
        basis.middleCols(off, summands[b].cols()) = summands[b];
        off += int(summands[b].cols());
      }
      IsotypicBlock blk;
      blk.basis = basis;
      blk.multiplicity = int(group.size());
      blk.irrep_dim = cols / blk.multiplicity;
      // Real type iff the full commutant on this block has dimension m^2.
      std::vector<Mat> full = commutant_basis(G, false, &basis);
      blk.real_type =
          int(full.size()) == blk.multiplicity * blk.multiplicity;
      out.blocks.push_back(blk);
    }
    return out;
  }
  throw Error(ErrorCode::DegenerateGeometry,
              "isotypic decomposition failed to separate blocks");
}

SchurReport schur_check(const FiniteGroup& G, const Configuration& C) {
  if (C.dim != G.dim)
    throw Error(ErrorCode::SizeMismatch, "schur_check: dim mismatch");
  {
    // reuse the reduction-module check indirectly: configuration must be
    // invariant under every group element
    double scale = 0;
    for (const Vec& p : C.points) scale = std::max(scale, p.norm());
    for (int g = 0; g < G.order(); ++g)
      if (!same_configuration(act(G.mat(g), C), C, 1e-8 * (1 + scale)))
        throw Error(ErrorCode::NotSymmetric,
                    "schur_check: configuration is not G-symmetric");
  }

  SchurReport rep;
  Mat S = inertia_matrix(C).S;
  for (int g = 0; g < G.order(); ++g)
    rep.max_commutator = std::max(
        rep.max_commutator,
        (G.mat(g) * S - S * G.mat(g)).cwiseAbs().maxCoeff());

  IsotypicDecomposition D = isotypic_decomposition(G);
  for (std::size_t a = 0; a < D.blocks.size(); ++a) {
    const Mat& Ea = D.blocks[a].basis;
    for (std::size_t b = 0; b < D.blocks.size(); ++b) {
      if (a == b) continue;
      rep.max_off_block =
          std::max(rep.max_off_block,
                   (Ea.transpose() * S * D.blocks[b].basis)
                       .cwiseAbs()
                       .maxCoeff());
    }
    Mat Sa = Ea.transpose() * S * Ea;
    rep.block_inertia.push_back(Sa.trace());
    if (D.blocks[a].multiplicity == 1 && D.blocks[a].real_type) {
      int w = int(Sa.rows());
      Mat dev = Sa - (Sa.trace() / w) * Mat::Identity(w, w);
      rep.max_scalar_deviation =
          std::max(rep.max_scalar_deviation, dev.cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

std::vector<double> isotypic_inertia(const Configuration& C,
                                     const IsotypicDecomposition& D) {
  if (D.total_dim() != C.dim)
    throw Error(ErrorCode::SizeMismatch, "isotypic_inertia: dim mismatch");
  std::vector<double> out;
  for (const auto& blk : D.blocks) {
    double I = 0;
    for (int i = 0; i < C.size(); ++i)
      I += C.masses[i] * (blk.basis.transpose() * C.points[i]).squaredNorm();
    out.push_back(I);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum-constrained solve.
// ---------------------------------------------------------------------------

namespace {

// Gradient of tr(S^k) in reduced coordinates.
Vec constraint_grad(const SymmetricAnsatz& A, const Configuration& C,
                    const Mat& J, const Mat& S, int k) {
  const int d = C.dim;
  Mat Sk = Mat::Identity(d, d);
  for (int p = 0; p < k - 1; ++p) Sk = Sk * S;
  Vec full(C.size() * d);
  for (int i = 0; i < C.size(); ++i)
    full.segment(i * d, d) = 2.0 * k * C.masses[i] * (Sk * C.points[i]);
  return J.transpose() * full;
}

struct ConstraintEval {
  double U = 0;
  Vec gU;
  Vec c;                 // scaled constraint values
  std::vector<Vec> gc;   // scaled constraint gradients
};

std::optional<ConstraintEval> eval_constrained(const SymmetricAnsatz& A,
                                               const Vec& coords,
                                               const Vec& p_targets,
                                               const Vec& scales,
                                               double delta) {
  try {
    Configuration C = lift(A, coords);
    if (C.size() > 1 && min_separation(C) < delta) return std::nullopt;
    ConstraintEval e;
    Mat J = lift_jacobian(A);
    const int d = C.dim;
    e.U = potential(C, A.exponent);
    Vec fu(C.size() * d);
    auto gu = grad_potential(C, A.exponent);
    for (int i = 0; i < C.size(); ++i) fu.segment(i * d, d) = gu[i];
    e.gU = J.transpose() * fu;
    Mat S = inertia_matrix(C).S;
    e.c = Vec(p_targets.size());
    for (int k = 1; k <= p_targets.size(); ++k) {
      Mat Sk = Mat::Identity(d, d);
      for (int p = 0; p < k; ++p) Sk = Sk * S;
      e.c(k - 1) = (Sk.trace() - p_targets(k - 1)) / scales(k - 1);
      e.gc.push_back(constraint_grad(A, C, J, S, k) / scales(k - 1));
    }
    return e;
  } catch (const Error&) {
    return std::nullopt;
  }
}

double spectrum_error_of(const Configuration& C, const SpectrumTarget& t) {
  Vec spec = inertia_matrix(C).spectrum;
  double p1 = t.sigma.sum();
  double worst = 0;
  for (int j = 0; j < spec.size(); ++j)
    worst = std::max(worst, std::abs(spec(j) - t.sigma(j)));
  return worst / (1.0 + p1);
}

Vec balanced_random_start(const SymmetricAnsatz& A, Rng& rng, double p1) {
  Vec c(A.coord_dim);
  for (int attempt = 0; attempt < 32; ++attempt) {
    for (std::size_t i = 0; i < A.slots.size(); ++i) {
      if (A.slot_dims[i] == 0) continue;
      const Slot& s = A.slots[i];
      Vec x = random_representative(*A.types, s.class_id, s.component,
                                    {0.4, 1.4}, rng);
      c.segment(A.slot_offsets[i], A.slot_dims[i]) =
          A.types->geometry[s.class_id].basis.transpose() * x;
    }
    try {
      // scale so tr(S) = I matches p1
      double I = reduced_inertia(A, c);
      if (I <= 1e-12) continue;
      Vec scaled = c * std::sqrt(p1 / I);
      lift(A, scaled);
      return scaled;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::EmptyStratum, "could not sample a feasible start");
}

// Augmented-Lagrangian descent followed by a Newton polish on the KKT
// system. Returns coords on success.
std::optional<Vec> solve_balanced_start(const SymmetricAnsatz& A,
                                        const SpectrumTarget& target,
                                        const SolveOptions& opts,
                                        std::uint64_t start_index) {
  Rng rng(opts.seed, start_index);
  const Vec p = target.power_sums();
  const int nc = int(p.size());
  Vec scales(nc);
  for (int k = 0; k < nc; ++k) scales(k) = std::max(1.0, std::abs(p(k)));

  Vec c;
  try {
    c = balanced_random_start(A, rng, p(0));
  } catch (const Error&) {
    return std::nullopt;
  }

  Vec nu = Vec::Zero(nc);
  double mu = 10.0;
  auto ev = eval_constrained(A, c, p, scales, opts.min_separation);
  if (!ev) return std::nullopt;

  for (int outer = 0; outer < 25; ++outer) {
    // Inner: Armijo descent on the augmented Lagrangian.
    auto L_of = [&](const ConstraintEval& e) {
      double L = e.U;
      for (int k = 0; k < nc; ++k)
        L += nu(k) * e.c(k) + 0.5 * mu * e.c(k) * e.c(k);
      return L;
    };
    double step0 = 0.2;
    for (int iter = 0; iter < 400; ++iter) {
      Vec g = ev->gU;
      for (int k = 0; k < nc; ++k) g += (nu(k) + mu * ev->c(k)) * ev->gc[k];
      if (g.norm() < 1e-9 * std::max(1.0, ev->gU.norm())) break;
      double L0 = L_of(*ev);
      double alpha = step0;
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt) {
        auto cand = eval_constrained(A, c - alpha * g, p, scales,
                                     opts.min_separation);
        if (cand && L_of(*cand) <= L0 - 1e-4 * alpha * g.squaredNorm()) {
          c -= alpha * g;
          ev = cand;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
      step0 = std::min(0.5, 2 * alpha);
    }
    double cnorm = ev->c.norm();
    nu += mu * ev->c;
    if (cnorm > 1e-10) mu = std::min(1e8, mu * 2.0);
    if (cnorm < 1e-12) break;
  }

  // Newton polish on the KKT system F = [gU + sum nu_k gc_k; c] with a
  // finite-difference Jacobian of the gradient block.
  const int n = A.coord_dim;
  for (int iter = 0; iter < 60; ++iter) {
    ev = eval_constrained(A, c, p, scales, opts.min_separation);
    if (!ev) return std::nullopt;
    Vec F(n + nc);
    Vec stat = ev->gU;
    for (int k = 0; k < nc; ++k) stat += nu(k) * ev->gc[k];
    F.head(n) = stat;
    F.tail(nc) = ev->c;
    if (stat.norm() <= 1e-11 * std::max(1.0, ev->gU.norm()) &&
        ev->c.cwiseAbs().maxCoeff() <= 1e-12)
      return c;
    Mat K = Mat::Zero(n + nc, n + nc);
    const double h = 1e-6;
    for (int j = 0; j < n; ++j) {
      Vec cp = c, cm = c;
      cp(j) += h;
      cm(j) -= h;
      auto ep = eval_constrained(A, cp, p, scales, opts.min_separation);
      auto em = eval_constrained(A, cm, p, scales, opts.min_separation);
      if (!ep || !em) return std::nullopt;
      Vec sp = ep->gU, sm = em->gU;
      for (int k = 0; k < nc; ++k) {
        sp += nu(k) * ep->gc[k];
        sm += nu(k) * em->gc[k];
      }
      K.block(0, j, n, 1) = (sp - sm) / (2 * h);
    }
    for (int k = 0; k < nc; ++k) {
      K.block(0, n + k, n, 1) = ev->gc[k];
      K.block(n + k, 0, 1, n) = ev->gc[k].transpose();
    }
    Vec step = K.completeOrthogonalDecomposition().solve(-F);
    if (step.head(n).norm() > 0.25) step *= 0.25 / step.head(n).norm();
    double fnorm = F.norm();
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      Vec c_new = c + t * step.head(n);
      Vec nu_new = nu + t * step.tail(nc);
      auto e2 = eval_constrained(A, c_new, p, scales, opts.min_separation);
      if (e2) {
        Vec F2(n + nc);
        Vec st2 = e2->gU;
        for (int k = 0; k < nc; ++k) st2 += nu_new(k) * e2->gc[k];
        F2.head(n) = st2;
        F2.tail(nc) = e2->c;
        if (F2.norm() <= (1.0 - 1e-4 * t) * fnorm || F2.norm() < 1e-14) {
          c = c_new;
          nu = nu_new;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

BalancedResult solve_balanced(const SymmetricAnsatz& A,
                              const SpectrumTarget& target,
                              const SolveOptions& opts) {
  if (int(target.sigma.size()) != A.G().dim)
    throw Error(ErrorCode::InvalidInput,
                "target spectrum size must match the dimension");
  for (int j = 0; j + 1 < target.sigma.size(); ++j)
    if (target.sigma(j) < target.sigma(j + 1) - 1e-12)
      throw Error(ErrorCode::InvalidInput,
                  "target spectrum must be sorted descending");

  // Feasibility pre-solve: minimize the spectrum error over a few starts.
  double best_feas = 1e300;
  {
    const Vec p = target.power_sums();
    Vec scales(p.size());
    for (int k = 0; k < p.size(); ++k) scales(k) = std::max(1.0, std::abs(p(k)));
    for (int s = 0; s < std::max(4, opts.starts / 4); ++s) {
      Rng rng(opts.seed ^ 0xfeedULL, s);
      Vec c;
      try {
        c = balanced_random_start(A, rng, p(0));
      } catch (const Error&) {
        continue;
      }
      // Gauss-Newton on the constraint residual alone.
      for (int iter = 0; iter < 200; ++iter) {
        auto ev = eval_constrained(A, c, p, scales, opts.min_separation);
        if (!ev) break;
        if (ev->c.norm() < 1e-12) break;
        Mat Jc(ev->c.size(), A.coord_dim);
        for (int k = 0; k < ev->c.size(); ++k)
          Jc.row(k) = ev->gc[k].transpose();
        Vec step = Jc.completeOrthogonalDecomposition().solve(-ev->c);
        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 20; ++bt) {
          auto e2 = eval_constrained(A, c + t * step, p, scales,
                                     opts.min_separation);
          if (e2 && e2->c.norm() < ev->c.norm()) {
            c += t * step;
            moved = true;
            break;
          }
          t *= 0.5;
        }
        if (!moved) break;
      }
      try {
        best_feas = std::min(best_feas,
                             spectrum_error_of(lift(A, c), target));
      } catch (const Error&) {
      }
      if (best_feas < 1e-8) break;
    }
    if (best_feas > 1e-6)
      throw Error(ErrorCode::InfeasibleSpectrum,
                  "no lift of the ansatz attains the target spectrum");
  }

  std::optional<BalancedResult> best;
  for (int s = 0; s < opts.starts; ++s) {
    auto coords = solve_balanced_start(A, target, opts, std::uint64_t(s));
    if (!coords) continue;
    Configuration C = lift(A, *coords);
    BalancedResult r = balanced_residual(C, A.exponent);
    r.spectrum_error = spectrum_error_of(C, target);
    if (r.residual > 1e-8 || r.spectrum_error > 1e-8) continue;
    if (!best || potential(C, A.exponent) <
                     potential(best->configuration, A.exponent))
      best = r;
  }
  if (!best)
    throw Error(ErrorCode::NoConvergence,
                "no start converged to a balanced configuration");
  return *best;
}

}  // namespace cencon
