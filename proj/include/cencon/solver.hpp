#pragma once

#include <cstdint>
#include <vector>

#include "cencon/reduction.hpp"

namespace cencon {

struct SolveOptions {
  double tol_grad = 1e-10;      // relative reduced stationarity target
  int max_iters = 5000;         // descent iteration cap per start
  int starts = 64;
  std::uint64_t seed = 12345;
  double min_separation = 1e-6;  // delta: restart when bodies get closer
  double newton_tol = 1e-12;     // |I - 1| target in the Newton polish
  double zero_eig_tol = 1e-6;    // relative null-eigenvalue threshold
  double radius_min = 0.4;       // start sampling radii
  double radius_max = 1.4;
  int threads = 0;               // 0 = hardware concurrency
};

enum class CriticalKind { Minimum, Saddle, Degenerate };

struct CriticalPoint {
  Configuration configuration;  // centered, I = 1
  Vec coords;                   // reduced coordinates
  double U_value = 0.0;
  double lambda = 0.0;
  double residual = 0.0;        // full-space central residual
  int morse_index = 0;          // negatives of the reduced bordered Hessian
  int null_count = 0;           // eigenvalues within the null threshold
  CriticalKind kind = CriticalKind::Minimum;
};

struct Census {
  std::vector<CriticalPoint> distinct;
  int starts_used = 0;
  int converged_count = 0;
  int failures = 0;
};

/// Constrained minimization of reduced U on {I = 1}: projected gradient
/// descent with Armijo backtracking and the rescaling retraction, then a
/// Newton polish on the Lagrange system. Multi-start; the best minimum is
/// returned. Throws NoConvergence when every start fails.
CriticalPoint minimize(const SymmetricAnsatz& A, const SolveOptions& opts);

/// Randomized Newton census of the critical points of U on {I = 1} in the
/// reduced space, deduplicated by configuration identity (two entries are the
/// same only when they are the same point set with the same masses).
Census find_critical_points(const SymmetricAnsatz& A,
                            const SolveOptions& opts);

struct MassScanResult {
  std::vector<CriticalPoint> points;  // one per converged mass value
  std::vector<double> masses;
  bool completed = true;
  int failed_index = -1;  // first mass index that failed to reconverge
};

/// Predictor-corrector continuation in one slot's mass: each solution seeds
/// the next solve.
MassScanResult mass_scan(const SymmetricAnsatz& A, int slot_index,
                         const std::vector<double>& mass_values,
                         const SolveOptions& opts);

/// Number of connected components of the configuration space of the ansatz's
/// Burnside type, counted up to congruence: the product over 1-dimensional
/// stratum components of the number of mass orderings, identified under a
/// compatible orientation-reversing symmetry when one exists. Strata of
/// dimension >= 2 are connected and contribute a factor 1.
long component_census(const SymmetricAnsatz& A);

}  // namespace cencon
