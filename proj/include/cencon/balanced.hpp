#pragma once

#include <vector>

#include "cencon/solver.hpp"

namespace cencon {

/// Target inertia spectrum: d non-negative eigenvalues sorted descending.
struct SpectrumTarget {
  Vec sigma;

  /// p_k = sum_j sigma_j^k for k = 1..d. The constraint tr(S^k) = p_k pins
  /// the spectrum smoothly even at repeated eigenvalues.
  Vec power_sums() const;
};

/// Result of the symmetric-multiplier test grad_i U + m_i B x_i = 0. The sign
/// convention makes B = U * Id at a central configuration with I = 1.
struct BalancedResult {
  Configuration configuration;
  Mat B;                      // symmetric d x d multiplier
  double residual = 0.0;      // max_i |grad_i U + m_i B x_i| / |grad U|
  double spectrum_error = 0.0;  // vs. a target spectrum when one was given
  double commutation = 0.0;   // |BS - SB| / (|B||S|) diagnostic
  bool is_central = false;    // B within 1e-8 of a scalar matrix
  bool degenerate = false;    // least-squares system was rank-deficient
};

struct IsotypicBlock {
  Mat basis;          // d x dim(E_j), orthonormal
  int irrep_dim = 0;  // dim W_j
  int multiplicity = 0;  // d_j
  bool real_type = true;  // false for complex/quaternionic irreducibles
};

struct IsotypicDecomposition {
  std::vector<IsotypicBlock> blocks;
  int total_dim() const;
};

/// Least-squares multiplier fit at a fixed configuration (no solving).
/// Rank-deficient geometry (all points on a line through the origin in d>=2)
/// sets the degenerate flag and returns the minimal-norm B.
BalancedResult balanced_residual(const Configuration& C,
                                 double exponent = 1.0);

/// Critical point of reduced U subject to the inertia-spectrum constraints
/// tr(S^k) = p_k, via augmented-Lagrangian minimization plus a Newton polish.
/// Throws InfeasibleSpectrum when no lift of the ansatz attains the target
/// spectrum, NoConvergence when every start fails.
BalancedResult solve_balanced(const SymmetricAnsatz& A,
                              const SpectrumTarget& target,
                              const SolveOptions& opts);

/// Isotypic decomposition of R^d under G, computed from the commutant: the
/// simultaneous eigenspaces of a generic symmetric matrix commuting with G,
/// merged into isotypic classes.
IsotypicDecomposition isotypic_decomposition(const FiniteGroup& G);

struct SchurReport {
  double max_commutator = 0.0;   // max_g |gS - Sg|
  double max_off_block = 0.0;    // S in the isotypic basis, off-block mass
  std::vector<double> block_inertia;      // I_j = trace of the j-th block
  double max_scalar_deviation = 0.0;      // over multiplicity-1 real blocks
};

/// Verifies AS = SA, the block structure of S in the isotypic basis, and
/// scalar blocks where the multiplicity is one. Throws NotSymmetric.
SchurReport schur_check(const FiniteGroup& G, const Configuration& C);

/// I_j = sum_i m_i |pi_j x_i|^2; sums to I(C).
std::vector<double> isotypic_inertia(const Configuration& C,
                                     const IsotypicDecomposition& D);

}  // namespace cencon
