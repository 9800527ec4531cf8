#pragma once

#include <array>
#include <string>
#include <vector>

#include "cencon/common.hpp"

namespace cencon {

/// n points with positive masses. Storage is ordered for convenience, but all
/// public equality semantics are order-free (a configuration is a set of
/// points with a mass function).
struct Configuration {
  int dim = 0;
  std::vector<Vec> points;
  std::vector<double> masses;
  std::vector<std::string> labels;  // optional, carried through I/O

  int size() const { return int(points.size()); }
  double total_mass() const;
};

/// Pairwise distance below which evaluation raises CollisionSingularity.
inline constexpr double kCollisionTol = 1e-12;

double min_separation(const Configuration& C);

/// U = sum_{i<j} m_i m_j / r_ij^exponent  (gravitational constant 1).
double potential(const Configuration& C, double exponent = 1.0);

/// I = sum_i m_i |x_i|^2.
double moment_of_inertia(const Configuration& C);

std::vector<Vec> grad_potential(const Configuration& C, double exponent = 1.0);
std::vector<Vec> grad_inertia(const Configuration& C);

/// Full (nd x nd) Hessian of U in the flattened coordinates (body-major).
Mat hessian_potential(const Configuration& C, double exponent = 1.0);

Vec barycenter(const Configuration& C);

/// Copy translated so the barycenter is at the origin.
Configuration centered(const Configuration& C);

/// g . C = {g x_i} with masses carried along.
Configuration act(const Mat& g, const Configuration& C);

struct InertiaData {
  Mat S;                      // d x d, sum_i m_i x_i x_i^T
  Vec spectrum;               // eigenvalues sorted descending
  std::vector<int> multiplicities;  // merged at 1e-9 * trace
};

InertiaData inertia_matrix(const Configuration& C);

struct CentralResidual {
  double lambda = 0.0;    // least-squares multiplier <gradU, gradI>/|gradI|^2
  double residual = 0.0;  // |gradU - lambda gradI| / |gradU|
};

/// First-order test of the central-configuration condition gradU = lambda
/// gradI. Requires I(C) > 0.
CentralResidual central_residual(const Configuration& C,
                                 double exponent = 1.0);

/// Sorted list of (m_lo, m_hi, r_ij): invariant under isometries and
/// reordering, used as the congruence fingerprint.
using Fingerprint = std::vector<std::array<double, 3>>;

Fingerprint fingerprint(const Configuration& C);

/// L-infinity distance between sorted fingerprints; 0 for congruent
/// configurations. Throws SizeMismatch for different body counts.
double config_distance(const Configuration& A, const Configuration& B);

/// Unordered mass-preserving equality of the two point sets (the paper's
/// configuration equality: same subset of R^d with the same mass function).
bool same_configuration(const Configuration& A, const Configuration& B,
                        double tol = 1e-6);

}  // namespace cencon
