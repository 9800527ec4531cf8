#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cencon/strata.hpp"

namespace cencon {

/// One orbit of the ansatz: a topological orbit type plus the per-particle
/// mass (every particle in the orbit has the same mass).
struct Slot {
  int class_id = 0;
  int component = 0;
  double mass = 1.0;
};

/// The symmetry-reduced search space: one representative coordinate block per
/// orbit, each confined to its component of V°(H). Immutable once built.
struct SymmetricAnsatz {
  std::shared_ptr<const TypeTable> types;
  std::vector<Slot> slots;
  double exponent = 1.0;

  // Derived, fixed at construction:
  std::vector<int> slot_dims;          // fixed_dim per slot
  std::vector<int> slot_offsets;       // offset of each slot's coords
  int coord_dim = 0;                   // sum of slot_dims
  int body_count = 0;                  // sum of orbit sizes
  std::vector<std::vector<int>> cosets;  // per slot: coset reps of H in G
  Mat gauge;                           // coord_dim x q basis of the gauge
                                       // directions (translations along
                                       // Fix(G) that the centered lift kills)

  const FiniteGroup& G() const { return types->G(); }
  const OrbitType& slot_type(int i) const {
    return types->classes[slots[i].class_id];
  }
  Eigen::VectorBlock<const Vec> slot_coords(const Vec& c, int i) const {
    return c.segment(slot_offsets[i], slot_dims[i]);
  }
};

/// Validates slots (at most one fixed_dim-0 slot, component indices in range,
/// positive masses) and precomputes lift structure.
SymmetricAnsatz make_ansatz(std::shared_ptr<const TypeTable> types,
                            std::vector<Slot> slots, double exponent = 1.0);

/// Lifted configuration: the union of the slot orbits with per-particle
/// masses, translated to the barycenter when Fix(G) != {0}. Body order is
/// deterministic (slot-major, coset order). Throws OrbitCollision when two
/// lifted points coincide and StratumViolation when a representative left its
/// stratum component.
Configuration lift(const SymmetricAnsatz& A, const Vec& coords);

/// Jacobian of the (centered) lift, (body_count*dim) x coord_dim. The lift is
/// linear, so this is constant.
Mat lift_jacobian(const SymmetricAnsatz& A);

double reduced_potential(const SymmetricAnsatz& A, const Vec& coords);
double reduced_inertia(const SymmetricAnsatz& A, const Vec& coords);
Vec reduced_potential_grad(const SymmetricAnsatz& A, const Vec& coords);
Vec reduced_inertia_grad(const SymmetricAnsatz& A, const Vec& coords);
Mat reduced_potential_hess(const SymmetricAnsatz& A, const Vec& coords);
Mat reduced_inertia_hess(const SymmetricAnsatz& A);

/// Rescale coords so reduced_inertia == 1 (valid: I is homogeneous of degree
/// 2 and scaling preserves strata). Throws ZeroInertia.
Vec project_to_sphere(const SymmetricAnsatz& A, const Vec& coords);

/// True iff act(g, C) equals C (unordered, mass-preserving) for every
/// generator; returns the failing generator index otherwise.
struct SymmetryCheck {
  bool symmetric = true;
  int failing_generator = -1;
};
SymmetryCheck check_symmetric(const FiniteGroup& G, const Configuration& C);

/// Burnside type induced by the ansatz slots.
BurnsideType ansatz_burnside(const SymmetricAnsatz& A);

}  // namespace cencon
