#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cencon/group.hpp"
#include "cencon/nbody.hpp"

namespace cencon {

/// A conjugacy class of isotropy subgroups.
struct OrbitType {
  int class_id = 0;
  Subgroup representative;   // H, one fixed representative of the class
  int fixed_dim = 0;         // dim Fix(H)
  int orbit_size = 0;        // |G| / |H|
  std::string label;         // curated for catalog groups, structural else
};

/// One connected component of the stratum of orbits with a given orbit type.
struct TopoOrbitType {
  int class_id = 0;
  int component = 0;         // 0 = unprimed, 1 = ', 2 = '' ...
  Vec representative;        // point in V°(H) with isotropy exactly H
};

/// Chamber geometry of Fix(H): walls (codim-1 intersections with other fixed
/// spaces, as unit normals in V-coordinates) and the chamber decomposition
/// with its merge under the N_G(H)-action.
struct StratumGeometry {
  Mat basis;                              // d x k orthonormal basis of Fix(H)
  std::vector<Vec> wall_normals;          // unit vectors in R^k
  std::vector<std::vector<int>> chamber_signs;  // per chamber, in {-1,+1}^w
  std::vector<Vec> chamber_reps;          // unit vectors in R^k (V-coords)
  std::vector<int> chamber_component;     // chamber -> merged component id
  int component_count = 0;

  int chamber_of(const Vec& v_coords, double tol = kGroupTol) const;
};

/// Full orbit-type analysis of a group: isotropy classes, their stratum
/// geometry and topological components. Built once, shared and immutable.
struct TypeTable {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<OrbitType> classes;
  std::vector<StratumGeometry> geometry;          // per class
  std::vector<std::vector<TopoOrbitType>> components;  // per class

  const FiniteGroup& G() const { return *group; }
  int find_class_of(const Subgroup& H) const;  // conjugacy match, -1 if none
  int class_by_label(const std::string& label) const;

  /// Component id of a point x whose isotropy is exactly the representative
  /// subgroup of class c (x must lie in Fix(H) off the walls).
  int component_of(int class_id, const Vec& x) const;
};

/// Integer combination of topological orbit types (the Gamma of a symmetric
/// configuration).
struct BurnsideType {
  // (class_id, component) -> count
  std::map<std::pair<int, int>, int> counts;

  int body_count(const TypeTable& table) const;
  bool operator==(const BurnsideType& o) const { return counts == o.counts; }
};

Subgroup isotropy_subgroup(const FiniteGroup& G, const Vec& x);

std::vector<Vec> orbit(const FiniteGroup& G, const Vec& x);

/// One OrbitType per conjugacy class of isotropy subgroups, found through the
/// intersection lattice of the fixed subspaces {Fix(g)}.
std::vector<OrbitType> enumerate_isotropy_classes(const FiniteGroup& G);

/// Full analysis: classes, stratum geometry, components, labels.
std::shared_ptr<const TypeTable> analyze_group(
    std::shared_ptr<const FiniteGroup> G);
std::shared_ptr<const TypeTable> analyze_group(const FiniteGroup& G);

/// Components of V°(H)/N_G(H) for an isotropy subgroup H. Throws NotIsotropy
/// when no point has isotropy exactly H.
std::vector<TopoOrbitType> topological_components(const TypeTable& table,
                                                  int class_id);

/// Burnside decomposition of a symmetric configuration. Throws NotSymmetric.
BurnsideType burnside_type_of(const TypeTable& table, const Configuration& C);

/// Deterministic sample from the component's chamber with norm in
/// [radius_range.first, radius_range.second]; isotropy verified exactly H.
Vec random_representative(const TypeTable& table, int class_id, int component,
                          std::pair<double, double> radius_range, Rng& rng);

}  // namespace cencon
