#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cencon/common.hpp"

namespace cencon {

/// A finite subgroup of O(d) stored as explicit orthogonal matrices with a
/// full Cayley table. Element 0 is always the identity. Immutable once built.
struct FiniteGroup {
  int dim = 0;
  std::string name = "custom";
  std::vector<Mat> elements;                // [0] == identity
  std::vector<std::vector<int>> cayley;     // cayley[a][b] = index of a*b
  std::vector<int> inverses;
  std::vector<int> generators;              // indices into elements

  int order() const { return int(elements.size()); }
  const Mat& mat(int i) const { return elements[i]; }
  int mul(int a, int b) const { return cayley[a][b]; }
  int inv(int a) const { return inverses[a]; }

  /// Index of the element equal to m (max-norm distance < kGroupTol), or -1.
  int index_of(const Mat& m) const;
};

/// A subgroup given by a sorted index set into a parent group's elements.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> members;  // sorted, always contains 0

  int order() const { return int(members.size()); }
  bool contains(int e) const;
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

bool is_orthogonal(const Mat& m, double tol = kGroupTol);

/// Closure of a generator set under multiplication. Throws NotOrthogonal if a
/// generator fails the orthogonality check and ClosureOverflow if the closure
/// exceeds max_order (infinite or badly conditioned input).
FiniteGroup generate_group(const std::vector<Mat>& gens, int max_order = 1024,
                           const std::string& name = "custom");

/// Standard embeddings of the named groups used by the examples:
///   C_k, D_k          in O(2)  (D_k with the reflection in the x-axis)
///   C_2h, D_nh, D_2rot, T_d, O_h, I_h   in O(3)
/// Names are parsed leniently: "D_4", "D4" and ("D", 4) are equivalent.
FiniteGroup catalog_group(const std::string& name, int param = 0);

/// Names accepted by catalog_group (parameterized entries listed as C_k etc).
std::vector<std::string> catalog_names();

Subgroup trivial_subgroup(const FiniteGroup& G);
Subgroup full_subgroup(const FiniteGroup& G);

/// Smallest subgroup containing the given element indices.
Subgroup subgroup_closure(const FiniteGroup& G, std::vector<int> seed);

/// N_G(H) = {g : gHg^-1 = H}. Always contains H.
Subgroup normalizer(const FiniteGroup& G, const Subgroup& H);

struct ConjugacyWitness {
  bool conjugate = false;
  int witness = -1;  // g with g H1 g^-1 = H2 when conjugate
};

ConjugacyWitness are_conjugate(const FiniteGroup& G, const Subgroup& H1,
                               const Subgroup& H2);

/// Conjugate subgroup g H g^-1.
Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, int g);

/// Block embedding of G < O(d) into O(e), g -> diag(g, Id). When adjoin_flip
/// is set, also adjoins diag(Id_d, -Id_{e-d}), whose fixed space is R^d x {0}.
FiniteGroup embed_group(const FiniteGroup& G, int e, bool adjoin_flip = false);

/// Orthonormal basis (d x k) of Fix(g) = ker(g - Id).
Mat fixed_space_of_element(const Mat& g);

/// Orthonormal basis of Fix(H) = the common fixed space of all h in H.
Mat fixed_space(const FiniteGroup& G, const Subgroup& H);

}  // namespace cencon
