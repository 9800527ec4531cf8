#include "cencon/strata.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace cencon {

namespace {

// Orthonormalize columns, dropping near-null directions.
Mat orthonormalize(const Mat& m) {
  if (m.cols() == 0) return m;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat projector(const Mat& basis) {
  if (basis.cols() == 0) return Mat::Zero(basis.rows(), basis.rows());
  return basis * basis.transpose();
}

// Intersection of span(A) and span(B), both orthonormal.
Mat intersect_spans(const Mat& A, const Mat& B) {
  if (A.cols() == 0 || B.cols() == 0) return Mat(A.rows(), 0);
  Mat m = (Mat::Identity(A.rows(), A.rows()) - projector(B)) * A;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  if (rank == A.cols()) return Mat(A.rows(), 0);
  return orthonormalize(A * svd.matrixV().rightCols(A.cols() - rank));
}

bool fixes_subspace(const Mat& g, const Mat& basis) {
  if (basis.cols() == 0) return true;
  return ((g * basis) - basis).cwiseAbs().maxCoeff() < kGroupTol;
}

// ---------------------------------------------------------------------------
// Chamber enumeration for a central hyperplane arrangement given by unit
// normals in R^k. Returns one interior representative per chamber. Exact for
// any k: a chamber of a non-empty arrangement has a facet on some wall, and
// that facet is a chamber of the induced arrangement on the wall.
// ---------------------------------------------------------------------------

std::vector<int> sign_vector(const std::vector<Vec>& normals, const Vec& x,
                             double tol = 1e-12) {
  std::vector<int> s(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    double v = normals[i].dot(x);
    s[i] = (v > tol) ? 1 : (v < -tol ? -1 : 0);
  }
  return s;
}

void dedup_directions(std::vector<Vec>& dirs) {
  std::vector<Vec> out;
  for (const Vec& v : dirs) {
    bool dup = false;
    for (const Vec& w : out)
      if ((v - w).norm() < 1e-9 || (v + w).norm() < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(v);
  }
  dirs.swap(out);
}

std::vector<Vec> chamber_representatives(const std::vector<Vec>& normals,
                                         int k) {
  if (k == 0) return {};
  if (normals.empty()) {
    Vec e = Vec::Zero(k);
    e(0) = 1.0;
    return {e};
  }
  if (k == 1) {
    Vec p(1), m(1);
    p << 1.0;
    m << -1.0;
    return {p, m};
  }

  std::vector<Vec> reps;
  auto push_unique = [&](const Vec& x) {
    std::vector<int> sx = sign_vector(normals, x);
    for (int s : sx)
      if (s == 0) return;  // landed on a wall; caller candidates cover others
    for (const Vec& r : reps)
      if (sign_vector(normals, r) == sx) return;
    reps.push_back(x);
  };

  for (std::size_t i = 0; i < normals.size(); ++i) {
    const Vec& n = normals[i];
    // Orthonormal basis Q of the wall n^perp (k x (k-1)).
    Eigen::JacobiSVD<Mat> svd(n.transpose(), Eigen::ComputeFullV);
    Mat Q = svd.matrixV().rightCols(k - 1);
    // Induced arrangement on the wall.
    std::vector<Vec> induced;
    for (std::size_t j = 0; j < normals.size(); ++j) {
      if (j == i) continue;
      Vec nj = Q.transpose() * normals[j];
      if (nj.norm() > 1e-9) induced.push_back(nj / nj.norm());
    }
    dedup_directions(induced);
    for (const Vec& face : chamber_representatives(induced, k - 1)) {
      Vec r = Q * face;
      r.normalize();
      // Step off the wall by less than the clearance to every other wall.
      double eps = 0.5;
      for (std::size_t j = 0; j < normals.size(); ++j) {
        if (j == i) continue;
        double c = std::abs(normals[j].dot(r));
        if (c > 1e-12) eps = std::min(eps, 0.5 * c);
      }
      push_unique((r + eps * n).normalized());
      push_unique((r - eps * n).normalized());
    }
  }
  return reps;
}

}  // namespace

int StratumGeometry::chamber_of(const Vec& v_coords, double tol) const {
  if (basis.cols() == 0) return chamber_reps.empty() ? -1 : 0;
  double scale = std::max(1.0, v_coords.norm());
  std::vector<int> s(wall_normals.size());
  for (std::size_t i = 0; i < wall_normals.size(); ++i) {
    double v = wall_normals[i].dot(v_coords);
    if (std::abs(v) <= tol * scale) return -1;  // on a wall
    s[i] = v > 0 ? 1 : -1;
  }
  for (std::size_t c = 0; c < chamber_signs.size(); ++c)
    if (chamber_signs[c] == s) return int(c);
  return -1;
}

Subgroup isotropy_subgroup(const FiniteGroup& G, const Vec& x) {
  Subgroup H{&G, {}};
  double tol = kGroupTol * (1.0 + x.norm());
  for (int g = 0; g < G.order(); ++g)
    if ((G.mat(g) * x - x).norm() <= tol) H.members.push_back(g);
  return H;
}

std::vector<Vec> orbit(const FiniteGroup& G, const Vec& x) {
  std::vector<Vec> pts;
  double tol = kGroupTol * (1.0 + x.norm());
  for (int g = 0; g < G.order(); ++g) {
    Vec y = G.mat(g) * x;
    bool dup = false;
    for (const Vec& p : pts)
      if ((p - y).norm() <= tol) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(y);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Isotropy class enumeration through the lattice of intersections of the
// fixed subspaces Fix(g). The isotropy subgroups of points are exactly the
// stabilizers H(F) = {g : F subset Fix(g)} of the flats F of this lattice.
// ---------------------------------------------------------------------------

namespace {

struct Flat {
  Mat basis;  // orthonormal, d x k
};

std::vector<Flat> intersection_lattice(const FiniteGroup& G) {
  const int d = G.dim;
  std::vector<Mat> fixes;  // distinct Fix(g), g != e, proper subspaces
  for (int g = 1; g < G.order(); ++g) {
    Mat f = fixed_space_of_element(G.mat(g));
    if (f.cols() == d) continue;
    bool dup = false;
    for (const Mat& other : fixes)
      if (f.cols() == other.cols() &&
          (projector(f) - projector(other)).cwiseAbs().maxCoeff() < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) fixes.push_back(f);
  }

  std::vector<Flat> flats{{Mat::Identity(d, d)}};
  auto exists = [&](const Mat& b) {
    for (const Flat& f : flats)
      if (f.basis.cols() == b.cols() &&
          (projector(f.basis) - projector(b)).cwiseAbs().maxCoeff() < 1e-9)
        return true;
    return false;
  };
  std::size_t head = 0;
  while (head < flats.size()) {
    Mat current = flats[head].basis;
    ++head;
    for (const Mat& w : fixes) {
      Mat inter = intersect_spans(current, w);
      if (inter.cols() == current.cols()) continue;
      if (!exists(inter)) flats.push_back({inter});
    }
  }
  return flats;
}

Subgroup flat_stabilizer(const FiniteGroup& G, const Mat& basis) {
  Subgroup H{&G, {}};
  for (int g = 0; g < G.order(); ++g)
    if (fixes_subspace(G.mat(g), basis)) H.members.push_back(g);
  return H;
}

// Structural fallback names; catalogs get curated labels afterwards.
std::string structural_name(const FiniteGroup& G, const Subgroup& H) {
  const int n = H.order();
  if (n == 1) return "1";
  if (n == G.order()) {
    std::string s = G.name;
    s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
    return s;
  }
  // cyclic?
  for (int h : H.members) {
    int p = h, len = 1;
    while (p != 0) {
      p = G.mul(p, h);
      ++len;
    }
    if (len == n) return "Z" + std::to_string(n);
  }
  if (n == 4) return "Z2xZ2";
  // dihedral of order 2m: cyclic subgroup of index 2 plus an involution
  if (n % 2 == 0) {
    for (int h : H.members) {
      int p = h, len = 1;
      while (p != 0) {
        p = G.mul(p, h);
        ++len;
      }
      if (len == n / 2) return "D" + std::to_string(n / 2);
    }
  }
  return "G" + std::to_string(n);
}

}  // namespace

std::vector<OrbitType> enumerate_isotropy_classes(const FiniteGroup& G) {
  std::vector<Flat> flats = intersection_lattice(G);
  std::vector<Subgroup> stabs;
  for (const Flat& f : flats) {
    Subgroup H = flat_stabilizer(G, f.basis);
    bool dup = false;
    for (const Subgroup& s : stabs)
      if (s == H) {
        dup = true;
        break;
      }
    if (!dup) stabs.push_back(H);
  }
  // Dedup by conjugacy.
  std::vector<Subgroup> reps;
  for (const Subgroup& H : stabs) {
    bool dup = false;
    for (const Subgroup& r : reps)
      if (are_conjugate(G, r, H).conjugate) {
        dup = true;
        break;
      }
    if (!dup) reps.push_back(H);
  }
  // Sort: descending |H|, then ascending fixed dim, for stable class ids.
  std::vector<OrbitType> classes;
  for (const Subgroup& H : reps) {
    OrbitType t;
    t.representative = H;
    t.fixed_dim = int(fixed_space(G, H).cols());
    t.orbit_size = G.order() / H.order();
    classes.push_back(t);
  }
  std::sort(classes.begin(), classes.end(),
            [](const OrbitType& a, const OrbitType& b) {
              if (a.representative.order() != b.representative.order())
                return a.representative.order() > b.representative.order();
              return a.fixed_dim < b.fixed_dim;
            });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].class_id = int(i);
    classes[i].label = structural_name(G, classes[i].representative);
  }
  // Disambiguate equal structural names.
  for (std::size_t i = 0; i < classes.size(); ++i) {
    int ties = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (classes[j].label == classes[i].label) ++ties;
    if (ties > 0) classes[i].label += "^" + std::string(1, char('a' + ties));
  }
  return classes;
}

namespace {

// Curated class labels for the catalog groups, matching the conventions used
// in the examples (kappa = reflection in the x-axis, tau = reflection in the
// (x,y)-plane, rho = rotation by pi about the z-axis).
void curate_labels(const FiniteGroup& G, std::vector<OrbitType>& classes) {
  const std::string& nm = G.name;
  auto set_label = [&](OrbitType& t, const std::string& s) { t.label = s; };

  bool planar_dihedral = nm.size() > 2 && nm[0] == 'D' && nm[1] == '_' &&
                         nm.back() != 'h' && G.dim == 2;
  bool dnh = nm.size() > 3 && nm[0] == 'D' && nm.back() == 'h' && G.dim == 3 &&
             nm != "C_2h";

  if (planar_dihedral) {
    // Classes: D_k (origin), reflection class(es), trivial.
    Mat kappa(2, 2);
    kappa << 1, 0, 0, -1;
    int kappa_idx = G.index_of(kappa);
    int named = 0;
    for (OrbitType& t : classes) {
      if (t.representative.order() == G.order()) {
        std::string s = nm;
        s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
        set_label(t, s);
      } else if (t.representative.order() == 2) {
        bool has_kappa = kappa_idx >= 0 && t.representative.contains(kappa_idx);
        if (!has_kappa && kappa_idx >= 0) {
          // member of the conjugacy class of kappa?
          Subgroup kap{&G, {0, kappa_idx}};
          std::sort(kap.members.begin(), kap.members.end());
          has_kappa = are_conjugate(G, t.representative, kap).conjugate;
        }
        set_label(t, has_kappa ? "Z2^k" : "Z2^k'");
        ++named;
      }
    }
    (void)named;
    return;
  }

  if (nm == "C_2h") {
    Mat tau = Mat::Identity(3, 3);
    tau(2, 2) = -1;
    int tau_idx = G.index_of(tau);
    for (OrbitType& t : classes) {
      if (t.representative.order() == 2) {
        bool is_tau = t.representative.contains(tau_idx);
        set_label(t, is_tau ? "Z2^t" : "Z2^r");
      } else if (t.representative.order() == 4) {
        set_label(t, "C2h");
      }
    }
    return;
  }

  if (nm == "D_2rot") {
    for (OrbitType& t : classes) {
      if (t.representative.order() == 4) set_label(t, "D2");
      if (t.representative.order() == 2) {
        int g = t.representative.members[1];
        // the rotation axis is the +1 eigenvector: identify x/y/z
        Mat fix = fixed_space_of_element(G.mat(g));
        Vec axis = fix.col(0);
        int which = 0;
        axis.cwiseAbs().maxCoeff(&which);
        set_label(t, which == 0 ? "Rx" : (which == 1 ? "Ry" : "Rz"));
      }
    }
    return;
  }

  if (dnh) {
    // D_nh: curated labels D{n}h, D{n} (z-axis), C2v / C2v' (in-plane
    // vertices), Z2^t (in-plane generic), Z2^k / Z2^k' (prisms), 1.
    Mat tau = Mat::Identity(3, 3);
    tau(2, 2) = -1;
    int tau_idx = G.index_of(tau);
    Mat kappa = Mat::Identity(3, 3);
    kappa(1, 1) = -1;  // reflection fixing the (x,z)-plane
    int kappa_idx = G.index_of(kappa);
    std::string base = nm;
    base.erase(std::remove(base.begin(), base.end(), '_'), base.end());
    std::string dn = base.substr(0, base.size() - 1);
    for (OrbitType& t : classes) {
      int h = t.representative.order();
      if (h == G.order()) {
        set_label(t, base);
      } else if (h == G.order() / 2 && t.fixed_dim == 1) {
        set_label(t, dn);  // z-axis points, stabilizer C_nv ~ D_n
      } else if (h == 4) {
        Subgroup kap{&G, {0, kappa_idx}};
        std::sort(kap.members.begin(), kap.members.end());
        bool contains_kappa_conj = false;
        for (int m : t.representative.members) {
          Subgroup test{&G, {0, m}};
          std::sort(test.members.begin(), test.members.end());
          if (G.mul(m, m) == 0 && m != 0 &&
              are_conjugate(G, test, kap).conjugate &&
              t.representative.contains(tau_idx)) {
            contains_kappa_conj = true;
            break;
          }
        }
        set_label(t, contains_kappa_conj ? "C2v" : "C2v'");
      } else if (h == 2) {
        if (t.representative.contains(tau_idx)) {
          set_label(t, "Z2^t");
        } else {
          Subgroup kap{&G, {0, kappa_idx}};
          std::sort(kap.members.begin(), kap.members.end());
          bool conj = are_conjugate(G, t.representative, kap).conjugate;
          set_label(t, conj ? "Z2^k" : "Z2^k'");
        }
      }
    }
    return;
  }

  if (nm == "T_d") {
    for (OrbitType& t : classes) {
      switch (t.representative.order()) {
        case 24: set_label(t, "Td"); break;
        case 6: set_label(t, "S3"); break;
        case 4: set_label(t, "Z2xZ2"); break;
        case 2: set_label(t, "Z2"); break;
        default: break;
      }
    }
    return;
  }
  if (nm == "O_h") {
    for (OrbitType& t : classes) {
      switch (t.representative.order()) {
        case 48: set_label(t, "Oh"); break;
        case 8: set_label(t, "C4v"); break;
        case 6: set_label(t, "C3v"); break;
        case 4: set_label(t, "Z2xZ2"); break;
        case 2: {
          // coordinate-plane mirror (sigma_h) vs diagonal mirror (sigma_d)
          int g = t.representative.members[1];
          Mat m = G.mat(g);
          bool axis_aligned = true;
          for (int i = 0; i < 3 && axis_aligned; ++i)
            for (int j = 0; j < 3; ++j)
              if (i != j && std::abs(m(i, j)) > 1e-9) {
                axis_aligned = false;
                break;
              }
          set_label(t, axis_aligned ? "Z2^h" : "Z2^d");
          break;
        }
        default: break;
      }
    }
    return;
  }
  if (nm == "I_h") {
    for (OrbitType& t : classes) {
      switch (t.representative.order()) {
        case 120: set_label(t, "Ih"); break;
        case 10: set_label(t, "C5v"); break;
        case 6: set_label(t, "C3v"); break;
        case 4: set_label(t, "Z2xZ2"); break;
        case 2: set_label(t, "Z2"); break;
        default: break;
      }
    }
    return;
  }
}

StratumGeometry build_geometry(const FiniteGroup& G, const Subgroup& H) {
  StratumGeometry geom;
  geom.basis = fixed_space(G, H);
  const int k = int(geom.basis.cols());
  if (k == 0) {
    geom.component_count = 1;
    geom.chamber_reps.push_back(Vec::Zero(0));
    geom.chamber_signs.push_back({});
    geom.chamber_component.push_back(0);
    return geom;
  }

  // Walls: codimension-1 intersections of Fix(H) with Fix(g), g outside H.
  std::vector<Vec> normals;
  for (int g = 0; g < G.order(); ++g) {
    if (H.contains(g)) continue;
    Mat fg = fixed_space_of_element(G.mat(g));
    Mat inter = intersect_spans(geom.basis, fg);
    if (int(inter.cols()) != k - 1) continue;
    if (k == 1) {  // the wall is the origin of a line
      Vec n(1);
      n << 1.0;
      normals.push_back(n);
      continue;
    }
    // Normal of the wall inside V-coordinates.
    Mat wall_v = geom.basis.transpose() * inter;  // k x (k-1)
    Eigen::JacobiSVD<Mat> svd(wall_v.transpose(), Eigen::ComputeFullV);
    Vec n = svd.matrixV().col(k - 1);
    normals.push_back(n);
  }
  dedup_directions(normals);
  geom.wall_normals = normals;

  geom.chamber_reps = chamber_representatives(normals, k);
  for (const Vec& r : geom.chamber_reps) {
    std::vector<int> s(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i)
      s[i] = normals[i].dot(r) > 0 ? 1 : -1;
    geom.chamber_signs.push_back(s);
  }

  // Merge chambers under the N_G(H)-action.
  Subgroup N = normalizer(G, H);
  const int nc = int(geom.chamber_reps.size());
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int c = 0; c < nc; ++c) {
    Vec x = geom.basis * geom.chamber_reps[c];
    for (int n : N.members) {
      Vec y = geom.basis.transpose() * (G.mat(n) * x);
      int target = geom.chamber_of(y);
      if (target >= 0) {
        int ra = find(c), rb = find(target);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  // Deterministic component ids: order merged classes by the lexicographically
  // smallest sign vector among their chambers; that component is unprimed.
  std::vector<int> roots;
  for (int c = 0; c < nc; ++c)
    if (find(c) == c) roots.push_back(c);
  std::vector<std::vector<int>> best_sign(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    std::vector<int> best;
    for (int c = 0; c < nc; ++c)
      if (find(c) == roots[r]) {
        if (best.empty() || geom.chamber_signs[c] < best)
          best = geom.chamber_signs[c];
      }
    best_sign[r] = best;
  }
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return best_sign[a] > best_sign[b];  // all-plus first
  });
  std::vector<int> root_component(nc, -1);
  for (std::size_t rank = 0; rank < order.size(); ++rank)
    root_component[roots[order[rank]]] = int(rank);
  geom.chamber_component.resize(nc);
  for (int c = 0; c < nc; ++c)
    geom.chamber_component[c] = root_component[find(c)];
  geom.component_count = int(roots.size());
  return geom;
}

}  // namespace

int TypeTable::find_class_of(const Subgroup& H) const {
  for (const OrbitType& t : classes) {
    if (t.representative.order() != H.order()) continue;
    if (are_conjugate(G(), t.representative, H).conjugate) return t.class_id;
  }
  return -1;
}

int TypeTable::class_by_label(const std::string& label) const {
  for (const OrbitType& t : classes)
    if (t.label == label) return t.class_id;
  return -1;
}

int TypeTable::component_of(int class_id, const Vec& x) const {
  const StratumGeometry& geom = geometry[class_id];
  if (geom.basis.cols() == 0) return 0;
  Vec v = geom.basis.transpose() * x;
  // x must lie in Fix(H)
  if ((geom.basis * v - x).norm() > kGroupTol * (1 + x.norm())) return -1;
  int chamber = geom.chamber_of(v);
  if (chamber < 0) return -1;
  return geom.chamber_component[chamber];
}

std::shared_ptr<const TypeTable> analyze_group(
    std::shared_ptr<const FiniteGroup> G) {
  auto table = std::make_shared<TypeTable>();
  table->group = G;
  table->classes = enumerate_isotropy_classes(*G);
  curate_labels(*G, table->classes);
  for (const OrbitType& t : table->classes) {
    table->geometry.push_back(build_geometry(*G, t.representative));
    const StratumGeometry& geom = table->geometry.back();
    std::vector<TopoOrbitType> comps;
    for (int comp = 0; comp < geom.component_count; ++comp) {
      TopoOrbitType topo;
      topo.class_id = t.class_id;
      topo.component = comp;
      // Representative: first chamber of this component.
      for (std::size_t c = 0; c < geom.chamber_reps.size(); ++c)
        if (geom.chamber_component[c] == comp) {
          topo.representative = geom.basis.cols() == 0
                                    ? Vec::Zero(G->dim)
                                    : Vec(geom.basis * geom.chamber_reps[c]);
          break;
        }
      comps.push_back(topo);
    }
    table->components.push_back(comps);
  }
  return table;
}

std::shared_ptr<const TypeTable> analyze_group(const FiniteGroup& G) {
  return analyze_group(std::make_shared<const FiniteGroup>(G));
}

std::vector<TopoOrbitType> topological_components(const TypeTable& table,
                                                  int class_id) {
  if (class_id < 0 || class_id >= int(table.classes.size()))
    throw Error(ErrorCode::NotIsotropy, "topological_components: bad class");
  const OrbitType& t = table.classes[class_id];
  // A fixed_dim-0 subgroup other than the stabilizer of the origin (= G
  // itself for linear actions) has empty stratum.
  if (t.fixed_dim == 0 && t.representative.order() != table.G().order())
    throw Error(ErrorCode::NotIsotropy,
                "no point has isotropy exactly this subgroup");
  return table.components[class_id];
}

int BurnsideType::body_count(const TypeTable& table) const {
  int n = 0;
  for (const auto& [key, count] : counts)
    n += count * table.classes[key.first].orbit_size;
  return n;
}

BurnsideType burnside_type_of(const TypeTable& table, const Configuration& C) {
  const FiniteGroup& G = table.G();
  if (C.dim != G.dim)
    throw Error(ErrorCode::SizeMismatch, "burnside_type_of: dim mismatch");

  // Partition the points into G-orbits and find each orbit's type.
  std::vector<char> assigned(C.size(), 0);
  BurnsideType type;
  for (int i = 0; i < C.size(); ++i) {
    if (assigned[i]) continue;
    const Vec& x = C.points[i];
    double tol = 1e-7 * (1.0 + x.norm());
    // Collect the orbit of x inside C; equal masses required.
    std::vector<int> members;
    for (int g = 0; g < G.order(); ++g) {
      Vec y = G.mat(g) * x;
      bool found = false;
      for (int j = 0; j < C.size(); ++j) {
        if ((C.points[j] - y).norm() <= tol) {
          if (std::abs(C.masses[j] - C.masses[i]) > 1e-12 * C.masses[i])
            throw Error(ErrorCode::NotSymmetric,
                        "mass distribution is not invariant");
          if (!assigned[j]) {
            members.push_back(j);
            assigned[j] = 1;
          }
          found = true;
          break;
        }
      }
      if (!found)
        throw Error(ErrorCode::NotSymmetric,
                    "configuration is not invariant under the group");
    }
    Subgroup H = isotropy_subgroup(G, x);
    int cls = table.find_class_of(H);
    if (cls < 0)
      throw Error(ErrorCode::NotIsotropy, "unrecognized isotropy subgroup");
    // Move x onto the class representative's fixed space to identify the
    // component: find g with isotropy(gx) == representative exactly.
    int comp = -1;
    for (int g = 0; g < G.order() && comp < 0; ++g) {
      Vec y = G.mat(g) * x;
      Subgroup Hy = isotropy_subgroup(G, y);
      if (Hy == table.classes[cls].representative)
        comp = table.component_of(cls, y);
    }
    if (comp < 0)
      throw Error(ErrorCode::NotIsotropy,
                  "could not locate stratum component of an orbit");
    type.counts[{cls, comp}] += 1;
  }
  return type;
}

Vec random_representative(const TypeTable& table, int class_id, int component,
                          std::pair<double, double> radius_range, Rng& rng) {
  if (class_id < 0 || class_id >= int(table.classes.size()))
    throw Error(ErrorCode::EmptyStratum, "random_representative: bad class");
  const StratumGeometry& geom = table.geometry[class_id];
  const OrbitType& cls = table.classes[class_id];
  if (cls.fixed_dim == 0) {
    if (cls.representative.order() != table.G().order())
      throw Error(ErrorCode::EmptyStratum, "empty stratum");
    return Vec::Zero(table.G().dim);
  }

  // Chambers belonging to the requested component.
  std::vector<int> pool;
  for (std::size_t c = 0; c < geom.chamber_reps.size(); ++c)
    if (geom.chamber_component[c] == component) pool.push_back(int(c));
  if (pool.empty())
    throw Error(ErrorCode::EmptyStratum, "component index out of range");

  for (int attempt = 0; attempt < 512; ++attempt) {
    Vec v;
    if (attempt < 384) {
      // Isotropic direction, accepted when it falls in the right component:
      // unbiased coverage of every chamber.
      v = Vec::Zero(cls.fixed_dim);
      for (int i = 0; i < cls.fixed_dim; ++i) v(i) = rng.normal();
      if (v.norm() < 1e-12) continue;
      v.normalize();
      int chamber = geom.chamber_of(v, 1e-6);
      if (chamber < 0 || geom.chamber_component[chamber] != component)
        continue;
    } else {
      // Fallback for thin chambers: jitter around a chamber representative.
      int chamber = pool[rng.uniform_int(0, int(pool.size()) - 1)];
      const Vec& rep = geom.chamber_reps[chamber];
      Vec dir = Vec::Zero(cls.fixed_dim);
      for (int i = 0; i < cls.fixed_dim; ++i) dir(i) = rng.normal();
      if (dir.norm() > 0) dir.normalize();
      v = rep;
      double step = 0.9;
      for (int shrink = 0; shrink < 30; ++shrink) {
        Vec cand = (rep + step * dir).normalized();
        if (geom.chamber_of(cand, 1e-6) == chamber) {
          v = cand;
          break;
        }
        step *= 0.5;
      }
    }
    double radius = rng.uniform(radius_range.first, radius_range.second);
    Vec x = geom.basis * (radius * v);
    if (isotropy_subgroup(table.G(), x) == cls.representative) return x;
  }
  throw Error(ErrorCode::EmptyStratum,
              "failed to sample a representative with exact isotropy");
}

}  // namespace cencon
