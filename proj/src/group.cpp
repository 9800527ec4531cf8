#include "cencon/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace cencon {

namespace {

// Hash key from entries rounded to a 1e-6 grid; candidates from the same
// bucket are confirmed with a full-precision max-norm comparison.
struct MatKey {
  std::vector<long long> q;
  bool operator==(const MatKey& o) const { return q == o.q; }
};

struct MatKeyHash {
  std::size_t operator()(const MatKey& k) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long v : k.q) {
      h ^= std::size_t(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

MatKey key_of(const Mat& m) {
  MatKey k;
  k.q.reserve(m.size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      k.q.push_back(llround(m(i, j) * 1e6));
  return k;
}

double mat_dist(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Index lookup table shared by generate_group.
class ElementTable {
 public:
  explicit ElementTable(int dim) : dim_(dim) {}

  int find(const Mat& m) const {
    auto it = buckets_.find(key_of(m));
    if (it == buckets_.end()) return -1;
    for (int idx : it->second)
      if (mat_dist(elements_[idx], m) < kGroupTol) return idx;
    return -1;
  }

  int insert(const Mat& m) {
    elements_.push_back(m);
    int idx = int(elements_.size()) - 1;
    buckets_[key_of(m)].push_back(idx);
    return idx;
  }

  const std::vector<Mat>& elements() const { return elements_; }

 private:
  int dim_;
  std::vector<Mat> elements_;
  std::unordered_map<MatKey, std::vector<int>, MatKeyHash> buckets_;
};

Mat rot2(double theta) {
  Mat m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

Mat reflect2_x() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat diag3(double a, double b, double c) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Mat rotz3(double theta) {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = std::cos(theta);
  m(0, 1) = -std::sin(theta);
  m(1, 0) = std::sin(theta);
  m(1, 1) = std::cos(theta);
  return m;
}

// Cyclic coordinate permutation (x,y,z) -> (y,z,x).
Mat cyclic3() {
  Mat m = Mat::Zero(3, 3);
  m(0, 1) = 1;
  m(1, 2) = 1;
  m(2, 0) = 1;
  return m;
}

Mat swap_xy3() {
  Mat m = Mat::Zero(3, 3);
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(2, 2) = 1;
  return m;
}

// Rotation by 2*pi/5 about the icosahedron vertex axis (0, 1, phi).
Mat icosa_rot5() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Mat m(3, 3);
  m << 1 / phi, -phi, 1, phi, 1, 1 / phi, -1, 1 / phi, phi;
  return 0.5 * m;
}

}  // namespace

int FiniteGroup::index_of(const Mat& m) const {
  for (int i = 0; i < order(); ++i)
    if (mat_dist(elements[i], m) < kGroupTol) return i;
  return -1;
}

bool Subgroup::contains(int e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

bool is_orthogonal(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Mat mtm = m.transpose() * m;
  if ((mtm - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > tol)
    return false;
  return std::abs(std::abs(m.determinant()) - 1.0) <= tol;
}

FiniteGroup generate_group(const std::vector<Mat>& gens, int max_order,
                           const std::string& name) {
  if (gens.empty())
    throw Error(ErrorCode::BadParameter, "generate_group: no generators");
  const int d = int(gens.front().rows());
  for (const Mat& g : gens) {
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorCode::BadParameter,
                  "generate_group: mixed generator dimensions");
    if (!is_orthogonal(g))
      throw Error(ErrorCode::NotOrthogonal,
                  "generate_group: generator is not orthogonal");
  }

  ElementTable table(d);
  table.insert(Mat::Identity(d, d));

  FiniteGroup G;
  G.dim = d;
  G.name = name;

  std::deque<int> frontier{0};
  std::vector<int> gen_indices;
  // Seed generators as separate elements (dedup against identity).
  for (const Mat& g : gens) {
    int idx = table.find(g);
    if (idx < 0) {
      idx = table.insert(g);
      frontier.push_back(idx);
    }
    gen_indices.push_back(idx);
  }

  while (!frontier.empty()) {
    int a = frontier.front();
    frontier.pop_front();
    for (int gi : gen_indices) {
      Mat p = table.elements()[a] * table.elements()[gi];
      if (table.find(p) < 0) {
        if (int(table.elements().size()) >= max_order)
          throw Error(ErrorCode::ClosureOverflow,
                      "generate_group: closure exceeds max_order " +
                          std::to_string(max_order));
        frontier.push_back(table.insert(p));
      }
    }
  }

  G.elements = table.elements();
  const int n = int(G.elements.size());
  G.cayley.assign(n, std::vector<int>(n, -1));
  G.inverses.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Mat p = G.elements[a] * G.elements[b];
      int idx = table.find(p);
      if (idx < 0)
        throw Error(ErrorCode::ClosureOverflow,
                    "generate_group: product fell outside closure "
                    "(badly conditioned generators)");
      G.cayley[a][b] = idx;
      if (idx == 0) G.inverses[a] = b;
    }
  }
  for (int gi : gen_indices) G.generators.push_back(gi);
  return G;
}

std::vector<std::string> catalog_names() {
  return {"C_k", "D_k", "C_2h", "D_nh", "D_2rot", "T_d", "O_h", "I_h"};
}

FiniteGroup catalog_group(const std::string& raw, int param) {
  // Lenient parse: strip underscores for matching, pull a trailing integer.
  std::string name = raw;
  int k = param;
  {
    std::size_t pos = name.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(name[pos - 1])))
      --pos;
    // trailing digits only count as a parameter for C_k / D_k / D_nh forms
    std::string head = name.substr(0, pos);
    if (pos < name.size() &&
        (head == "C" || head == "C_" || head == "D" || head == "D_")) {
      k = std::stoi(name.substr(pos));
      name = head;
    }
  }
  auto strip = [](std::string s) {
    s.erase(std::remove(s.begin(), s.end(), '_'), s.end());
    return s;
  };
  std::string key = strip(name);

  // D_nh arrives as "D_3h" / "D3h": trailing 'h' after digits.
  if (key.size() >= 2 && key.front() == 'D' && key.back() == 'h' &&
      key != "C2h") {
    std::string mid = key.substr(1, key.size() - 2);
    if (!mid.empty() &&
        std::all_of(mid.begin(), mid.end(),
                    [](char c) { return std::isdigit(unsigned(c)); })) {
      k = std::stoi(mid);
      key = "Dnh";
    }
  }

  const double pi = 3.14159265358979323846;

  if (key == "C" || key == "Ck") {
    if (k < 1) throw Error(ErrorCode::BadParameter, "C_k needs k >= 1");
    std::string label = "C_" + std::to_string(k);
    if (k == 1) {
      FiniteGroup G = generate_group({Mat::Identity(2, 2)}, 4, label);
      return G;
    }
    return generate_group({rot2(2 * pi / k)}, 4 * k, label);
  }
  if (key == "D" || key == "Dk") {
    if (k < 1) throw Error(ErrorCode::BadParameter, "D_k needs k >= 1");
    std::string label = "D_" + std::to_string(k);
    if (k == 1) return generate_group({reflect2_x()}, 8, label);
    return generate_group({rot2(2 * pi / k), reflect2_x()}, 8 * k, label);
  }
  if (key == "C2h") {
    // tau: reflection in the (x,y)-plane; rho: rotation by pi about z.
    return generate_group({diag3(1, 1, -1), rotz3(pi)}, 16, "C_2h");
  }
  if (key == "Dnh") {
    if (k < 1) throw Error(ErrorCode::BadParameter, "D_nh needs n >= 1");
    std::string label = "D_" + std::to_string(k) + "h";
    // Z_2 x D_n: tau plus the planar dihedral group with a vertical mirror.
    Mat kappa = diag3(1, -1, 1);  // reflection fixing the (x,z)-plane
    return generate_group({rotz3(2 * pi / k), kappa, diag3(1, 1, -1)},
                          16 * k, label);
  }
  if (key == "D2rot") {
    return generate_group({diag3(1, -1, -1), diag3(-1, 1, -1)}, 16, "D_2rot");
  }
  if (key == "Td") {
    // Signed permutations with sign product +1: symmetry group of the
    // tetrahedron {(1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1)}.
    return generate_group({cyclic3(), swap_xy3(), diag3(1, -1, -1)}, 48,
                          "T_d");
  }
  if (key == "Oh") {
    return generate_group({cyclic3(), swap_xy3(), diag3(-1, 1, 1)}, 96, "O_h");
  }
  if (key == "Ih") {
    return generate_group({cyclic3(), icosa_rot5(), -Mat::Identity(3, 3)}, 240,
                          "I_h");
  }
  throw Error(ErrorCode::UnknownName, "catalog_group: unknown name '" + raw +
                                          "'");
}

Subgroup trivial_subgroup(const FiniteGroup& G) { return {&G, {0}}; }

Subgroup full_subgroup(const FiniteGroup& G) {
  Subgroup H{&G, {}};
  H.members.resize(G.order());
  for (int i = 0; i < G.order(); ++i) H.members[i] = i;
  return H;
}

Subgroup subgroup_closure(const FiniteGroup& G, std::vector<int> seed) {
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  std::deque<int> frontier{0};
  for (int s : seed)
    if (!in[s]) {
      in[s] = 1;
      frontier.push_back(s);
    }
  std::vector<int> gens = seed;
  while (!frontier.empty()) {
    int a = frontier.front();
    frontier.pop_front();
    for (int g : gens) {
      int p = G.mul(a, g);
      if (!in[p]) {
        in[p] = 1;
        frontier.push_back(p);
      }
    }
  }
  Subgroup H{&G, {}};
  for (int i = 0; i < G.order(); ++i)
    if (in[i]) H.members.push_back(i);
  return H;
}

Subgroup conjugate_subgroup(const FiniteGroup& G, const Subgroup& H, int g) {
  Subgroup R{&G, {}};
  R.members.reserve(H.order());
  int ginv = G.inv(g);
  for (int h : H.members) R.members.push_back(G.mul(G.mul(g, h), ginv));
  std::sort(R.members.begin(), R.members.end());
  return R;
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& H) {
  Subgroup N{&G, {}};
  for (int g = 0; g < G.order(); ++g)
    if (conjugate_subgroup(G, H, g) == H) N.members.push_back(g);
  return N;
}

ConjugacyWitness are_conjugate(const FiniteGroup& G, const Subgroup& H1,
                               const Subgroup& H2) {
  if (H1.order() != H2.order()) return {false, -1};
  for (int g = 0; g < G.order(); ++g)
    if (conjugate_subgroup(G, H1, g) == H2) return {true, g};
  return {false, -1};
}

FiniteGroup embed_group(const FiniteGroup& G, int e, bool adjoin_flip) {
  if (e <= G.dim)
    throw Error(ErrorCode::BadParameter, "embed_group: need e > dim");
  std::vector<Mat> gens;
  for (int gi : G.generators.empty() ? std::vector<int>{0} : G.generators) {
    Mat m = Mat::Identity(e, e);
    m.topLeftCorner(G.dim, G.dim) = G.mat(gi);
    gens.push_back(m);
  }
  if (adjoin_flip) {
    Mat f = Mat::Identity(e, e);
    for (int i = G.dim; i < e; ++i) f(i, i) = -1;
    gens.push_back(f);
  }
  int bound = 4 * G.order() * (adjoin_flip ? 2 : 1) + 16;
  return generate_group(gens, bound, G.name + "_in_O" + std::to_string(e));
}

Mat fixed_space_of_element(const Mat& g) {
  const int d = int(g.rows());
  Eigen::JacobiSVD<Mat> svd(g - Mat::Identity(d, d),
                            Eigen::ComputeFullU | Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < d; ++i)
    if (svd.singularValues()(i) > 1e-8) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

Mat fixed_space(const FiniteGroup& G, const Subgroup& H) {
  const int d = G.dim;
  Mat basis = Mat::Identity(d, d);
  for (int h : H.members) {
    if (h == 0) continue;
    if (basis.cols() == 0) break;
    // Intersect span(basis) with Fix(h): solve (g - I) * basis * c = 0.
    Mat m = (G.mat(h) - Mat::Identity(d, d)) * basis;
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-8) ++rank;
    Mat c = svd.matrixV().rightCols(basis.cols() - rank);
    Mat next = basis * c;
    // Re-orthonormalize.
    Eigen::HouseholderQR<Mat> qr(next);
    Mat q = qr.householderQ() * Mat::Identity(d, int(next.cols()));
    basis = q;
  }
  return basis;
}

}  // namespace cencon
