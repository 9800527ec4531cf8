#include "cencon/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace cencon {

namespace {

// Coset representatives of H in G, in element order: the lifted orbit of a
// point with isotropy exactly H is {g_c x : c over cosets}.
std::vector<int> coset_reps(const FiniteGroup& G, const Subgroup& H) {
  std::vector<char> covered(G.order(), 0);
  std::vector<int> reps;
  for (int g = 0; g < G.order(); ++g) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (int h : H.members) covered[G.mul(g, h)] = 1;
  }
  return reps;
}

}  // namespace

SymmetricAnsatz make_ansatz(std::shared_ptr<const TypeTable> types,
                            std::vector<Slot> slots, double exponent) {
  SymmetricAnsatz A;
  A.types = std::move(types);
  A.slots = std::move(slots);
  A.exponent = exponent;
  if (A.slots.empty())
    throw Error(ErrorCode::InvalidInput, "ansatz needs at least one slot");

  const FiniteGroup& G = A.G();
  int zero_dim_slots = 0;
  for (const Slot& s : A.slots) {
    if (s.class_id < 0 || s.class_id >= int(A.types->classes.size()))
      throw Error(ErrorCode::InvalidInput, "slot class out of range");
    const OrbitType& t = A.types->classes[s.class_id];
    if (s.component < 0 ||
        s.component >= int(A.types->components[s.class_id].size()))
      throw Error(ErrorCode::InvalidInput, "slot component out of range");
    if (!(s.mass > 0))
      throw Error(ErrorCode::InvalidInput, "slot mass must be positive");
    if (t.fixed_dim == 0) {
      if (t.representative.order() != G.order())
        throw Error(ErrorCode::EmptyStratum,
                    "slot type has an empty stratum");
      ++zero_dim_slots;
    }
  }
  if (zero_dim_slots > 1)
    throw Error(ErrorCode::InvalidInput,
                "at most one orbit can sit at the origin");

  A.slot_offsets.resize(A.slots.size());
  for (std::size_t i = 0; i < A.slots.size(); ++i) {
    const OrbitType& t = A.slot_type(int(i));
    A.slot_offsets[i] = A.coord_dim;
    A.slot_dims.push_back(t.fixed_dim);
    A.coord_dim += t.fixed_dim;
    A.body_count += t.orbit_size;
    A.cosets.push_back(coset_reps(G, t.representative));
  }

  // Gauge directions: shifting every representative by the same v in Fix(G)
  // translates the whole configuration, which the centered lift undoes.
  Mat fixG = fixed_space(G, full_subgroup(G));
  Mat gauge(A.coord_dim, fixG.cols());
  for (int q = 0; q < fixG.cols(); ++q) {
    Vec dir(A.coord_dim);
    int off = 0;
    for (std::size_t i = 0; i < A.slots.size(); ++i) {
      const Mat& B = A.types->geometry[A.slots[i].class_id].basis;
      dir.segment(off, B.cols()) = B.transpose() * fixG.col(q);
      off += int(B.cols());
    }
    gauge.col(q) = dir;
  }
  // Orthonormalize (columns are independent whenever Fix(G) is nontrivial).
  if (gauge.cols() > 0) {
    Eigen::HouseholderQR<Mat> qr(gauge);
    A.gauge = qr.householderQ() * Mat::Identity(A.coord_dim, gauge.cols());
  } else {
    A.gauge = gauge;
  }
  return A;
}

Configuration lift(const SymmetricAnsatz& A, const Vec& coords) {
  if (coords.size() != A.coord_dim)
    throw Error(ErrorCode::SizeMismatch, "lift: coordinate size mismatch");
  const FiniteGroup& G = A.G();

  Configuration C;
  C.dim = G.dim;
  C.points.reserve(A.body_count);
  C.masses.reserve(A.body_count);
  for (std::size_t i = 0; i < A.slots.size(); ++i) {
    const Slot& s = A.slots[i];
    const StratumGeometry& geom = A.types->geometry[s.class_id];
    Vec v = A.slot_coords(coords, int(i));
    if (A.slot_dims[i] > 0) {
      int chamber = geom.chamber_of(v);
      if (chamber < 0 || geom.chamber_component[chamber] != s.component)
        throw Error(ErrorCode::StratumViolation,
                    "slot representative left its stratum component");
    }
    Vec x = geom.basis.cols() == 0 ? Vec::Zero(G.dim) : Vec(geom.basis * v);
    for (int g : A.cosets[i]) {
      C.points.push_back(G.mat(g) * x);
      C.masses.push_back(s.mass);
    }
  }

  // Orbits of exact-isotropy points never self-collide, but distinct orbits
  // can overlap; that is a hard error (U is singular there).
  if (A.body_count > 1 && min_separation(C) < kGroupTol)
    throw Error(ErrorCode::OrbitCollision, "lifted orbits overlap");

  if (A.gauge.cols() > 0) {
    Vec b = barycenter(C);
    for (Vec& p : C.points) p -= b;
  }
  return C;
}

Mat lift_jacobian(const SymmetricAnsatz& A) {
  const FiniteGroup& G = A.G();
  const int d = G.dim;
  Mat J = Mat::Zero(A.body_count * d, A.coord_dim);
  int row = 0;
  for (std::size_t i = 0; i < A.slots.size(); ++i) {
    const Mat& B = A.types->geometry[A.slots[i].class_id].basis;
    for (int g : A.cosets[i]) {
      if (A.slot_dims[i] > 0)
        J.block(row, A.slot_offsets[i], d, A.slot_dims[i]) = G.mat(g) * B;
      row += d;
    }
  }
  if (A.gauge.cols() > 0) {
    // Centered lift: subtract the mass-weighted mean row block.
    double M = 0;
    std::vector<double> mass(A.body_count);
    int b = 0;
    for (std::size_t i = 0; i < A.slots.size(); ++i)
      for (std::size_t c = 0; c < A.cosets[i].size(); ++c) {
        mass[b++] = A.slots[i].mass;
      }
    for (double m : mass) M += m;
    Mat mean = Mat::Zero(d, A.coord_dim);
    for (int p = 0; p < A.body_count; ++p)
      mean += (mass[p] / M) * J.block(p * d, 0, d, A.coord_dim);
    for (int p = 0; p < A.body_count; ++p)
      J.block(p * d, 0, d, A.coord_dim) -= mean;
  }
  return J;
}

double reduced_potential(const SymmetricAnsatz& A, const Vec& coords) {
  return potential(lift(A, coords), A.exponent);
}

double reduced_inertia(const SymmetricAnsatz& A, const Vec& coords) {
  return moment_of_inertia(lift(A, coords));
}

namespace {
Vec flatten(const std::vector<Vec>& grads, int d) {
  Vec g(int(grads.size()) * d);
  for (std::size_t i = 0; i < grads.size(); ++i)
    g.segment(int(i) * d, d) = grads[i];
  return g;
}
}  // namespace

Vec reduced_potential_grad(const SymmetricAnsatz& A, const Vec& coords) {
  Configuration C = lift(A, coords);
  // U is translation invariant, so the centering drops out of the chain rule
  // for U but not for I; using the full Jacobian handles both uniformly.
  return lift_jacobian(A).transpose() *
         flatten(grad_potential(C, A.exponent), C.dim);
}

Vec reduced_inertia_grad(const SymmetricAnsatz& A, const Vec& coords) {
  Configuration C = lift(A, coords);
  return lift_jacobian(A).transpose() * flatten(grad_inertia(C), C.dim);
}

Mat reduced_potential_hess(const SymmetricAnsatz& A, const Vec& coords) {
  Configuration C = lift(A, coords);
  Mat J = lift_jacobian(A);
  return J.transpose() * hessian_potential(C, A.exponent) * J;
}

Mat reduced_inertia_hess(const SymmetricAnsatz& A) {
  Mat J = lift_jacobian(A);
  // Hessian of I in full space is 2 diag(masses per coordinate).
  const int d = A.G().dim;
  Vec w(A.body_count * d);
  int b = 0;
  for (std::size_t i = 0; i < A.slots.size(); ++i)
    for (std::size_t c = 0; c < A.cosets[i].size(); ++c) {
      for (int k = 0; k < d; ++k) w(b * d + k) = 2.0 * A.slots[i].mass;
      ++b;
    }
  return J.transpose() * w.asDiagonal() * J;
}

Vec project_to_sphere(const SymmetricAnsatz& A, const Vec& coords) {
  double I = reduced_inertia(A, coords);
  if (I <= 1e-300)
    throw Error(ErrorCode::ZeroInertia,
                "cannot normalize: moment of inertia vanishes");
  return coords / std::sqrt(I);
}

SymmetryCheck check_symmetric(const FiniteGroup& G, const Configuration& C) {
  if (C.dim != G.dim)
    throw Error(ErrorCode::SizeMismatch, "check_symmetric: dim mismatch");
  std::vector<int> gens = G.generators;
  if (gens.empty())
    for (int g = 0; g < G.order(); ++g) gens.push_back(g);
  double scale = 0;
  for (const Vec& p : C.points) scale = std::max(scale, p.norm());
  for (int g : gens) {
    if (!same_configuration(act(G.mat(g), C), C, 1e-9 * (1.0 + scale)))
      return {false, g};
  }
  return {true, -1};
}

BurnsideType ansatz_burnside(const SymmetricAnsatz& A) {
  BurnsideType t;
  for (const Slot& s : A.slots) t.counts[{s.class_id, s.component}] += 1;
  return t;
}

}  // namespace cencon
