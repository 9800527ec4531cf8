#include "cencon/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cencon {

double Configuration::total_mass() const {
  double m = 0;
  for (double v : masses) m += v;
  return m;
}

double min_separation(const Configuration& C) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < C.size(); ++i)
    for (int j = i + 1; j < C.size(); ++j)
      best = std::min(best, (C.points[i] - C.points[j]).norm());
  return best;
}

namespace {
void check_collisions(const Configuration& C) {
  if (C.size() > 1 && min_separation(C) < kCollisionTol)
    throw Error(ErrorCode::CollisionSingularity,
                "coincident points in configuration");
}
}  // namespace

double potential(const Configuration& C, double exponent) {
  check_collisions(C);
  double u = 0;
  for (int i = 0; i < C.size(); ++i)
    for (int j = i + 1; j < C.size(); ++j) {
      double r = (C.points[i] - C.points[j]).norm();
      u += C.masses[i] * C.masses[j] / std::pow(r, exponent);
    }
  return u;
}

double moment_of_inertia(const Configuration& C) {
  double s = 0;
  for (int i = 0; i < C.size(); ++i)
    s += C.masses[i] * C.points[i].squaredNorm();
  return s;
}

std::vector<Vec> grad_potential(const Configuration& C, double exponent) {
  check_collisions(C);
  std::vector<Vec> g(C.size(), Vec::Zero(C.dim));
  for (int i = 0; i < C.size(); ++i)
    for (int j = i + 1; j < C.size(); ++j) {
      Vec dx = C.points[i] - C.points[j];
      double r = dx.norm();
      Vec f = -exponent * C.masses[i] * C.masses[j] *
              dx / std::pow(r, exponent + 2);
      g[i] += f;
      g[j] -= f;
    }
  return g;
}

std::vector<Vec> grad_inertia(const Configuration& C) {
  std::vector<Vec> g(C.size());
  for (int i = 0; i < C.size(); ++i) g[i] = 2.0 * C.masses[i] * C.points[i];
  return g;
}

Mat hessian_potential(const Configuration& C, double exponent) {
  check_collisions(C);
  const int d = C.dim, n = C.size();
  Mat H = Mat::Zero(n * d, n * d);
  const double e = exponent;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec dx = C.points[i] - C.points[j];
      double r2 = dx.squaredNorm();
      double r = std::sqrt(r2);
      // d^2/dx^2 of m_i m_j r^-e over the pair separation dx:
      //   -e m_i m_j [ I / r^(e+2)  -  (e+2) dx dx^T / r^(e+4) ]
      Mat blk = -e * C.masses[i] * C.masses[j] *
                (Mat::Identity(d, d) / std::pow(r, e + 2) -
                 (e + 2) * (dx * dx.transpose()) / std::pow(r, e + 4));
      H.block(i * d, i * d, d, d) += blk;
      H.block(j * d, j * d, d, d) += blk;
      H.block(i * d, j * d, d, d) -= blk;
      H.block(j * d, i * d, d, d) -= blk;
    }
  return H;
}

Vec barycenter(const Configuration& C) {
  Vec b = Vec::Zero(C.dim);
  for (int i = 0; i < C.size(); ++i) b += C.masses[i] * C.points[i];
  return b / C.total_mass();
}

Configuration centered(const Configuration& C) {
  Configuration R = C;
  Vec b = barycenter(C);
  for (Vec& p : R.points) p -= b;
  return R;
}

Configuration act(const Mat& g, const Configuration& C) {
  if (g.rows() != C.dim)
    throw Error(ErrorCode::SizeMismatch, "act: dimension mismatch");
  Configuration R = C;
  for (int i = 0; i < C.size(); ++i) R.points[i] = g * C.points[i];
  return R;
}

InertiaData inertia_matrix(const Configuration& C) {
  InertiaData data;
  data.S = Mat::Zero(C.dim, C.dim);
  for (int i = 0; i < C.size(); ++i)
    data.S += C.masses[i] * (C.points[i] * C.points[i].transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(data.S);
  Vec ev = es.eigenvalues();  // ascending
  data.spectrum = Vec(C.dim);
  for (int i = 0; i < C.dim; ++i) data.spectrum(i) = ev(C.dim - 1 - i);
  // Merge eigenvalues within 1e-9 * trace when reporting multiplicities.
  double tol = 1e-9 * std::max(1e-300, data.S.trace());
  int i = 0;
  while (i < C.dim) {
    int j = i;
    while (j + 1 < C.dim && data.spectrum(i) - data.spectrum(j + 1) <= tol)
      ++j;
    data.multiplicities.push_back(j - i + 1);
    i = j + 1;
  }
  return data;
}

CentralResidual central_residual(const Configuration& C, double exponent) {
  double I = moment_of_inertia(C);
  if (I <= 0)
    throw Error(ErrorCode::ZeroInertia, "central_residual: I(C) = 0");
  std::vector<Vec> gu = grad_potential(C, exponent);
  std::vector<Vec> gi = grad_inertia(C);
  double num = 0, den = 0, gu2 = 0;
  for (int i = 0; i < C.size(); ++i) {
    num += gu[i].dot(gi[i]);
    den += gi[i].squaredNorm();
    gu2 += gu[i].squaredNorm();
  }
  CentralResidual r;
  r.lambda = num / den;
  double res2 = 0;
  for (int i = 0; i < C.size(); ++i)
    res2 += (gu[i] - r.lambda * gi[i]).squaredNorm();
  r.residual = std::sqrt(res2) / std::max(1e-300, std::sqrt(gu2));
  return r;
}

Fingerprint fingerprint(const Configuration& C) {
  Fingerprint fp;
  fp.reserve(std::size_t(C.size()) * (C.size() - 1) / 2);
  for (int i = 0; i < C.size(); ++i)
    for (int j = i + 1; j < C.size(); ++j) {
      double a = C.masses[i], b = C.masses[j];
      if (a > b) std::swap(a, b);
      fp.push_back({a, b, (C.points[i] - C.points[j]).norm()});
    }
  std::sort(fp.begin(), fp.end());
  return fp;
}

double config_distance(const Configuration& A, const Configuration& B) {
  if (A.size() != B.size())
    throw Error(ErrorCode::SizeMismatch, "config_distance: body counts differ");
  Fingerprint fa = fingerprint(A), fb = fingerprint(B);
  double d = 0;
  for (std::size_t k = 0; k < fa.size(); ++k)
    for (int c = 0; c < 3; ++c)
      d = std::max(d, std::abs(fa[k][c] - fb[k][c]));
  return d;
}

bool same_configuration(const Configuration& A, const Configuration& B,
                        double tol) {
  if (A.size() != B.size() || A.dim != B.dim) return false;
  std::vector<char> used(B.size(), 0);
  for (int i = 0; i < A.size(); ++i) {
    bool found = false;
    for (int j = 0; j < B.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(A.masses[i] - B.masses[j]) <= tol &&
          (A.points[i] - B.points[j]).norm() <= tol) {
        used[j] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace cencon
