#include "cencon/dynamics.hpp"

#include <cmath>

namespace cencon {

namespace {

constexpr double kEncounterTol = 1e-6;

struct State {
  std::vector<Vec> x, v;
};

std::vector<Vec> accelerations(const Configuration& ref,
                               const std::vector<Vec>& x, double exponent) {
  const int n = int(x.size()), d = ref.dim;
  std::vector<Vec> a(n, Vec::Zero(d));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec dx = x[j] - x[i];
      double r = dx.norm();
      // x_i'' = grad_i U / m_i with U = sum m m / r^e
      Vec f = exponent * dx / std::pow(r, exponent + 2);
      a[i] += ref.masses[j] * f;
      a[j] -= ref.masses[i] * f;
    }
  return a;
}

double min_dist(const std::vector<Vec>& x) {
  double best = 1e300;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      best = std::min(best, (x[i] - x[j]).norm());
  return best;
}

double energy_of(const Configuration& ref, const State& s, double exponent) {
  double T = 0;
  for (std::size_t i = 0; i < s.v.size(); ++i)
    T += 0.5 * ref.masses[i] * s.v[i].squaredNorm();
  Configuration C = ref;
  C.points = s.x;
  return T - potential(C, exponent);
}

}  // namespace

Trajectory integrate(const Configuration& C, const std::vector<Vec>& velocities,
                     double t_end, double dt, double exponent,
                     int sample_every) {
  if (dt <= 0) throw Error(ErrorCode::InvalidInput, "integrate: dt must be > 0");
  if (int(velocities.size()) != C.size())
    throw Error(ErrorCode::SizeMismatch, "integrate: velocity count mismatch");

  Trajectory out;
  State s{C.points, velocities};
  const int n = C.size();
  double t = 0;
  int step = 0;
  auto sample = [&]() {
    out.times.push_back(t);
    out.positions.push_back(s.x);
    out.velocities.push_back(s.v);
    out.energy.push_back(energy_of(C, s, exponent));
  };
  sample();
  const int steps = int(std::llround(t_end / dt));
  for (step = 1; step <= steps; ++step) {
    if (n > 1) {
      // Abort on close encounters, including ones the fixed step can no
      // longer resolve (the step would jump across the singularity).
      double rmin = min_dist(s.x);
      double vmax = 0;
      for (const Vec& vi : s.v) vmax = std::max(vmax, vi.norm());
      if (rmin < kEncounterTol || vmax * dt > 0.25 * rmin) {
        out.aborted = true;
        out.abort_time = t;
        return out;
      }
    }
    // classic RK4 on (x, v)
    auto a1 = accelerations(C, s.x, exponent);
    std::vector<Vec> x2(n), v2(n);
    for (int i = 0; i < n; ++i) {
      x2[i] = s.x[i] + 0.5 * dt * s.v[i];
      v2[i] = s.v[i] + 0.5 * dt * a1[i];
    }
    auto a2 = accelerations(C, x2, exponent);
    std::vector<Vec> x3(n), v3(n);
    for (int i = 0; i < n; ++i) {
      x3[i] = s.x[i] + 0.5 * dt * v2[i];
      v3[i] = s.v[i] + 0.5 * dt * a2[i];
    }
    auto a3 = accelerations(C, x3, exponent);
    std::vector<Vec> x4(n), v4(n);
    for (int i = 0; i < n; ++i) {
      x4[i] = s.x[i] + dt * v3[i];
      v4[i] = s.v[i] + dt * a3[i];
    }
    auto a4 = accelerations(C, x4, exponent);
    for (int i = 0; i < n; ++i) {
      s.x[i] += (dt / 6.0) * (s.v[i] + 2 * v2[i] + 2 * v3[i] + v4[i]);
      s.v[i] += (dt / 6.0) * (a1[i] + 2 * a2[i] + 2 * a3[i] + a4[i]);
    }
    t = step * dt;
    if (step % sample_every == 0 || step == steps) sample();
  }
  return out;
}

double homothetic_test(const Configuration& C, double t_end, double dt,
                       double exponent) {
  std::vector<Vec> rest(C.size(), Vec::Zero(C.dim));
  Trajectory tr = integrate(C, rest, t_end, dt, exponent,
                            std::max(1, int(0.01 / dt)));
  double worst = 0;
  for (std::size_t k = 1; k < tr.positions.size(); ++k) {
    Configuration S = C;
    S.points = tr.positions[k];
    double I = moment_of_inertia(S);
    if (I <= 0) continue;
    for (Vec& p : S.points) p /= std::sqrt(I / moment_of_inertia(C));
    worst = std::max(worst, config_distance(C, S));
  }
  return worst;
}

double rotation_test(const Configuration& C, double t_end, double dt,
                     double exponent, double omega_scale) {
  if (C.dim != 2)
    throw Error(ErrorCode::InvalidInput,
                "rotation_test: planar configurations only");
  double U = potential(C, exponent);
  double I = moment_of_inertia(C);
  double omega = omega_scale * std::sqrt(U / I);
  std::vector<Vec> v(C.size(), Vec(2));
  for (int i = 0; i < C.size(); ++i) {
    v[i](0) = -omega * C.points[i](1);
    v[i](1) = omega * C.points[i](0);
  }
  Trajectory tr = integrate(C, v, t_end, dt, exponent,
                            std::max(1, int(0.01 / dt)));
  // The fingerprint is rotation-invariant, which performs the alignment; no
  // rescaling here, so a wrong omega shows up as a pulsating size.
  double worst = 0;
  for (std::size_t k = 1; k < tr.positions.size(); ++k) {
    Configuration S = C;
    S.points = tr.positions[k];
    worst = std::max(worst, config_distance(C, S));
  }
  return worst;
}

}  // namespace cencon
