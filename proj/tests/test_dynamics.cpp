#include "doctest.h"

#include <cmath>

#include "cencon/dynamics.hpp"
#include "cencon/solver.hpp"

using namespace cencon;

namespace {

Configuration lagrange_triangle_i1(std::vector<double> masses = {1, 1, 1}) {
  Configuration C;
  C.dim = 2;
  for (int k = 0; k < 3; ++k) {
    Vec p(2);
    double a = 2 * M_PI * k / 3;
    p << std::cos(a), std::sin(a);
    C.points.push_back(p);
    C.masses.push_back(masses[k]);
  }
  C = centered(C);
  double I = moment_of_inertia(C);
  for (Vec& p : C.points) p /= std::sqrt(I);
  return C;
}

Configuration square_i1() {
  Configuration C;
  C.dim = 2;
  for (auto [x, y] :
       {std::pair{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}) {
    Vec p(2);
    p << x, y;
    C.points.push_back(p);
    C.masses.push_back(1.0);
  }
  double I = moment_of_inertia(C);
  for (Vec& p : C.points) p /= std::sqrt(I);
  return C;
}

}  // namespace

TEST_CASE("two-body circular orbit stays on the known circle") {
  // equal masses m at +-(d/2, 0): circular orbit with omega^2 = 2m/d^3
  const double m = 1.0, d = 1.0;
  Configuration C;
  C.dim = 2;
  C.points = {Vec(2), Vec(2)};
  C.points[0] << d / 2, 0;
  C.points[1] << -d / 2, 0;
  C.masses = {m, m};
  double omega = std::sqrt(2 * m / (d * d * d));
  std::vector<Vec> v(2, Vec(2));
  v[0] << 0, omega * d / 2;
  v[1] << 0, -omega * d / 2;
  double period = 2 * M_PI / omega;
  Trajectory tr = integrate(C, v, period, period / 20000, 1.0, 100);
  REQUIRE_FALSE(tr.aborted);
  for (const auto& xs : tr.positions)
    for (const Vec& p : xs)
      CHECK(std::abs(p.norm() - d / 2) < 1e-6);
}

TEST_CASE("single body moves on a straight line") {
  Configuration C;
  C.dim = 3;
  Vec p(3);
  p << 0.3, -0.2, 0.1;
  C.points = {p};
  C.masses = {2.0};
  Vec v0(3);
  v0 << 1.0, 0.5, -0.25;
  Trajectory tr = integrate(C, {v0}, 1.0, 1e-3, 1.0, 250);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    Vec expect = p + tr.times[k] * v0;
    CHECK((tr.positions[k][0] - expect).norm() < 1e-12);
  }
}

TEST_CASE("energy drift stays below 1e-6 over 1e4 RK4 steps at dt=1e-3") {
  Configuration C = lagrange_triangle_i1();
  // uniform rotation keeps separations bounded over the long window
  double omega = std::sqrt(potential(C) / moment_of_inertia(C));
  std::vector<Vec> v(C.size(), Vec(2));
  for (int i = 0; i < C.size(); ++i) {
    v[i](0) = -omega * C.points[i](1);
    v[i](1) = omega * C.points[i](0);
  }
  Trajectory tr = integrate(C, v, 10.0, 1e-3, 1.0, 100);
  REQUIRE_FALSE(tr.aborted);
  double e0 = tr.energy.front();
  for (double e : tr.energy)
    CHECK(std::abs(e - e0) / std::abs(e0) < 1e-6);

  // linear momentum conservation
  Vec ptot = Vec::Zero(2);
  for (int i = 0; i < C.size(); ++i)
    ptot += C.masses[i] * tr.velocities.back()[i];
  CHECK(ptot.norm() < 1e-10);
}

TEST_CASE("homothetic release certifies central configurations") {
  CHECK(homothetic_test(lagrange_triangle_i1(), 0.1, 1e-4) < 1e-6);
  CHECK(homothetic_test(square_i1(), 0.1, 1e-4) < 1e-6);

  // negative control: a non-central shape deforms
  Configuration bad = square_i1();
  bad.points[0] *= 1.4;
  bad = centered(bad);
  double I = moment_of_inertia(bad);
  for (Vec& p : bad.points) p /= std::sqrt(I);
  CHECK(homothetic_test(bad, 0.1, 1e-4) > 1e-3);
}

TEST_CASE("homothetic deviation shrinks at high order in dt") {
  Configuration C = lagrange_triangle_i1();
  double d1 = homothetic_test(C, 0.05, 4e-4);
  double d2 = homothetic_test(C, 0.05, 2e-4);
  double d3 = homothetic_test(C, 0.05, 1e-4);
  // observed order >= 3 on a dt-halving ladder (guard for noise floor)
  if (d1 > 1e-14 && d2 > 1e-14) {
    CHECK(d1 / d2 > 8.0 * 0.7);
    CHECK(d2 / d3 > 8.0 * 0.5);
  }
}

TEST_CASE("uniform rotation preserves the shape of central configurations") {
  CHECK(rotation_test(square_i1(), 0.5, 1e-4) < 1e-6);
  CHECK(rotation_test(lagrange_triangle_i1({1, 2, 3}), 0.5, 1e-4) < 1e-6);
  // 10% off the centripetal balance: the shape visibly deforms
  CHECK(rotation_test(square_i1(), 0.5, 1e-4, 1.1) > 1e-3);
}

TEST_CASE("close encounters abort the integration") {
  // head-on free fall of two unit masses from separation 1: total collision
  // at t = (pi/2) r0^(3/2) / sqrt(2 mu) = pi/4 with mu = m1 + m2 = 2
  Configuration C;
  C.dim = 2;
  C.points = {Vec(2), Vec(2)};
  C.points[0] << 0.5, 0;
  C.points[1] << -0.5, 0;
  C.masses = {1, 1};
  std::vector<Vec> rest(2, Vec::Zero(2));
  Trajectory tr = integrate(C, rest, 1.0, 1e-4);
  CHECK(tr.aborted);
  CHECK(tr.abort_time == doctest::Approx(M_PI / 4).epsilon(1e-2));
}
