#pragma once

#include <vector>

#include "cencon/nbody.hpp"

namespace cencon {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Vec>> positions;   // per sample, per body
  std::vector<std::vector<Vec>> velocities;
  std::vector<double> energy;                // T - U per sample
  bool aborted = false;
  double abort_time = 0.0;  // set when a close encounter stopped the run
};

/// Fixed-step RK4 on the equations of motion x_i'' = grad_i U / m_i (the
/// inverse-square force at exponent 1). Aborts with CollisionAbort data in
/// the trajectory when the minimal separation falls below 1e-6.
Trajectory integrate(const Configuration& C, const std::vector<Vec>& velocities,
                     double t_end, double dt, double exponent = 1.0,
                     int sample_every = 1);

/// Release from rest and measure the maximal shape deviation from the initial
/// configuration, rescaling each sample to I = 1. Near zero certifies a
/// homothetic collapse, i.e. a central configuration.
double homothetic_test(const Configuration& C, double t_end, double dt,
                       double exponent = 1.0);

/// Planar uniform-rotation test: initial velocities v_i = omega J x_i with
/// omega^2 = U/I (centripetal balance at a central configuration). Returns
/// the maximal fingerprint deviation from the initial shape, which is
/// rotation-invariant. omega_scale perturbs omega for negative controls.
double rotation_test(const Configuration& C, double t_end, double dt,
                     double exponent = 1.0, double omega_scale = 1.0);

}  // namespace cencon
