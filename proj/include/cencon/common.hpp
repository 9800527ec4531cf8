#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cencon {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Matrix-entry tolerance used for element identity, orthogonality checks and
// point-on-wall tests throughout the library.
inline constexpr double kGroupTol = 1e-9;

enum class ErrorCode {
  NotOrthogonal,
  ClosureOverflow,
  UnknownName,
  BadParameter,
  NotIsotropy,
  NotSymmetric,
  EmptyStratum,
  CollisionSingularity,
  SizeMismatch,
  OrbitCollision,
  StratumViolation,
  ZeroInertia,
  RigidShape,
  NoConvergence,
  ContinuationLost,
  InfeasibleSpectrum,
  DegenerateGeometry,
  CollisionAbort,
  InvalidInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotIsotropy: return "NotIsotropy";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::EmptyStratum: return "EmptyStratum";
    case ErrorCode::CollisionSingularity: return "CollisionSingularity";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::OrbitCollision: return "OrbitCollision";
    case ErrorCode::StratumViolation: return "StratumViolation";
    case ErrorCode::ZeroInertia: return "ZeroInertia";
    case ErrorCode::RigidShape: return "RigidShape";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ContinuationLost: return "ContinuationLost";
    case ErrorCode::InfeasibleSpectrum: return "InfeasibleSpectrum";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::CollisionAbort: return "CollisionAbort";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// Deterministic RNG: mt19937_64 for the stream, explicit bit-to-double
// conversion so draws do not depend on the standard library's distribution
// implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  std::uint64_t next_u64() {
    // xorshift* generator; deterministic across platforms.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  // Uniform in [0, 1).
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return (z ^ (z >> 31)) | 1ULL;
  }
  std::uint64_t state_;
};

}  // namespace cencon
