#pragma once

#include <array>
#include <cmath>

#include "clamber/sim/model.hpp"

namespace clamber::sim {

/// Planar floating-base state: pelvis position, torso pitch, six joints.
/// pitch is the CCW tilt of the torso axis away from vertical (0 = upright,
/// -pi/2 = torso horizontal pointing +x, i.e. prone facing forward).
struct RobotState {
  double x = 0.0;
  double z = 0.0;
  double pitch = 0.0;
  double vx = 0.0;
  double vz = 0.0;
  double pitch_rate = 0.0;
  JointVec q{};
  JointVec qd{};
  double time = 0.0;

  bool finite() const {
    auto ok = [](double v) { return std::isfinite(v); };
    if (!(ok(x) && ok(z) && ok(pitch) && ok(vx) && ok(vz) && ok(pitch_rate) && ok(time)))
      return false;
    for (int j = 0; j < kNumJoints; ++j)
      if (!ok(q[j]) || !ok(qd[j])) return false;
    return true;
  }
};

}  // namespace clamber::sim
