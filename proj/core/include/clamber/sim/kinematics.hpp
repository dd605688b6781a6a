#pragma once

#include <Eigen/Dense>
#include <array>

#include "clamber/sim/model.hpp"
#include "clamber/sim/state.hpp"

namespace clamber::sim {

using Vec2 = Eigen::Vector2d;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat29 = Eigen::Matrix<double, 2, 9>;
using Mat99 = Eigen::Matrix<double, 9, 9>;

/// Generalized coordinates u = [x, z, pitch, q0..q5] and their rates.
Vec9 generalized_position(const RobotState& s);
Vec9 generalized_velocity(const RobotState& s);
void set_generalized(RobotState& s, const Vec9& u, const Vec9& v);

/// Contact candidates, in the order forces are accumulated and reported.
enum class BodyPart : int {
  kFootL = 0,
  kFootR = 1,
  kHand = 2,
  kTorsoLo = 3,  // pelvis
  kTorsoHi = 4,  // shoulder
  kHead = 5,
};
inline constexpr int kNumBodyParts = 6;
const char* body_part_name(BodyPart p);

struct BodyPoints {
  Vec2 head, pelvis, shoulder, foot_l, foot_r, hand, knee_l, knee_r, elbow;
  Vec2 feet_center() const { return 0.5 * (foot_l + foot_r); }
};

/// One rigid body in the generalized-coordinate model: a point mass at the
/// link center plus a uniform-rod inertia about it.
struct LinkKinematics {
  Vec2 center;        // world position of the link CoM
  Mat29 jacobian;     // d(center)/du
  Vec2 centripetal;   // acceleration of the center when u_ddot = 0
  Vec9 angle_select;  // du -> link angular velocity (constant 0/1 selector)
};

struct PointKinematics {
  Vec2 pos;
  Vec2 vel;
  Mat29 jacobian;
  Vec2 centripetal;
};

/// Everything the dynamics and reward terms need from one configuration.
struct FkCache {
  std::array<LinkKinematics, kNumLinks> links;
  std::array<PointKinematics, kNumBodyParts> parts;
  BodyPoints points;
  Vec2 com;
  Vec2 com_vel;
};

FkCache forward_kinematics(const RobotState& s, const RobotModel& m);

/// Mass-weighted mean of the link centers.
Vec2 compute_com(const RobotState& s, const RobotModel& m);

/// Named body points (head, pelvis, feet, hand, ...).
BodyPoints body_points(const RobotState& s, const RobotModel& m);

/// Generalized mass matrix: point masses through their Jacobians plus rod
/// inertias, plus joint armature on the actuated coordinates.
Mat99 mass_matrix(const FkCache& fk, const RobotModel& m);

}  // namespace clamber::sim
