#pragma once

#include <array>
#include <cstddef>

namespace clamber::sim {

inline constexpr int kNumJoints = 6;
inline constexpr int kNumLinks = 7;  // torso, thigh x2, shank x2, upper arm, forearm

/// Actuated joint indexing used everywhere (q, qd, actions, torques).
enum Joint : int { kHipL = 0, kKneeL = 1, kHipR = 2, kKneeR = 3, kShoulder = 4, kElbow = 5 };

enum Link : int {
  kTorso = 0,
  kThighL = 1,
  kShankL = 2,
  kThighR = 3,
  kShankR = 4,
  kUpperArm = 5,
  kForearm = 6,
};

using JointVec = std::array<double, kNumJoints>;

/// Planar biped description: torso with head point, two 2-joint legs
/// attached at the pelvis, one 2-joint arm attached at the shoulder.
struct RobotModel {
  std::array<double, kNumLinks> link_lengths;  // m
  std::array<double, kNumLinks> link_masses;   // kg (head mass lumped into torso)
  JointVec joint_min;                          // rad, hard limits
  JointVec joint_max;
  JointVec kp;             // PD stiffness, N*m/rad
  JointVec kd;             // PD damping, N*m*s/rad
  JointVec torque_limits;  // N*m
  JointVec q_stand;        // nominal standing joint configuration
  JointVec q_prone;        // nominal prone joint configuration
  double head_offset = 0.12;  // m, beyond the shoulder along the torso axis
  double joint_armature = 2e-3;  // kg*m^2 reflected rotor inertia per joint

  /// Soft limits for the joint-limit regularizer: hard range shrunk by 10%.
  double soft_min(int j) const {
    return joint_min[j] + 0.05 * (joint_max[j] - joint_min[j]);
  }
  double soft_max(int j) const {
    return joint_max[j] - 0.05 * (joint_max[j] - joint_min[j]);
  }

  double total_mass() const {
    double m = 0.0;
    for (double mi : link_masses) m += mi;
    return m;
  }

  void validate() const;  // throws std::invalid_argument on bad invariants
};

/// Desk-scale default biped. Leg length 0.9 m so the 0.55-0.85 m platform
/// band spans 61-94% of leg length.
RobotModel default_model();

/// Contact and integration parameters.
struct SimConfig {
  double control_dt = 0.02;  // s, 50 Hz action rate
  int physics_substeps = 4;  // 200 Hz integration
  double contact_stiffness = 2.0e4;   // N/m
  double contact_damping = 400.0;     // N*s/m
  double tangential_damping = 600.0;  // N*s/m, viscous friction model
  double friction_static = 1.0;
  double friction_dynamic = 0.8;
  double restitution = 0.0;  // penalty contact: no restitution by default
  double gravity = 9.81;     // m/s^2

  double substep_dt() const { return control_dt / physics_substeps; }
  void validate() const;
};

}  // namespace clamber::sim
