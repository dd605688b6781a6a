#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clamber/sim/kinematics.hpp"
#include "clamber/sim/model.hpp"
#include "clamber/sim/state.hpp"
#include "clamber/sim/terrain.hpp"

namespace clamber::sim {

/// Penalty-spring contact emitted by a step, force split into (normal,
/// tangential) components along the local surface frame.
struct ContactPoint {
  BodyPart body_part;
  Vec2 position;
  double normal_force = 0.0;      // N, >= 0
  double tangential_force = 0.0;  // N, |.| <= mu_s * normal
  double penetration = 0.0;       // m
  Vec2 velocity = Vec2::Zero();   // world velocity of the contact point
  double force_magnitude() const {
    return std::sqrt(normal_force * normal_force + tangential_force * tangential_force);
  }
};

class SimDiverged : public std::runtime_error {
 public:
  explicit SimDiverged(const std::string& what_quantity)
      : std::runtime_error("simulation diverged: non-finite " + what_quantity),
        quantity(what_quantity) {}
  std::string quantity;
};

struct StepResult {
  RobotState state;
  std::vector<ContactPoint> contacts;  // from the last substep
  JointVec applied_torques{};          // clamped PD torques, last substep
};

/// Advance one control period: `physics_substeps` semi-implicit Euler
/// substeps with PD torques toward `action` (joint position targets).
StepResult step(const RobotState& state, const JointVec& action, const Terrain& terrain,
                const RobotModel& model, const SimConfig& cfg);

/// Additive velocity perturbation (external push).
RobotState apply_push(const RobotState& state, double dvx, double dvz, double dpitch_rate);

/// Kinetic + gravitational potential energy of the full model.
double mechanical_energy(const RobotState& state, const RobotModel& model, double gravity);

}  // namespace clamber::sim
