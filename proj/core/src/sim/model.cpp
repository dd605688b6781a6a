#include "clamber/sim/model.hpp"

#include <stdexcept>
#include <string>

namespace clamber::sim {

void RobotModel::validate() const {
  for (int i = 0; i < kNumLinks; ++i) {
    if (!(link_lengths[i] > 0.0))
      throw std::invalid_argument("link length " + std::to_string(i) + " must be > 0");
    if (!(link_masses[i] > 0.0))
      throw std::invalid_argument("link mass " + std::to_string(i) + " must be > 0");
  }
  for (int j = 0; j < kNumJoints; ++j) {
    if (!(joint_min[j] < joint_max[j]))
      throw std::invalid_argument("joint limit min >= max at joint " + std::to_string(j));
    if (q_stand[j] < joint_min[j] || q_stand[j] > joint_max[j])
      throw std::invalid_argument("q_stand outside limits at joint " + std::to_string(j));
    if (q_prone[j] < joint_min[j] || q_prone[j] > joint_max[j])
      throw std::invalid_argument("q_prone outside limits at joint " + std::to_string(j));
    if (kp[j] < 0.0 || kd[j] < 0.0)
      throw std::invalid_argument("negative PD gain at joint " + std::to_string(j));
    if (!(torque_limits[j] > 0.0))
      throw std::invalid_argument("torque limit must be > 0 at joint " + std::to_string(j));
  }
  if (head_offset < 0.0) throw std::invalid_argument("head_offset must be >= 0");
}

RobotModel default_model() {
  RobotModel m;
  m.link_lengths = {0.60, 0.50, 0.50, 0.50, 0.50, 0.35, 0.35};
  m.link_masses = {10.0, 2.5, 1.5, 2.5, 1.5, 1.0, 0.8};
  //               hipL   kneeL  hipR   kneeR  shoulder elbow
  m.joint_min = {-1.60, -2.70, -1.60, -2.70, -3.10, -0.05};
  m.joint_max = {2.90, 0.05, 2.90, 0.05, 3.10, 2.80};
  m.kp = {180.0, 180.0, 180.0, 180.0, 120.0, 120.0};
  m.kd = {8.0, 8.0, 8.0, 8.0, 6.0, 6.0};
  m.torque_limits = {160.0, 160.0, 160.0, 160.0, 100.0, 80.0};
  m.q_stand = {0.25, -0.50, 0.25, -0.50, 0.00, 0.30};
  m.q_prone = {-0.10, -0.15, -0.10, -0.15, 1.30, 0.40};
  m.head_offset = 0.15;
  m.joint_armature = 2e-3;
  m.validate();
  return m;
}

void SimConfig::validate() const {
  if (!(control_dt > 0.0)) throw std::invalid_argument("control_dt must be > 0");
  if (physics_substeps < 1) throw std::invalid_argument("physics_substeps must be >= 1");
  if (contact_stiffness < 0.0 || contact_damping < 0.0 || tangential_damping < 0.0)
    throw std::invalid_argument("contact parameters must be >= 0");
  if (!(friction_dynamic >= 0.0 && friction_dynamic <= friction_static))
    throw std::invalid_argument("require 0 <= mu_d <= mu_s");
  if (restitution < 0.0 || restitution > 1.0)
    throw std::invalid_argument("restitution must be in [0, 1]");
}

}  // namespace clamber::sim
