#include "clamber/sim/physics.hpp"

#include <algorithm>
#include <cmath>

namespace clamber::sim {

namespace {

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

StepResult step(const RobotState& state, const JointVec& action, const Terrain& terrain,
                const RobotModel& model, const SimConfig& cfg) {
  for (double a : action)
    if (!std::isfinite(a)) throw SimDiverged("action");
  if (!state.finite()) throw SimDiverged("input state");

  const double dt = cfg.substep_dt();
  StepResult out;
  RobotState s = state;

  for (int sub = 0; sub < cfg.physics_substeps; ++sub) {
    const FkCache fk = forward_kinematics(s, model);
    const Mat99 M = mass_matrix(fk, model);
    Vec9 Q = Vec9::Zero();

    // gravity and the velocity-product bias, per point mass
    const Vec2 grav(0.0, -cfg.gravity);
    for (int i = 0; i < kNumLinks; ++i) {
      const auto& lk = fk.links[i];
      Q.noalias() += model.link_masses[i] * lk.jacobian.transpose() * (grav - lk.centripetal);
    }

    // PD torques toward the targets, clamped
    for (int j = 0; j < kNumJoints; ++j) {
      const double tau_pd = model.kp[j] * (action[j] - s.q[j]) - model.kd[j] * s.qd[j];
      const double tau = clamp(tau_pd, -model.torque_limits[j], model.torque_limits[j]);
      Q[3 + j] += tau;
      out.applied_torques[j] = tau;
    }

    // penalty-spring contacts with friction-cone clamping
    out.contacts.clear();
    for (int p = 0; p < kNumBodyParts; ++p) {
      const auto& pk = fk.parts[p];
      const TerrainContact tc = terrain_contact(terrain, pk.pos.x(), pk.pos.y());
      if (tc.depth <= 0.0) continue;
      const Vec2 n(tc.nx, tc.nz);
      const Vec2 t(-tc.nz, tc.nx);
      const double approach = -pk.vel.dot(n);  // > 0 while penetrating deeper
      double normal =
          cfg.contact_stiffness * tc.depth + cfg.contact_damping * approach;
      if (normal < 0.0) normal = 0.0;
      const double vt = pk.vel.dot(t);
      double tangential = -cfg.tangential_damping * vt;
      const double cone = cfg.friction_static * normal;
      if (std::abs(tangential) > cone)
        tangential = -cfg.friction_dynamic * normal * (vt > 0.0 ? 1.0 : -1.0);
      const Vec2 force = normal * n + tangential * t;
      Q.noalias() += pk.jacobian.transpose() * force;

      ContactPoint cp;
      cp.body_part = static_cast<BodyPart>(p);
      cp.position = pk.pos;
      cp.normal_force = normal;
      cp.tangential_force = tangential;
      cp.penetration = tc.depth;
      cp.velocity = pk.vel;
      out.contacts.push_back(cp);
    }

    // semi-implicit Euler
    Vec9 u = generalized_position(s);
    Vec9 v = generalized_velocity(s);
    const Vec9 vdot = M.ldlt().solve(Q);
    v += dt * vdot;
    u += dt * v;
    set_generalized(s, u, v);

    // hard joint limits: clamp and kill the joint rate
    for (int j = 0; j < kNumJoints; ++j) {
      if (s.q[j] < model.joint_min[j]) {
        s.q[j] = model.joint_min[j];
        if (s.qd[j] < 0.0) s.qd[j] = 0.0;
      } else if (s.q[j] > model.joint_max[j]) {
        s.q[j] = model.joint_max[j];
        if (s.qd[j] > 0.0) s.qd[j] = 0.0;
      }
    }
    s.time += dt;

    if (!s.finite()) {
      if (!std::isfinite(s.x) || !std::isfinite(s.z)) throw SimDiverged("base position");
      if (!std::isfinite(s.vx) || !std::isfinite(s.vz)) throw SimDiverged("base velocity");
      throw SimDiverged("joint state");
    }
  }

  out.state = s;
  return out;
}

RobotState apply_push(const RobotState& state, double dvx, double dvz, double dpitch_rate) {
  RobotState s = state;
  s.vx += dvx;
  s.vz += dvz;
  s.pitch_rate += dpitch_rate;
  return s;
}

double mechanical_energy(const RobotState& state, const RobotModel& model, double gravity) {
  const FkCache fk = forward_kinematics(state, model);
  const Vec9 v = generalized_velocity(state);
  const Mat99 M = mass_matrix(fk, model);
  double e = 0.5 * v.dot(M * v);
  for (int i = 0; i < kNumLinks; ++i)
    e += model.link_masses[i] * gravity * fk.links[i].center.y();
  return e;
}

}  // namespace clamber::sim
