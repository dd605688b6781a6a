#include "clamber/sim/kinematics.hpp"

#include <cmath>

namespace clamber::sim {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

/// Walks a kinematic chain outward from the pelvis, accumulating position,
/// Jacobian and the centripetal acceleration (point acceleration at zero
/// generalized acceleration).
struct ChainCursor {
  Vec2 p;
  Mat29 jac;
  Vec2 a0;

  static ChainCursor at_base(const Vec9& u) {
    ChainCursor c;
    c.p = Vec2(u[0], u[1]);
    c.jac.setZero();
    c.jac(0, 0) = 1.0;
    c.jac(1, 1) = 1.0;
    c.a0.setZero();
    return c;
  }

  void advance(double len, double angle, const Vec9& sel, const Vec9& v) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    p += len * Vec2(ca, sa);
    for (int d = 2; d < 9; ++d) {
      if (sel[d] != 0.0) {
        jac(0, d) += len * -sa;
        jac(1, d) += len * ca;
      }
    }
    const double omega = sel.dot(v);
    a0 += -len * omega * omega * Vec2(ca, sa);
  }
};

Vec9 selector(std::initializer_list<int> dofs) {
  Vec9 s = Vec9::Zero();
  for (int d : dofs) s[d] = 1.0;
  return s;
}

}  // namespace

Vec9 generalized_position(const RobotState& s) {
  Vec9 u;
  u << s.x, s.z, s.pitch, s.q[0], s.q[1], s.q[2], s.q[3], s.q[4], s.q[5];
  return u;
}

Vec9 generalized_velocity(const RobotState& s) {
  Vec9 v;
  v << s.vx, s.vz, s.pitch_rate, s.qd[0], s.qd[1], s.qd[2], s.qd[3], s.qd[4], s.qd[5];
  return v;
}

void set_generalized(RobotState& s, const Vec9& u, const Vec9& v) {
  s.x = u[0];
  s.z = u[1];
  s.pitch = u[2];
  s.vx = v[0];
  s.vz = v[1];
  s.pitch_rate = v[2];
  for (int j = 0; j < kNumJoints; ++j) {
    s.q[j] = u[3 + j];
    s.qd[j] = v[3 + j];
  }
}

const char* body_part_name(BodyPart p) {
  switch (p) {
    case BodyPart::kFootL: return "foot_L";
    case BodyPart::kFootR: return "foot_R";
    case BodyPart::kHand: return "hand";
    case BodyPart::kTorsoLo: return "torso_lo";
    case BodyPart::kTorsoHi: return "torso_hi";
    case BodyPart::kHead: return "head";
  }
  return "?";
}

FkCache forward_kinematics(const RobotState& s, const RobotModel& m) {
  FkCache fk;
  const Vec9 u = generalized_position(s);
  const Vec9 v = generalized_velocity(s);

  const double pitch = s.pitch;
  const double a_torso = kHalfPi + pitch;
  const double a_thigh_l = -kHalfPi + pitch + s.q[kHipL];
  const double a_shank_l = a_thigh_l + s.q[kKneeL];
  const double a_thigh_r = -kHalfPi + pitch + s.q[kHipR];
  const double a_shank_r = a_thigh_r + s.q[kKneeR];
  const double a_upper = -kHalfPi + pitch + s.q[kShoulder];
  const double a_fore = a_upper + s.q[kElbow];

  const Vec9 sel_torso = selector({2});
  const Vec9 sel_thigh_l = selector({2, 3});
  const Vec9 sel_shank_l = selector({2, 3, 4});
  const Vec9 sel_thigh_r = selector({2, 5});
  const Vec9 sel_shank_r = selector({2, 5, 6});
  const Vec9 sel_upper = selector({2, 7});
  const Vec9 sel_fore = selector({2, 7, 8});

  auto set_link = [&](int link, const ChainCursor& c, const Vec9& sel) {
    fk.links[link].center = c.p;
    fk.links[link].jacobian = c.jac;
    fk.links[link].centripetal = c.a0;
    fk.links[link].angle_select = sel;
  };
  auto set_part = [&](BodyPart part, const ChainCursor& c) {
    auto& pk = fk.parts[static_cast<int>(part)];
    pk.pos = c.p;
    pk.jacobian = c.jac;
    pk.centripetal = c.a0;
    pk.vel = c.jac * v;
  };

  // torso chain: pelvis -> torso center -> shoulder -> head
  ChainCursor c = ChainCursor::at_base(u);
  set_part(BodyPart::kTorsoLo, c);
  fk.points.pelvis = c.p;
  c.advance(0.5 * m.link_lengths[kTorso], a_torso, sel_torso, v);
  set_link(kTorso, c, sel_torso);
  c.advance(0.5 * m.link_lengths[kTorso], a_torso, sel_torso, v);
  set_part(BodyPart::kTorsoHi, c);
  fk.points.shoulder = c.p;
  const ChainCursor shoulder = c;
  c.advance(m.head_offset, a_torso, sel_torso, v);
  set_part(BodyPart::kHead, c);
  fk.points.head = c.p;

  // left leg
  c = ChainCursor::at_base(u);
  c.advance(0.5 * m.link_lengths[kThighL], a_thigh_l, sel_thigh_l, v);
  set_link(kThighL, c, sel_thigh_l);
  c.advance(0.5 * m.link_lengths[kThighL], a_thigh_l, sel_thigh_l, v);
  fk.points.knee_l = c.p;
  c.advance(0.5 * m.link_lengths[kShankL], a_shank_l, sel_shank_l, v);
  set_link(kShankL, c, sel_shank_l);
  c.advance(0.5 * m.link_lengths[kShankL], a_shank_l, sel_shank_l, v);
  set_part(BodyPart::kFootL, c);
  fk.points.foot_l = c.p;

  // right leg
  c = ChainCursor::at_base(u);
  c.advance(0.5 * m.link_lengths[kThighR], a_thigh_r, sel_thigh_r, v);
  set_link(kThighR, c, sel_thigh_r);
  c.advance(0.5 * m.link_lengths[kThighR], a_thigh_r, sel_thigh_r, v);
  fk.points.knee_r = c.p;
  c.advance(0.5 * m.link_lengths[kShankR], a_shank_r, sel_shank_r, v);
  set_link(kShankR, c, sel_shank_r);
  c.advance(0.5 * m.link_lengths[kShankR], a_shank_r, sel_shank_r, v);
  set_part(BodyPart::kFootR, c);
  fk.points.foot_r = c.p;

  // arm, hanging from the shoulder
  c = shoulder;
  c.advance(0.5 * m.link_lengths[kUpperArm], a_upper, sel_upper, v);
  set_link(kUpperArm, c, sel_upper);
  c.advance(0.5 * m.link_lengths[kUpperArm], a_upper, sel_upper, v);
  fk.points.elbow = c.p;
  c.advance(0.5 * m.link_lengths[kForearm], a_fore, sel_fore, v);
  set_link(kForearm, c, sel_fore);
  c.advance(0.5 * m.link_lengths[kForearm], a_fore, sel_fore, v);
  set_part(BodyPart::kHand, c);
  fk.points.hand = c.p;

  // mass-weighted CoM and its velocity
  Vec2 com = Vec2::Zero();
  Mat29 com_jac = Mat29::Zero();
  double mass = 0.0;
  for (int i = 0; i < kNumLinks; ++i) {
    com += m.link_masses[i] * fk.links[i].center;
    com_jac += m.link_masses[i] * fk.links[i].jacobian;
    mass += m.link_masses[i];
  }
  fk.com = com / mass;
  fk.com_vel = (com_jac / mass) * v;
  return fk;
}

Vec2 compute_com(const RobotState& s, const RobotModel& m) {
  return forward_kinematics(s, m).com;
}

BodyPoints body_points(const RobotState& s, const RobotModel& m) {
  return forward_kinematics(s, m).points;
}

Mat99 mass_matrix(const FkCache& fk, const RobotModel& m) {
  Mat99 M = Mat99::Zero();
  for (int i = 0; i < kNumLinks; ++i) {
    const auto& lk = fk.links[i];
    M.noalias() += m.link_masses[i] * lk.jacobian.transpose() * lk.jacobian;
    const double rod_inertia =
        m.link_masses[i] * m.link_lengths[i] * m.link_lengths[i] / 12.0;
    M.noalias() += rod_inertia * lk.angle_select * lk.angle_select.transpose();
  }
  for (int j = 0; j < kNumJoints; ++j) M(3 + j, 3 + j) += m.joint_armature;
  return M;
}

}  // namespace clamber::sim
