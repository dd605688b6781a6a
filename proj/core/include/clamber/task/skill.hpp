#pragma once

#include <array>
#include <string>

namespace clamber::task {

/// The six-skill library: four goal-reaching maneuvers plus two
/// command-tracking locomotion skills.
enum class SkillId : int {
  kClimbUp = 0,
  kClimbDown = 1,
  kStandUp = 2,
  kLieDown = 3,
  kWalk = 4,
  kCrawl = 5,
};
inline constexpr int kNumSkills = 6;

inline constexpr std::array<SkillId, 4> kManeuverSkills = {
    SkillId::kClimbUp, SkillId::kClimbDown, SkillId::kStandUp, SkillId::kLieDown};

inline bool is_maneuver(SkillId s) {
  return s == SkillId::kClimbUp || s == SkillId::kClimbDown || s == SkillId::kStandUp ||
         s == SkillId::kLieDown;
}
inline bool is_locomotion(SkillId s) { return !is_maneuver(s); }
inline bool uses_elevation_map(SkillId s) {
  return s == SkillId::kClimbUp || s == SkillId::kClimbDown;
}

const char* skill_name(SkillId s);
SkillId skill_from_name(const std::string& name);  // throws on unknown name

}  // namespace clamber::task
