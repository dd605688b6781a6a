#include "clamber/distill/mix.hpp"

#include <cmath>
#include <stdexcept>

namespace clamber::distill {

void EnvMixSpec::validate() const {
  if (entries.empty()) throw std::invalid_argument("environment mix is empty");
  double sum = 0.0;
  for (const auto& e : entries) {
    if (e.skills.empty() || e.skills.size() > 2)
      throw std::invalid_argument("mix entry must hold 1 or 2 skills");
    if (e.proportion < 0.0) throw std::invalid_argument("mix proportion must be >= 0");
    sum += e.proportion;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("mix proportions must sum to 1");
}

EnvMixSpec EnvMixSpec::defaults() {
  using task::SkillId;
  EnvMixSpec m;
  m.entries = {
      {{SkillId::kWalk}, 0.17, "rough+plane", "omni"},
      {{SkillId::kCrawl}, 0.08, "plane", "omni"},
      {{SkillId::kStandUp, SkillId::kWalk}, 0.07, "plane", "zero+omni"},
      {{SkillId::kWalk, SkillId::kClimbUp}, 0.16, "platform", "forward"},
      {{SkillId::kClimbUp, SkillId::kCrawl}, 0.12, "platform", "forward+lateral"},
      {{SkillId::kCrawl, SkillId::kClimbDown}, 0.20, "platform", "lateral"},
      {{SkillId::kClimbDown, SkillId::kWalk}, 0.15, "platform", "lateral+backward"},
      {{SkillId::kLieDown, SkillId::kCrawl}, 0.05, "plane", "zero+omni"},
  };
  m.validate();
  return m;
}

int sample_mix_assignment(const EnvMixSpec& mix, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < mix.entries.size(); ++i) {
    acc += mix.entries[i].proportion;
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(mix.entries.size()) - 1;
}

}  // namespace clamber::distill
