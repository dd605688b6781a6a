#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clamber/common/rng.hpp"
#include "clamber/task/skill.hpp"

namespace clamber::distill {

/// Divide-and-conquer environment mixture: each training environment hosts
/// a single core skill or two consecutive skills with a fixed proportion.
struct EnvMixSpec {
  struct Entry {
    std::vector<task::SkillId> skills;  // 1 or 2, consecutive
    double proportion = 0.0;
    std::string terrain;  // "plane", "rough", "platform"
    std::string command;  // velocity command profile label
  };
  std::vector<Entry> entries;

  void validate() const;  // proportions sum to 1, <= 2 skills per entry

  /// Default eight-entry mixture (walk 0.17, crawl 0.08, stand-up+walk 0.07,
  /// walk+climb-up 0.16, climb-up+crawl 0.12, crawl+climb-down 0.20,
  /// climb-down+walk 0.15, lie-down+crawl 0.05).
  static EnvMixSpec defaults();
};

/// Index of the mixture entry assigned to one environment draw.
int sample_mix_assignment(const EnvMixSpec& mix, Rng& rng);

}  // namespace clamber::distill
