#pragma once

#include <string>
#include <vector>

namespace clamber::harness {

/// Deterministic SVG renderings (no timestamps, fixed float formatting):
/// identical inputs produce identical bytes.
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_line_plot(const std::vector<Series>& series, const std::string& title,
                             const std::string& x_label, const std::string& y_label);

struct Bar {
  std::string label;
  double value = 0.0;
};
std::string render_bar_plot(const std::vector<Bar>& bars, const std::string& title,
                            const std::string& y_label);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace clamber::harness
