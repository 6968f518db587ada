#pragma once

#include <string>
#include <vector>

namespace tprobe {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 440;
  bool log_x = false;
};

/// Renders the series as a standalone SVG line chart.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

}  // namespace tprobe
