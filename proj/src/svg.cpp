#include "tprobe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tprobe/error.hpp"

namespace tprobe {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartOptions& options) {
  const double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw BadParameter("series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (options.log_x && s.x[i] <= 0.0) continue;
      const double x = options.log_x ? std::log10(s.x[i]) : s.x[i];
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (x0 > x1) throw BadParameter("nothing to plot");
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << options.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(options.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 5; ++t) {
    const double fx = x0 + (x1 - x0) * t / 5.0;
    const double fy = y0 + (y1 - y0) * t / 5.0;
    const double label_x = options.log_x ? std::pow(10.0, fx) : fx;
    os << "<line x1=\"" << px(fx) << "\" y1=\"" << top + ph << "\" x2=\"" << px(fx) << "\" y2=\"" << top + ph + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
       << tick_label(label_x) << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << left << "\" y2=\"" << py(fy)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">" << tick_label(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << options.height - 10 << "\" text-anchor=\"middle\">"
     << escape(options.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << top + ph / 2 << ")\">" << escape(options.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double xv = series[s].x[i];
      const double yv = series[s].y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv) || (options.log_x && xv <= 0.0)) continue;
      os << px(options.log_x ? std::log10(xv) : xv) << ',' << py(yv) << ' ';
    }
    os << "\"/>\n";
    if (!series[s].label.empty()) {
      const double ly = top + 16 + 16.0 * static_cast<double>(s);
      os << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw - 130 << "\" y2=\""
         << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << left + pw - 125 << "\" y=\"" << ly << "\">" << escape(series[s].label) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tprobe
