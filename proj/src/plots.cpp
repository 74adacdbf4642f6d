#include "formsim/plots.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "formsim/trajectory_io.hpp"

namespace formsim {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 540;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void grow(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

void plot_svg(const std::string& path, const std::string& title,
              const std::string& x_label, const std::string& y_label,
              const std::vector<Series>& series,
              const std::vector<Obstacle>& circles = {}, bool square = false) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  for (const Obstacle& o : circles) {
    x_lo = std::min(x_lo, o.center.x() - o.radius);
    x_hi = std::max(x_hi, o.center.x() + o.radius);
    y_lo = std::min(y_lo, o.center.y() - o.radius);
    y_hi = std::max(y_hi, o.center.y() + o.radius);
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
  if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
  if (square) {
    const double span = std::max(x_hi - x_lo, y_hi - y_lo);
    const double cx = 0.5 * (x_lo + x_hi), cy = 0.5 * (y_lo + y_hi);
    x_lo = cx - span / 2;
    x_hi = cx + span / 2;
    y_lo = cy - span / 2;
    y_hi = cy + span / 2;
  }
  const double pad_x = 0.04 * (x_hi - x_lo), pad_y = 0.04 * (y_hi - y_lo);
  x_lo -= pad_x;
  x_hi += pad_x;
  y_lo -= pad_y;
  y_hi += pad_y;

  const double pw = kWidth - kMarginL - kMarginR;
  const double ph = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return kMarginT + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
         std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         title + "</text>\n";

  // axes and ticks
  svg += "<rect x=\"" + std::to_string(kMarginL) + "\" y=\"" + std::to_string(kMarginT) +
         "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
    const double fy = y_lo + (y_hi - y_lo) * i / 5.0;
    svg += "<line x1=\"" + fmt(px(fx)) + "\" y1=\"" + fmt(kMarginT + ph) + "\" x2=\"" +
           fmt(px(fx)) + "\" y2=\"" + fmt(kMarginT + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px(fx)) + "\" y=\"" + fmt(kMarginT + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(fx) + "</text>\n";
    svg += "<line x1=\"" + fmt(kMarginL - 5) + "\" y1=\"" + fmt(py(fy)) + "\" x2=\"" +
           std::to_string(kMarginL) + "\" y2=\"" + fmt(py(fy)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kMarginL - 8) + "\" y=\"" + fmt(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(fy) + "</text>\n";
  }
  svg += "<text x=\"" + std::to_string(kMarginL + static_cast<int>(pw) / 2) + "\" y=\"" +
         std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + std::to_string(kMarginT + static_cast<int>(ph) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " +
         std::to_string(kMarginT + static_cast<int>(ph) / 2) + ")\">" +
         y_label + "</text>\n";

  for (const Obstacle& o : circles) {
    svg += "<circle cx=\"" + fmt(px(o.center.x())) + "\" cy=\"" + fmt(py(o.center.y())) +
           "\" r=\"" + fmt(o.radius / (x_hi - x_lo) * pw) +
           "\" fill=\"#d0d0d0\" stroke=\"#606060\"/>\n";
  }

  int color = 0;
  for (const Series& s : series) {
    std::string pts;
    bool open = false;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (open) pts += ' ';
      pts += fmt(px(x)) + "," + fmt(py(y));
      open = true;
    }
    if (!open) continue;
    svg += "<polyline fill=\"none\" stroke=\"" +
           std::string(kPalette[color % 10]) + "\" stroke-width=\"1.4\" points=\"" +
           pts + "\"/>\n";
    // legend entry
    const int lx = kMarginL + 10, ly = kMarginT + 16 + 15 * color;
    svg += "<line x1=\"" + std::to_string(lx) + "\" y1=\"" + std::to_string(ly - 4) +
           "\" x2=\"" + std::to_string(lx + 18) + "\" y2=\"" + std::to_string(ly - 4) +
           "\" stroke=\"" + kPalette[color % 10] + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + std::to_string(lx + 24) + "\" y=\"" + std::to_string(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
    ++color;
  }
  svg += "</svg>\n";
  write_text_file(path, svg);
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<StepRecord>& records,
                                    const std::vector<int>& agent_ids,
                                    const std::vector<Obstacle>& obstacles,
                                    const std::string& out_dir) {
  if (records.empty()) throw std::runtime_error("no records to plot");
  std::filesystem::create_directories(out_dir);
  const int n = static_cast<int>(agent_ids.size());

  auto per_agent = [&](auto&& get) {
    std::vector<Series> out(n);
    for (int i = 0; i < n; ++i) out[i].label = "agent " + std::to_string(agent_ids[i]);
    for (const StepRecord& rec : records) {
      for (int i = 0; i < n; ++i) out[i].points.emplace_back(rec.t, get(rec.agents[i]));
    }
    return out;
  };

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& title,
                  const std::string& xl, const std::string& yl,
                  const std::vector<Series>& series,
                  const std::vector<Obstacle>& circles = {}, bool square = false) {
    const std::string path = out_dir + "/" + name;
    plot_svg(path, title, xl, yl, series, circles, square);
    written.push_back(path);
  };

  emit("x_vs_t.svg", "Agent x positions", "t [s]", "x [m]",
       per_agent([](const AgentStep& a) { return a.x; }));
  emit("y_vs_t.svg", "Agent y positions", "t [s]", "y [m]",
       per_agent([](const AgentStep& a) { return a.y; }));
  emit("theta_vs_t.svg", "Agent headings", "t [s]", "theta [rad]",
       per_agent([](const AgentStep& a) { return a.theta; }));
  emit("u_vs_t.svg", "Angular speeds", "t [s]", "u [rad/s]",
       per_agent([](const AgentStep& a) { return a.u; }));
  emit("v_vs_t.svg", "Linear speeds", "t [s]", "v [m/s]",
       per_agent([](const AgentStep& a) { return a.v; }));

  Series dmin;
  dmin.label = "min inter-agent distance";
  for (const StepRecord& rec : records) dmin.points.emplace_back(rec.t, rec.d_min);
  emit("d_min_vs_t.svg", "Minimum inter-agent distance", "t [s]", "d_min [m]", {dmin});

  std::vector<Series> paths(n);
  for (int i = 0; i < n; ++i) paths[i].label = "agent " + std::to_string(agent_ids[i]);
  for (const StepRecord& rec : records) {
    for (int i = 0; i < n; ++i) {
      paths[i].points.emplace_back(rec.agents[i].x, rec.agents[i].y);
    }
  }
  emit("trajectories.svg", "Planar trajectories", "x [m]", "y [m]", paths, obstacles,
       /*square=*/true);
  return written;
}

}  // namespace formsim
