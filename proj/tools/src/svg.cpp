#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace g3plan {
namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 40.0;
constexpr double kMapHeight = 480.0;
constexpr double kStripHeight = 120.0;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

// Blue (slow) to red (fast). Spreads below 1e-6 relative count as constant speed.
std::string speed_color(double v, double v_lo, double v_hi) {
  const double t =
      v_hi - v_lo > 1e-6 * std::max(1.0, v_hi) ? (v - v_lo) / (v_hi - v_lo) : 0.0;
  const int r = static_cast<int>(std::lround(40 + 215 * t));
  const int b = static_cast<int>(std::lround(255 - 215 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x40%02x", r, b);
  return buf;
}

struct Box {
  double x0;
  double y0;
  double w;
  double h;
};

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys, const Box& box,
                     const std::string& color) {
  auto [x_lo_it, x_hi_it] = std::minmax_element(xs.begin(), xs.end());
  auto [y_lo_it, y_hi_it] = std::minmax_element(ys.begin(), ys.end());
  const double x_lo = *x_lo_it;
  const double x_span = std::max(*x_hi_it - x_lo, 1e-12);
  const double y_lo = *y_lo_it;
  const double y_span = std::max(*y_hi_it - y_lo, 1e-12);
  std::string pts;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double px = box.x0 + box.w * (xs[k] - x_lo) / x_span;
    const double py = box.y0 + box.h - box.h * (ys[k] - y_lo) / y_span;
    if (!pts.empty()) pts += ' ';
    pts += fmt(px) + ',' + fmt(py);
  }
  return "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
}

std::string strip(const std::string& label, const std::vector<double>& s,
                  const std::vector<std::vector<double>>& series,
                  const std::vector<std::string>& colors, double y0) {
  const Box box{kMargin, y0 + 20.0, kWidth - 2 * kMargin, kStripHeight - 30.0};
  std::string out = "<g>\n<text x=\"" + fmt(kMargin) + "\" y=\"" + fmt(y0 + 14.0) +
                    "\" font-size=\"12\">" + label + "</text>\n";
  out += "<rect x=\"" + fmt(box.x0) + "\" y=\"" + fmt(box.y0) + "\" width=\"" + fmt(box.w) +
         "\" height=\"" + fmt(box.h) + "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) out += polyline(s, series[k], box, colors[k]);
  return out + "</g>\n";
}

}  // namespace

std::string render_svg(const TrajectoryRecord& record) {
  const auto& rows = record.rows;
  if (rows.empty()) throw EmptyRecord("trajectory record has no rows");

  double x_lo = rows[0].x, x_hi = rows[0].x, y_lo = rows[0].y, y_hi = rows[0].y;
  double v_lo = rows[0].v, v_hi = rows[0].v;
  for (const RecordRow& r : rows) {
    x_lo = std::min(x_lo, r.x);
    x_hi = std::max(x_hi, r.x);
    y_lo = std::min(y_lo, r.y);
    y_hi = std::max(y_hi, r.y);
    v_lo = std::min(v_lo, r.v);
    v_hi = std::max(v_hi, r.v);
  }
  // Equal axis scale so the path keeps its shape.
  const double span = std::max({x_hi - x_lo, y_hi - y_lo, 1e-9});
  const double scale = std::min(kWidth - 2 * kMargin, kMapHeight - 2 * kMargin) / span;
  const double ox = kMargin + 0.5 * ((kWidth - 2 * kMargin) - scale * (x_hi - x_lo));
  const double oy = kMargin + 0.5 * ((kMapHeight - 2 * kMargin) + scale * (y_hi - y_lo));
  auto px = [&](double x) { return ox + scale * (x - x_lo); };
  auto py = [&](double y) { return oy - scale * (y - y_lo); };

  const double height = kMapHeight + 3 * kStripHeight;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out += "<g id=\"path\">\n";
  if (rows.size() == 1) {
    out += "<circle cx=\"" + fmt(px(rows[0].x)) + "\" cy=\"" + fmt(py(rows[0].y)) +
           "\" r=\"2\" fill=\"" + speed_color(rows[0].v, v_lo, v_hi) + "\"/>\n";
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double v_mid = 0.5 * (rows[k - 1].v + rows[k].v);
    out += "<line x1=\"" + fmt(px(rows[k - 1].x)) + "\" y1=\"" + fmt(py(rows[k - 1].y)) +
           "\" x2=\"" + fmt(px(rows[k].x)) + "\" y2=\"" + fmt(py(rows[k].y)) + "\" stroke=\"" +
           speed_color(v_mid, v_lo, v_hi) + "\" stroke-width=\"3\"/>\n";
  }
  out += "</g>\n";

  std::vector<double> s, v, kappa, acc, jerk, yaw;
  for (const RecordRow& r : rows) {
    s.push_back(r.s);
    v.push_back(r.v);
    kappa.push_back(r.kappa);
    acc.push_back((r.a_n * r.a_n + r.a_t * r.a_t) / r.v);
    jerk.push_back((r.jerk_n * r.jerk_n + r.jerk_t * r.jerk_t) / r.v);
    yaw.push_back(r.kappa * r.kappa * r.v);
  }
  out += strip("v(s) [" + fmt(v_lo) + ", " + fmt(v_hi) + "] m/s", s, {v}, {"#1f77b4"}, kMapHeight);
  out += strip("kappa(s)", s, {kappa}, {"#2ca02c"}, kMapHeight + kStripHeight);
  out += strip("accel / jerk / yaw integrands (each normalized)", s, {acc, jerk, yaw},
               {"#d62728", "#9467bd", "#ff7f0e"}, kMapHeight + 2 * kStripHeight);
  out += "</svg>\n";
  return out;
}

}  // namespace g3plan
