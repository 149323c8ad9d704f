#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "niemytzki/geometry.hpp"
#include "niemytzki/util.hpp"

namespace niemytzki {

// Minimal, dependency-free SVG assembly. Coordinates are formatted with a
// fixed short precision so repeated runs emit identical bytes.

class SvgCanvas {
 public:
  SvgCanvas(int width, int height) : width_(width), height_(height) {}

  void polyline(const std::vector<Point>& pts, const std::string& stroke, double stroke_width,
                const std::string& dash = "") {
    std::string el = "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
                     fmt(stroke_width) + "\"";
    if (!dash.empty()) el += " stroke-dasharray=\"" + dash + "\"";
    el += " points=\"" + points(pts) + "\"/>";
    elements_.push_back(std::move(el));
  }

  void polygon(const std::vector<Point>& pts, const std::string& fill, double opacity) {
    elements_.push_back("<polygon fill=\"" + fill + "\" fill-opacity=\"" + fmt(opacity) +
                        "\" stroke=\"none\" points=\"" + points(pts) + "\"/>");
  }

  void circle(const Point& p, double radius, const std::string& fill) {
    elements_.push_back("<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" +
                        fmt(radius) + "\" fill=\"" + fill + "\"/>");
  }

  void text(const Point& p, const std::string& content, int font_size,
            const std::string& fill = "#222222") {
    elements_.push_back("<text x=\"" + fmt(p.x) + "\" y=\"" + fmt(p.y) + "\" font-size=\"" +
                        std::to_string(font_size) +
                        "\" font-family=\"sans-serif\" fill=\"" + fill + "\">" + escape(content) +
                        "</text>");
  }

  std::string str() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width_) + "\" height=\"" + std::to_string(height_) +
                      "\" viewBox=\"0 0 " + std::to_string(width_) + " " +
                      std::to_string(height_) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (const auto& el : elements_) {
      out += el;
      out += '\n';
    }
    out += "</svg>\n";
    return out;
  }

 private:
  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '&') out += "&amp;";
      else if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else out += c;
    }
    return out;
  }
  static std::string points(const std::vector<Point>& pts) {
    std::string out;
    for (const auto& p : pts) {
      if (!out.empty()) out += ' ';
      out += fmt(p.x) + "," + fmt(p.y);
    }
    return out;
  }

  int width_;
  int height_;
  std::vector<std::string> elements_;
};

// The two-neighborhood figure: profile arcs, height cap, shaded bounded
// component, and the saddle point.
inline std::string lens_figure_svg(const LensRegion& lens, int width = 900, int height = 540) {
  const Profile& f = lens.profile();
  const double hw = f.half_width();
  const double wx0 = lens.a() - 1.5 * hw;
  const double wx1 = lens.b() + 1.5 * hw;
  const double wy0 = -0.08 * f.cap();
  const double wy1 = 1.25 * f.cap();
  const double margin = 40.0;
  const double sx = (width - 2 * margin) / (wx1 - wx0);
  const double sy = (height - 2 * margin) / (wy1 - wy0);
  const auto map = [&](double x, double y) -> Point {
    return {margin + (x - wx0) * sx, height - margin - (y - wy0) * sy};
  };

  SvgCanvas canvas(width, height);
  constexpr int kSamples = 400;

  // boundary line y = 0 and height cap y = 1/n
  canvas.polyline({map(wx0, 0.0), map(wx1, 0.0)}, "#222222", 1.5);
  canvas.polyline({map(wx0, f.cap()), map(wx1, f.cap())}, "#888888", 1.0, "6,4");

  // shaded bounded component: roof over (a, b) down to the boundary line
  if (lens.has_bounded_component()) {
    std::vector<Point> shade;
    shade.push_back(map(lens.a(), 0.0));
    for (int i = 1; i < kSamples; ++i) {
      const double u = lens.a() + (lens.b() - lens.a()) * i / kSamples;
      shade.push_back(map(u, lens.roof(u)));
    }
    shade.push_back(map(lens.b(), 0.0));
    canvas.polygon(shade, "#d4a017", 0.45);
  }

  // profile arcs of both neighborhoods
  for (const double anchor : {lens.a(), lens.b()}) {
    std::vector<Point> arc;
    for (int i = 0; i <= kSamples; ++i) {
      const double t = -hw + 2.0 * hw * i / kSamples;
      arc.push_back(map(anchor + t, f.eval(std::fabs(t))));
    }
    canvas.polyline(arc, anchor == lens.a() ? "#1f5fa6" : "#a3372d", 2.0);
  }

  canvas.circle(map(lens.a(), 0.0), 3.5, "#1f5fa6");
  canvas.circle(map(lens.b(), 0.0), 3.5, "#a3372d");

  if (lens.has_bounded_component()) {
    const Point s = lens.saddle();
    canvas.circle(map(s.x, s.y), 4.0, "#222222");
    const Point lbl = map(s.x, s.y);
    canvas.text({lbl.x + 8.0, lbl.y - 8.0}, "saddle", 14);
  }
  canvas.text(map(lens.a(), -0.06 * f.cap()), "a", 14, "#1f5fa6");
  canvas.text(map(lens.b(), -0.06 * f.cap()), "b", 14, "#a3372d");

  return canvas.str();
}

}  // namespace niemytzki
