#pragma once

// Minimal deterministic SVG chart writer for the plot subcommand: one fixed
// layout (margins, ticks, legend) shared by every figure so the output is a
// pure function of the data.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool draw_line = false;    // polyline through the points
  bool draw_marks = true;    // circle at each point
  bool dashed = false;
};

class Chart {
 public:
  Chart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add(Series s) { series_.push_back(std::move(s)); }

  std::string render() const {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const Series& s : series_)
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (first) {
          xmin = xmax = s.x[i];
          ymin = ymax = s.y[i];
          first = false;
        } else {
          xmin = std::min(xmin, s.x[i]);
          xmax = std::max(xmax, s.x[i]);
          ymin = std::min(ymin, s.y[i]);
          ymax = std::max(ymax, s.y[i]);
        }
      }
    if (xmax == xmin) {
      xmin -= 1;
      xmax += 1;
    }
    if (ymax == ymin) {
      ymin -= 1;
      ymax += 1;
    }
    // 5% padding so marks do not sit on the frame
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    std::string b;
    b += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) + "\" height=\"" +
         num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) + "\">\n";
    b += "<rect x=\"0\" y=\"0\" width=\"" + num(kW) + "\" height=\"" + num(kH) +
         "\" fill=\"white\"/>\n";
    b += text(kW / 2, 24, title_, "middle", 16, "#222");

    const auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
    const auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

    // frame, grid, ticks
    for (int i = 0; i <= kTicks; ++i) {
      const double tx = xmin + (xmax - xmin) * i / kTicks;
      const double ty = ymin + (ymax - ymin) * i / kTicks;
      b += line(px(tx), kT, px(tx), kH - kB, "#dddddd", 1, false);
      b += line(kL, py(ty), kW - kR, py(ty), "#dddddd", 1, false);
      b += text(px(tx), kH - kB + 18, num4(tx), "middle", 11, "#444");
      b += text(kL - 6, py(ty) + 4, num4(ty), "end", 11, "#444");
    }
    b += "<rect x=\"" + num(kL) + "\" y=\"" + num(kT) + "\" width=\"" + num(kW - kL - kR) +
         "\" height=\"" + num(kH - kT - kB) +
         "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    b += text((kL + kW - kR) / 2, kH - 10, x_label_, "middle", 13, "#222");
    b += text(12, kT - 8, y_label_, "start", 13, "#222");

    for (const Series& s : series_) {
      if (s.draw_line && s.x.size() > 1) {
        std::string pts;
        for (size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          if (!pts.empty()) pts += ' ';
          pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        b += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.5\"" + (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
      }
      if (s.draw_marks)
        for (size_t i = 0; i < s.x.size(); ++i) {
          if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
          b += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) +
               "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
        }
    }

    // legend, top-right inside the frame
    double ly = kT + 16;
    for (const Series& s : series_) {
      const double lx = kW - kR - 160;
      b += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + s.color + "\"/>\n";
      b += text(lx + 18, ly + 2, s.label, "start", 12, "#222");
      ly += 18;
    }
    b += "</svg>\n";
    return b;
  }

 private:
  static constexpr double kW = 800, kH = 500, kL = 78, kR = 24, kT = 44, kB = 54;
  static constexpr int kTicks = 5;

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }
  static std::string num4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }
  static std::string text(double x, double y, const std::string& s, const char* anchor,
                          int size, const char* fill) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\" fill=\"" +
           fill + "\">" + escape(s) + "</text>\n";
  }
  static std::string line(double x1, double y1, double x2, double y2, const char* stroke,
                          double width, bool dashed) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" +
           (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
  }
  static std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
      if (c == '&')
        out += "&amp;";
      else if (c == '<')
        out += "&lt;";
      else if (c == '>')
        out += "&gt;";
      else
        out += c;
    }
    return out;
  }

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace cli
