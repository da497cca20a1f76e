#pragma once

// Minimal standalone SVG 1.1 writer for line plots.

#include <string>
#include <utility>
#include <vector>

namespace hcgibbs::cli {

struct Frame {
  double x0, x1, y0, y1;  // data window
};

class SvgPlot {
 public:
  SvgPlot(std::string title, Frame frame, std::string x_label, std::string y_label);

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.5);
  void segment(double xa, double ya, double xb, double yb, const std::string& color, double width = 1.0,
               bool dashed = false);
  void marker(double x, double y, const std::string& color, const std::string& id = "");
  void note(double x, double y, const std::string& text);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;
  bool visible(double x, double y) const;

  std::string title_, x_label_, y_label_;
  Frame f_;
  std::vector<std::string> body_;
};

}  // namespace hcgibbs::cli
