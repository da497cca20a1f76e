#include "cli/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hcgibbs::cli {
namespace {

constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// data coordinates, precise enough to read back
std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, Frame frame, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)), f_(frame) {}

double SvgPlot::px(double x) const { return kLeft + (x - f_.x0) / (f_.x1 - f_.x0) * (kW - kLeft - kRight); }
double SvgPlot::py(double y) const { return kH - kBottom - (y - f_.y0) / (f_.y1 - f_.y0) * (kH - kTop - kBottom); }

bool SvgPlot::visible(double x, double y) const {
  return std::isfinite(x) && std::isfinite(y) && x >= f_.x0 && x <= f_.x1 && y >= f_.y0 && y <= f_.y1;
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width) {
  // break the line wherever it leaves the viewport (clips the asymptote)
  std::string run;
  auto flush = [&] {
    if (!run.empty()) {
      body_.push_back("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + f2(width) +
                      "\" points=\"" + run + "\"/>");
    }
    run.clear();
  };
  for (const auto& [x, y] : pts) {
    if (!visible(x, y)) {
      flush();
      continue;
    }
    if (!run.empty()) run += ' ';
    run += f2(px(x)) + "," + f2(py(y));
  }
  flush();
}

void SvgPlot::segment(double xa, double ya, double xb, double yb, const std::string& color, double width,
                      bool dashed) {
  body_.push_back("<line x1=\"" + f2(px(xa)) + "\" y1=\"" + f2(py(ya)) + "\" x2=\"" + f2(px(xb)) + "\" y2=\"" +
                  f2(py(yb)) + "\" stroke=\"" + color + "\" stroke-width=\"" + f2(width) + "\"" +
                  (dashed ? " stroke-dasharray=\"4 3\"" : "") + "/>");
}

void SvgPlot::marker(double x, double y, const std::string& color, const std::string& id) {
  if (!visible(x, y)) return;
  std::string s = "<circle";
  if (!id.empty()) s += " id=\"" + escape(id) + "\"";
  s += " cx=\"" + f2(px(x)) + "\" cy=\"" + f2(py(y)) + "\" r=\"3\" fill=\"" + color + "\" data-x=\"" + g12(x) +
       "\" data-y=\"" + g12(y) + "\"/>";
  body_.push_back(s);
}

void SvgPlot::note(double x, double y, const std::string& text) {
  body_.push_back("<text x=\"" + f2(px(x) + 6) + "\" y=\"" + f2(py(y) - 6) + "\" font-size=\"12\">" + escape(text) +
                  "</text>");
}

std::string SvgPlot::str() const {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\" font-family=\"sans-serif\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title_)
    << "</text>\n";
  const double l = kLeft, r = kW - kRight, t = kTop, b = kH - kBottom;
  o << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int j = 0; j <= 5; ++j) {
    const double xv = f_.x0 + (f_.x1 - f_.x0) * j / 5.0, yv = f_.y0 + (f_.y1 - f_.y0) * j / 5.0;
    o << "<text x=\"" << f2(px(xv)) << "\" y=\"" << f2(b + 18) << "\" text-anchor=\"middle\" font-size=\"11\">"
      << tick(xv) << "</text>\n";
    o << "<text x=\"" << f2(l - 6) << "\" y=\"" << f2(py(yv) + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
      << tick(yv) << "</text>\n";
  }
  o << "<text x=\"" << (l + r) / 2 << "\" y=\"" << kH - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
    << escape(x_label_) << "</text>\n";
  o << "<text x=\"16\" y=\"" << (t + b) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
    << (t + b) / 2 << ")\">" << escape(y_label_) << "</text>\n";
  for (const auto& line : body_) o << line << '\n';
  o << "</svg>\n";
  return o.str();
}

}  // namespace hcgibbs::cli
