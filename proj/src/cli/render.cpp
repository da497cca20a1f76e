#include "cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cli/svg.hpp"
#include "hcgibbs/error.hpp"
#include "json.hpp"

namespace hcgibbs::cli {

using ojson = nlohmann::ordered_json;

Format parse_format(const std::string& s) {
  if (s == "human") return Format::Human;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  throw DomainError("unknown format '" + s + "'");
}

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double round_sig(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::stod(sig(v, digits));
}

namespace {

constexpr int kMachineDigits = 12;
constexpr int kHumanDigits = 6;

double r12(double v) { return round_sig(v, kMachineDigits); }

ojson params_json(const ModelParams& p, InvariantSet set) {
  ojson j;
  j["k"] = p.k;
  j["i"] = p.i;
  j["lambda"] = r12(p.lambda);
  j["set"] = std::string(to_string(set));
  return j;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

std::string coords(const std::vector<ReducedPoint>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ';';
    out += sig(p.x, kMachineDigits) + ' ' + sig(p.y, kMachineDigits);
  }
  return out;
}

}  // namespace

std::string render_solutions(const SolutionSet& ss, Format fmt, const std::string& version) {
  std::ostringstream o;
  if (fmt == Format::Json) {
    ojson j;
    j["params"] = params_json(ss.params, ss.set);
    j["solutions"] = ojson::array();
    for (const auto& s : ss.solutions) {
      ojson e;
      e["class"] = std::string(to_string(s.cls));
      e["law"] = {r12(s.law.z1), r12(s.law.z2), r12(s.law.z7), r12(s.law.z8)};
      e["reduced"] = {r12(s.reduced.x), r12(s.reduced.y)};
      e["residual"] = round_sig(s.residual, 3);
      e["tangent"] = s.tangent;
      e["multiplicity"] = s.multiplicity;
      j["solutions"].push_back(e);
    }
    j["counts"] = {{"total", ss.solutions.size()}, {"TI", ss.count_ti()}, {"WP", ss.count_wp()}};
    j["oracle"] = {{"count", ss.oracle_count}, {"agrees", ss.oracle_agrees}};
    j["version"] = version;
    o << j.dump(2) << '\n';
  } else if (fmt == Format::Csv) {
    o << "index,class,x,y,z1,z2,z7,z8,residual,tangent\n";
    int n = 0;
    for (const auto& s : ss.solutions) {
      o << n++ << ',' << to_string(s.cls) << ',' << sig(s.reduced.x, kMachineDigits) << ','
        << sig(s.reduced.y, kMachineDigits) << ',' << sig(s.law.z1, kMachineDigits) << ','
        << sig(s.law.z2, kMachineDigits) << ',' << sig(s.law.z7, kMachineDigits) << ','
        << sig(s.law.z8, kMachineDigits) << ',' << sig(s.residual, 3) << ',' << (s.tangent ? 1 : 0) << '\n';
    }
  } else {
    o << "k=" << ss.params.k << " i=" << ss.params.i << " lambda=" << sig(ss.params.lambda, kHumanDigits)
      << " set=" << to_string(ss.set) << '\n';
    o << ss.solutions.size() << " solution" << (ss.solutions.size() == 1 ? "" : "s") << " (TI " << ss.count_ti()
      << ", WP " << ss.count_wp() << ")" << (ss.tangent ? ", tangent" : "") << '\n';
    o << pad("#", 3) << pad("class", 6) << pad("x", 12) << pad("y", 12) << pad("z1", 12) << pad("z2", 12)
      << pad("z7", 12) << pad("z8", 12) << "residual\n";
    int n = 0;
    for (const auto& s : ss.solutions) {
      o << pad(std::to_string(n++), 3) << pad(std::string(to_string(s.cls)), 6)
        << pad(sig(s.reduced.x, kHumanDigits), 12) << pad(sig(s.reduced.y, kHumanDigits), 12)
        << pad(sig(s.law.z1, kHumanDigits), 12) << pad(sig(s.law.z2, kHumanDigits), 12)
        << pad(sig(s.law.z7, kHumanDigits), 12) << pad(sig(s.law.z8, kHumanDigits), 12) << sig(s.residual, 2)
        << (s.tangent ? "  tangent" : "") << '\n';
    }
    if (!ss.oracle_agrees) o << "warning: grid oracle found " << ss.oracle_count << " point(s)\n";
  }
  return o.str();
}

std::string render_scan(const std::vector<BifurcationRow>& rows, const ModelParams& tmpl, InvariantSet set,
                        Format fmt, const std::string& version) {
  std::ostringstream o;
  if (fmt == Format::Svg) return svg_bifurcation(rows, tmpl, set);
  if (fmt == Format::Json) {
    ojson j;
    j["params"] = params_json(tmpl, set);
    j["params"].erase("lambda");
    j["rows"] = ojson::array();
    for (const auto& r : rows) {
      ojson e;
      e["lambda"] = r12(r.lambda);
      e["n_total"] = r.total;
      e["n_TI"] = r.ti;
      e["n_WP"] = r.wp;
      e["tangent"] = r.tangent;
      e["coordinates"] = ojson::array();
      for (const auto& p : r.points) e["coordinates"].push_back({r12(p.x), r12(p.y)});
      j["rows"].push_back(e);
    }
    j["version"] = version;
    o << j.dump(2) << '\n';
  } else if (fmt == Format::Csv) {
    o << "lambda,n_total,n_TI,n_WP,tangent,coordinates\n";
    for (const auto& r : rows) {
      o << sig(r.lambda, kMachineDigits) << ',' << r.total << ',' << r.ti << ',' << r.wp << ','
        << (r.tangent ? 1 : 0) << ',' << coords(r.points) << '\n';
    }
  } else {
    o << "k=" << tmpl.k << " i=" << tmpl.i << " set=" << to_string(set) << '\n';
    o << pad("lambda", 12) << pad("total", 6) << pad("TI", 4) << pad("WP", 4) << "points\n";
    for (const auto& r : rows) {
      o << pad(sig(r.lambda, kHumanDigits), 12) << pad(std::to_string(r.total), 6) << pad(std::to_string(r.ti), 4)
        << pad(std::to_string(r.wp), 4);
      for (const auto& p : r.points) o << '(' << sig(p.x, kHumanDigits) << ", " << sig(p.y, kHumanDigits) << ") ";
      if (r.tangent) o << "tangent";
      o << '\n';
    }
  }
  return o.str();
}

std::string render_critical(const CriticalReport& r, Format fmt, const std::string& version) {
  auto fixed12 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.12g", v);
    return std::string(buf);
  };
  std::ostringstream o;
  const bool kesten = r.case_id == "kesten";
  if (fmt == Format::Json) {
    ojson j;
    j["case"] = r.case_id;
    if (kesten) {
      j["k"] = r.k;
      j["s_minus"] = r12(r.s_minus);
      j["s_plus"] = r12(r.s_plus);
      j["lambda_minus"] = r12(r.lambda_minus);
      j["lambda_plus"] = r12(r.lambda_plus);
    } else {
      j["lambda_cr"] = r12(r.lambda_cr);
      j["x_star"] = r12(r.x_star);
      j["convex"] = r.convex;
    }
    j["version"] = version;
    o << j.dump(2) << '\n';
  } else if (fmt == Format::Csv) {
    if (kesten) {
      o << "k,s_minus,s_plus,lambda_minus,lambda_plus\n";
      o << r.k << ',' << sig(r.s_minus, 12) << ',' << sig(r.s_plus, 12) << ',' << sig(r.lambda_minus, 12) << ','
        << sig(r.lambda_plus, 12) << '\n';
    } else {
      o << "lambda_cr,x_star,convex\n" << sig(r.lambda_cr, 12) << ',' << sig(r.x_star, 12) << ',' << r.convex << '\n';
    }
  } else if (kesten) {
    o << "case kesten, k=" << r.k << '\n';
    o << "s- = " << fixed12(r.s_minus) << '\n' << "s+ = " << fixed12(r.s_plus) << '\n';
    o << "lambda- = " << fixed12(r.lambda_minus) << '\n' << "lambda+ = " << fixed12(r.lambda_plus) << '\n';
  } else {
    o << "case " << r.case_id << '\n';
    o << "lambda_cr = " << fixed12(r.lambda_cr) << '\n';
    o << "x* = " << fixed12(r.x_star) << '\n';
    o << "lambda3 convex on [1.05, 5]: " << (r.convex ? "yes" : "no") << '\n';
  }
  return o.str();
}

std::string svg_bifurcation(const std::vector<BifurcationRow>& rows, const ModelParams& tmpl, InvariantSet set) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : rows) {
    for (const auto& p : r.points) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
  }
  if (!(lo < hi)) {
    lo = std::isfinite(lo) ? lo - 0.5 : 0.0;
    hi = std::isfinite(hi) ? hi + 0.5 : 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  const double l0 = rows.empty() ? 0.0 : rows.front().lambda, l1 = rows.empty() ? 1.0 : rows.back().lambda;
  SvgPlot plot("solutions on " + std::string(to_string(set)) + ", k=" + std::to_string(tmpl.k) +
                   ", i=" + std::to_string(tmpl.i),
               {l0, l1 > l0 ? l1 : l0 + 1.0, lo - pad, hi + pad}, "lambda", "x");
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.points.size(); ++j) {
      const bool diag = std::abs(r.points[j].x - r.points[j].y) <= 1e-9;
      plot.marker(r.lambda, r.points[j].x, diag ? "black" : "#c0392b");
    }
  }
  return plot.str();
}

std::string svg_lambda3(double x_min, double x_max) {
  const auto cr = lambda_cr_I2();
  std::vector<std::pair<double, double>> pts;
  double top = 0.0;
  constexpr int n = 600;
  for (int j = 0; j <= n; ++j) {
    const double x = x_min + (x_max - x_min) * j / n;
    if (!(x > 1.0)) continue;
    const double y = lambda3(x);
    pts.emplace_back(x, y);
    top = std::max(top, y);
  }
  // near x = 1 the curve blows up; clip at a few times the minimum
  top = std::min(top, 4.0 * cr.lambda_cr);
  SvgPlot plot("lambda3(x)", {x_min, x_max, 0.0, top * 1.05}, "x", "lambda");
  plot.polyline(pts, "#1f4e79", 2.0);
  plot.segment(x_min, cr.lambda_cr, x_max, cr.lambda_cr, "#888888", 1.0, true);
  plot.marker(cr.x_star, cr.lambda_cr, "#c0392b", "minimum");
  plot.note(cr.x_star, cr.lambda_cr, "(" + sig(cr.x_star, 6) + ", " + sig(cr.lambda_cr, 6) + ")");
  return plot.str();
}

std::string svg_gamma_cobweb(int k, double lambda) {
  const double xi = ti_fixed_point(k, lambda);
  const ScalarFn g = [&](double x) { return gamma_map(std::clamp(x, 0.0, 1.0), k, lambda); };
  const auto cyc = two_cycle_kesten(g, xi);
  // zoom on the region where the dynamics happen
  double lo = 0.0, hi = 1.0;
  if (cyc) {
    const double w = cyc->x2 - cyc->x1;
    lo = std::max(0.0, cyc->x1 - w);
    hi = std::min(1.0, cyc->x2 + w);
  } else {
    const double w = std::max(0.05, xi);
    lo = std::max(0.0, xi - w);
    hi = std::min(1.0, xi + w);
  }
  std::vector<std::pair<double, double>> curve;
  for (int j = 0; j <= 400; ++j) {
    const double x = lo + (hi - lo) * j / 400.0;
    curve.emplace_back(x, g(x));
  }
  SvgPlot plot("gamma cobweb, k=" + std::to_string(k) + ", lambda=" + sig(lambda, 6), {lo, hi, lo, hi}, "x",
               "gamma(x)");
  plot.polyline(curve, "#1f4e79", 2.0);
  plot.polyline({{lo, lo}, {hi, hi}}, "#888888", 1.0);
  plot.marker(xi, xi, "black", "xi");
  if (cyc) {
    const double a = cyc->x1, b = cyc->x2;
    plot.segment(a, a, a, b, "#c0392b");
    plot.segment(a, b, b, b, "#c0392b");
    plot.segment(b, b, b, a, "#c0392b");
    plot.segment(b, a, a, a, "#c0392b");
    plot.marker(a, b, "#c0392b", "cycle-a");
    plot.marker(b, a, "#c0392b", "cycle-b");
  } else {
    plot.note(xi, xi, "no 2-cycle from the Kesten test");
  }
  return plot.str();
}

}  // namespace hcgibbs::cli
