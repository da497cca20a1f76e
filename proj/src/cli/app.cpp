#include "cli/app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cli/render.hpp"
#include "hcgibbs/critical.hpp"
#include "hcgibbs/error.hpp"
#include "hcgibbs/phases.hpp"

#ifndef HCGIBBS_VERSION
#define HCGIBBS_VERSION "dev"
#endif

namespace hcgibbs::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::string kVersion = HCGIBBS_VERSION;

Format format_of(const std::string& s, bool allow_svg) {
  const Format f = parse_format(s);
  if (f == Format::Svg && !allow_svg) throw UsageError("svg output is only available for scan and plot");
  return f;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = j == n - 1 ? b : a + (b - a) * j / (n - 1);
  return v;
}

struct SolveArgs {
  int k = 3, i = 1;
  double lambda = 1.0;
  std::string set = "I2", format = "human", output;
  int resolution = 2000;
};

struct ScanArgs {
  int k = 3, i = 1;
  std::string set = "I2", format = "csv", output;
  double lambda_min = 1.0, lambda_max = 3.0;
  int steps = 41;
  int resolution = 2000;
};

struct CriticalArgs {
  std::string which = "I2-k3-i1";
  std::optional<int> k;
  std::string format = "human";
};

struct PlotArgs {
  std::string curve;
  double x_min = 1.05, x_max = 4.0;
  int k = 6, i = 1;
  double lambda = 10.0;
  std::string set = "I4", output;
  double lambda_min = 4.0, lambda_max = 70.0;
  int steps = 34;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  const Format fmt = format_of(a.format, false);
  const ModelParams p{a.k, a.i, a.lambda};
  p.validate();
  EnumerateOptions opt;
  opt.resolution = a.resolution;
  const auto ss = enumerate_solutions(p, parse_invariant_set(a.set), opt);
  emit(render_solutions(ss, fmt, kVersion), a.output, out);
  return kExitOk;
}

int do_scan(const ScanArgs& a, std::ostream& out) {
  if (a.steps < 2) throw UsageError("--steps must be at least 2");
  if (!(a.lambda_min > 0.0) || !(a.lambda_max > a.lambda_min))
    throw UsageError("need 0 < --lambda-min < --lambda-max");
  const Format fmt = format_of(a.format, true);
  const ModelParams tmpl{a.k, a.i, a.lambda_min};
  tmpl.validate();
  const InvariantSet set = parse_invariant_set(a.set);
  EnumerateOptions opt;
  opt.resolution = a.resolution;
  const auto rows = count_vs_lambda(tmpl, set, linspace(a.lambda_min, a.lambda_max, a.steps), opt);
  emit(render_scan(rows, tmpl, set, fmt, kVersion), a.output, out);
  return kExitOk;
}

int do_critical(const CriticalArgs& a, std::ostream& out) {
  const Format fmt = format_of(a.format, false);
  if (a.which == "I2-k3-i1") {
    out << render_critical(lambda_cr_I2(), fmt, kVersion);
    return kExitOk;
  }
  if (a.which == "kesten") {
    if (!a.k) throw UsageError("--case kesten needs -k");
    out << render_critical(s_lambda_pm(*a.k), fmt, kVersion);
    return kExitOk;
  }
  throw UsageError("unknown case '" + a.which + "' (expected I2-k3-i1 or kesten)");
}

int do_verify(const std::string& id, std::ostream& out) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = theorem_ids();
  } else {
    bool known = false;
    for (const auto& t : theorem_ids()) known = known || t == id;
    if (!known) throw UsageError("unknown theorem id '" + id + "'");
    ids.push_back(id);
  }
  int failed = 0;
  for (const auto& t : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = verify_theorem(t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : rep.checks)
      out << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.evidence << '\n';
    out << (rep.pass ? "PASS " : "FAIL ") << rep.id << " (" << sig(secs, 3) << " s)\n";
    failed += rep.pass ? 0 : 1;
  }
  if (ids.size() > 1) out << (ids.size() - failed) << "/" << ids.size() << " passed\n";
  return failed == 0 ? kExitOk : kExitFail;
}

int do_plot(const PlotArgs& a, std::ostream& out) {
  if (a.output.empty()) throw UsageError("plot needs -o");
  std::string svg;
  if (a.curve == "lambda3") {
    if (!(a.x_min < a.x_max)) throw UsageError("need --x-min < --x-max");
    if (!(a.x_max > 1.0)) throw UsageError("lambda3 is defined for x > 1");
    svg = svg_lambda3(std::max(a.x_min, 1.0), a.x_max);
  } else if (a.curve == "gamma-cobweb") {
    if (!(a.lambda > 0.0)) throw UsageError("--lambda must be positive");
    svg = svg_gamma_cobweb(a.k, a.lambda);
  } else if (a.curve == "bifurcation") {
    if (a.steps < 2) throw UsageError("--steps must be at least 2");
    if (!(a.lambda_min > 0.0) || !(a.lambda_max > a.lambda_min))
      throw UsageError("need 0 < --lambda-min < --lambda-max");
    const ModelParams tmpl{a.k, a.i, a.lambda_min};
    tmpl.validate();
    const InvariantSet set = parse_invariant_set(a.set);
    svg = svg_bifurcation(count_vs_lambda(tmpl, set, linspace(a.lambda_min, a.lambda_max, a.steps)), tmpl, set);
  } else {
    throw UsageError("unknown curve '" + a.curve + "' (expected lambda3, bifurcation or gamma-cobweb)");
  }
  emit(svg, a.output, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hard-core model boundary laws on Cayley trees", "hcgibbs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "enumerate solutions on an invariant set");
  solve->add_option("-k", sa.k, "tree order")->required();
  solve->add_option("-i", sa.i, "|A|")->required();
  solve->add_option("--lambda", sa.lambda, "activity")->required();
  solve->add_option("--set", sa.set, "I1..I4")->capture_default_str();
  solve->add_option("--format", sa.format, "human, csv or json")->capture_default_str();
  solve->add_option("--resolution", sa.resolution, "grid oracle points per axis")->capture_default_str()
      ->check(CLI::Range(16, 100000));
  solve->add_option("-o,--output", sa.output, "output file (default stdout)");

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "solution counts over a lambda grid");
  scan->add_option("-k", sc.k)->required();
  scan->add_option("-i", sc.i)->required();
  scan->add_option("--set", sc.set)->capture_default_str();
  scan->add_option("--lambda-min", sc.lambda_min)->required();
  scan->add_option("--lambda-max", sc.lambda_max)->required();
  scan->add_option("--steps", sc.steps)->capture_default_str();
  scan->add_option("--format", sc.format, "csv, json, human or svg")->capture_default_str();
  scan->add_option("--resolution", sc.resolution)->capture_default_str()->check(CLI::Range(16, 100000));
  scan->add_option("-o,--output", sc.output);

  CriticalArgs ca;
  auto* critical = app.add_subcommand("critical", "critical activities");
  critical->add_option("--case", ca.which, "I2-k3-i1 or kesten")->capture_default_str();
  critical->add_option("-k", ca.k);
  critical->add_option("--format", ca.format)->capture_default_str();

  std::string vid;
  auto* verify = app.add_subcommand("verify", "run a named theorem check, or all");
  verify->add_option("id", vid)->required();

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "write an SVG figure");
  plot->add_option("curve", pa.curve, "lambda3, bifurcation or gamma-cobweb")->required();
  plot->add_option("--x-min", pa.x_min)->capture_default_str();
  plot->add_option("--x-max", pa.x_max)->capture_default_str();
  plot->add_option("-k", pa.k)->capture_default_str();
  plot->add_option("-i", pa.i)->capture_default_str();
  plot->add_option("--lambda", pa.lambda)->capture_default_str();
  plot->add_option("--set", pa.set)->capture_default_str();
  plot->add_option("--lambda-min", pa.lambda_min)->capture_default_str();
  plot->add_option("--lambda-max", pa.lambda_max)->capture_default_str();
  plot->add_option("--steps", pa.steps)->capture_default_str();
  plot->add_option("-o,--output", pa.output)->required();

  try {
    // CLI11 wants argv order reversed when given a vector
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hcgibbs: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve) return do_solve(sa, out);
    if (*scan) return do_scan(sc, out);
    if (*critical) return do_critical(ca, out);
    if (*verify) return do_verify(vid, out);
    if (*plot) return do_plot(pa, out);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "hcgibbs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "hcgibbs: " << e.what() << '\n';
    return kExitIo;
  } catch (const UnsupportedCase& e) {
    err << "hcgibbs: unsupported case: " << e.what() << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "hcgibbs: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SizeGuardError& e) {
    err << "hcgibbs: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericRangeError& e) {
    err << "hcgibbs: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int j = 1; j < argc; ++j) args.emplace_back(argv[j]);
  return run(args, out, err);
}

}  // namespace hcgibbs::cli
