#pragma once

#include <string>
#include <vector>

#include "hcgibbs/critical.hpp"
#include "hcgibbs/phases.hpp"

namespace hcgibbs::cli {

enum class Format { Human, Csv, Json, Svg };

Format parse_format(const std::string& s);

/// printf %.*g
std::string sig(double v, int digits);
/// v rounded to the given number of significant digits
double round_sig(double v, int digits);

std::string render_solutions(const SolutionSet& ss, Format fmt, const std::string& version);
std::string render_scan(const std::vector<BifurcationRow>& rows, const ModelParams& tmpl, InvariantSet set,
                        Format fmt, const std::string& version);
std::string render_critical(const CriticalReport& r, Format fmt, const std::string& version);

std::string svg_bifurcation(const std::vector<BifurcationRow>& rows, const ModelParams& tmpl, InvariantSet set);
std::string svg_lambda3(double x_min, double x_max);
std::string svg_gamma_cobweb(int k, double lambda);

}  // namespace hcgibbs::cli
