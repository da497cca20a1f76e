#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcgibbs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;  // verify with a failing check
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcgibbs::cli
