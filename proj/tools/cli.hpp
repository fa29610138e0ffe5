// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace certistoch::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kValidity = 3;
inline constexpr int kCap = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace certistoch::cli
