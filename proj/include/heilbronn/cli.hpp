#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heilbronn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Version tag written into every JSON record.
inline constexpr const char* kOutputVersion = "1";

/// Runs the tool on args (without the program name). Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace heilbronn::cli
