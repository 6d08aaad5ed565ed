#ifndef BERNOULLIK_CLI_HPP
#define BERNOULLIK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bernoullik::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Cross-check batteries; one line per check. Returns the number of failures.
int selftest(std::ostream& out);

}  // namespace bernoullik::cli

#endif  // BERNOULLIK_CLI_HPP
