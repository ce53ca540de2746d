#ifndef KSEG_CLI_H_
#define KSEG_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace kseg::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;

// Runs one subcommand. `args` excludes the program name. Results go to `out`
// unless an output path is given; diagnostics are single lines on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace kseg::cli

#endif  // KSEG_CLI_H_
