#ifndef TELEQEC_CLI_H
#define TELEQEC_CLI_H

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "teleqec/noise.h"
#include "teleqec/stabilizer_code.h"

namespace teleqec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitGuard = 4;

/// Raised for invalid flag values; maps to kExitUsage.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Values of "start:end:step" (end included) or a single number. Each value
/// is rounded to 12 decimal places so grids are exactly reproducible.
std::vector<double> parse_range(const std::string &text);

/// Resolves bell_pair, five_qubit, four_one_two, random:<n>,<k> (seeded from
/// the index) or file:<path>. Any other text is read as a file path.
LabeledCode resolve_code(const std::string &source, uint64_t seed, uint64_t index);

/// Entry point for the teleqec tool. Writes results to out and diagnostics to
/// err; returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace teleqec

#endif
