#pragma once

// Command-line front end: one subcommand per verification, one output record
// per instance, a closing summary line and a fixed exit-status contract.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubebm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 0;

enum class Mode { kFloat, kExact };
enum class Format { kCsv, kJson };

struct RunConfig {
  std::string subcommand;
  int n = 0;  // 0: infer from --a / --graph or use the subcommand default
  std::uint64_t seed = kDefaultSeed;
  int trials = 0;  // 0: subcommand default
  std::vector<double> densities;
  std::optional<double> k;
  Mode mode = Mode::kFloat;
  Format format = Format::kCsv;
  std::optional<std::string> graph;
  std::optional<std::string> a;
  std::optional<std::string> b;
  int support = 0;  // max atoms per random measure; 0: subcommand default
};

/// Usage errors carry exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one configured subcommand. Records and the summary go to `out`,
/// diagnostics to `err`. Returns 0, 1 or 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs it.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cubebm::cli
