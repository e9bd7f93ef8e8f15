#pragma once

// Command-line front end. Every command writes a JSON or CSV report and
// returns the process exit status: 0 when every assertion holds, 1 when one
// fails (the report is still written), 2 on an input or usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bisector_lab {

enum class Command { Counts, Verify, Sweep, Exhaustive, Exponents };
enum class OutputFormat { Json, Csv };
enum class Suite { Exact, Dashboards, All };

struct RunConfig {
  Command command = Command::Counts;
  std::optional<std::uint64_t> p;
  std::string input;
  std::string gen;
  std::uint64_t trials = 1;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
  OutputFormat format = OutputFormat::Json;
  Suite suite = Suite::All;
  std::optional<std::size_t> k;
};

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitInputError = 2;

/// Runs one configured command, writing the report to cfg.out or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and runs. Thread count defaults
/// to BISECTOR_LAB_THREADS, else 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bisector_lab
