#pragma once

#include <filesystem>
#include <iosfwd>

namespace lqmfg::cli {

/// Process exit codes. No other values are returned.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kAssumptionViolated = 2,
  kMaxIterReached = 3,
};

int cmd_validate(const std::filesystem::path& config, std::ostream& out,
                 std::ostream& err);

/// Writes policy.json, mean_field.csv and summary.json into out_dir.
int cmd_solve(const std::filesystem::path& config,
              const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err);

/// Writes costs.csv (one block per configured N) and mean_path.csv (for the
/// largest N) into out_dir.
int cmd_simulate(const std::filesystem::path& config,
                 const std::filesystem::path& policy,
                 const std::filesystem::path& out_dir, unsigned threads,
                 std::ostream& out, std::ostream& err);

int cmd_bound(const std::filesystem::path& config, double epsilon,
              double initial_gap, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lqmfg::cli
