#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "remgibbs/bounds.hpp"
#include "remgibbs/gibbs_approx.hpp"

namespace remgibbs::cli {

enum class Command { free_energy, verify, simulate, compare };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::verify;
  std::vector<int> Ns{20};
  /// Absolute inverse temperatures.
  std::vector<double> betas;
  int schedule_p = 1;
  std::optional<std::size_t> kN;
  std::size_t replicas = 50;
  bool replicas_given = false;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string out;
  Format format = Format::csv;
  /// Empty means the full verification suite.
  std::vector<std::string> checks;
  bool checks_given = false;
  std::string method = "v2";
  Mu2Weights weights = Mu2Weights::published;
};

/// Parses command-line flags. Throws std::invalid_argument on bad input;
/// returns nullopt when --help was printed.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out);

/// Names accepted by --checks, in suite order.
const std::vector<std::string>& verify_check_names();

struct FreeEnergyRow {
  int N = 0;
  double beta = 0.0;
  double mean_FN = 0.0;
  double sd_FN = 0.0;
  double F_limit = 0.0;
};

std::vector<FreeEnergyRow> cmd_free_energy(const RunConfig& cfg);

/// Runs the selected checks; throws std::invalid_argument("no checks selected")
/// when the selection is empty.
std::vector<BoundReport> cmd_verify(const RunConfig& cfg);

struct CompareRow {
  std::size_t replica = 0;
  int N = 0;
  double beta_over_betac = 0.0;
  std::size_t kN = 0;
  double tv = 0.0;
  double bound = 0.0;
  bool omega = false;
  double w_max_exact = 0.0;
  double w_max_sim = 0.0;
  double participation_exact = 0.0;
  double participation_sim = 0.0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  /// Two-sample KS statistics between brute force and the simulator, per N.
  struct Ks {
    int N = 0;
    double beta_over_betac = 0.0;
    std::string functional;
    double statistic = 0.0;
    double pvalue = 0.0;
  };
  std::vector<Ks> ks;
};

CompareResult cmd_compare(const RunConfig& cfg);

/// Writes the output of one command; returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out);

/// Full entry point: parse, run, report errors. Returns the exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace remgibbs::cli
