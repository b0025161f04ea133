#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dqw::cli {

/// Invalid configuration; the message is shown to the user.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double omega = 1.0;
  double diss = 0.0;
  std::vector<double> times{1.0};
  double tol = 1e-10;
  /// Fixed window radius; 0 selects it per time point.
  int window = 0;
  /// csv or json; empty picks the command default.
  std::string format;
  /// Output path; empty writes to the given stream.
  std::string out;
  /// Worker threads; does not affect results.
  int threads = 0;
  /// Largest mirror label or site printed; 0 uses the window radius.
  int s_max = 0;
  int k_points = 32;
  /// Momentum difference for a Wigner slice at k = (dk/2, -dk/2).
  std::optional<double> delta_k;
  /// Dissipation ratios 2 D / omega swept by the sweep command.
  std::vector<double> r_d;
  /// Also write the full density matrix (evolve, single time only).
  bool full = false;
  /// validate: "desk" runs the built-in parameter set, "point" the configured one.
  /// Setting any of omega, diss, t, t-range, r-d switches the default to "point".
  std::string suite = "desk";

  void validate() const;
  std::string resolved_format() const;
};

/// Comma-separated reals.
std::vector<double> parse_list(std::string_view text);

/// Inclusive range "start:stop:step".
std::vector<double> parse_time_range(std::string_view text);

/// Sets one key from text; keys match the long flag names.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Whether key selects a parameter point (omega, diss, t, t-range, r-d).
bool is_point_key(std::string_view key);

/// Reads "key = value" lines over base; blank lines and lines starting with '#' are skipped.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// Effective configuration as "key = value" lines readable by parse_config_text.
/// Thread count and output path are omitted since they do not change results.
std::string dump_config(const RunConfig& cfg);

/// Extracts the configuration embedded as leading "# key = value" lines of a CSV file.
RunConfig config_from_csv_header(std::string_view csv);

}  // namespace dqw::cli
