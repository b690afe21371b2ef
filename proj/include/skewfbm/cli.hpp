#pragma once

#include "skewfbm/fbm.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewfbm::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kIoError = 3 };

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  double hurst = 0.75;
  double alpha = 0.4;
  double x0 = 0.0;
  double horizon = 1.0;
  long steps = 4096;
  std::uint64_t seed = 20160901;
  std::vector<int> n_list{8, 16, 32, 64, 128};
  Generator generator = Generator::circulant;
  std::string output_dir = "out";
  double gamma = 0.65;                      // Hoelder exponent for the fractional-bound check
  std::optional<double> order_tilde;        // defaults to default_order_tilde(gamma)
  bool figure_grid = false;                 // simulate: emit the full (H, alpha) figure grid
};

/// Applies one key=value setting; keys match the long flag names (dashes or underscores).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses a key=value config text ('#' starts a comment). Errors name the source, line and field.
RunConfig parse_config_text(const std::string& text, RunConfig base = {}, const std::string& source = "<config>");
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::vector<int> parse_n_list(const std::string& text);

/// Throws UsageError when a field violates the owning module's constraints.
void validate(const RunConfig& config);

int cmd_fbm(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_converge(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Seeds used for the figure grid: row r (SBm, H=0.75, H=0.95) uses config.seed + r.
struct FigurePanel {
  double hurst;
  double alpha;
  std::uint64_t seed;
};
std::vector<FigurePanel> figure_panels(const RunConfig& config);

}  // namespace skewfbm::cli
