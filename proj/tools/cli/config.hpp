// config.hpp: run configuration shared by every etapt subcommand.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "etapt/verify.hpp"

namespace etapt::cli {

enum class OutputFormat { Json, Csv };

// Bad flags or inconsistent configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double c1_sq = 2.0;
  double c2_sq = 1.0;
  double c3 = 0.5;
  int dim1 = 24;
  int dim2 = 24;
  int k = 6;
  double bulk_fraction = 0.5;
  Tolerances tolerances{};
  std::optional<double> theta_override;
  std::string output;  // empty: stdout
  OutputFormat format = OutputFormat::Json;
  unsigned jobs = 1;
  std::vector<double> c3_grid;  // sweep only

  // Throws UsageError.
  void validate() const;

  OscillatorParams params() const;
  TwoModeDims dims() const;
};

// "20,20" -> (20, 20); a single value sets both modes.
std::pair<int, int> parse_dims(const std::string& text);

// "start:stop:step", endpoints inclusive up to rounding.
std::vector<double> parse_grid_range(const std::string& text);

// "0,0.5,1"
std::vector<double> parse_grid_list(const std::string& text);

OutputFormat parse_format(const std::string& text);

void print_defaults(std::ostream& os);

}  // namespace etapt::cli
