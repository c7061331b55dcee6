// json_io.hpp: number formatting and report serialization.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"
#include "etapt/fock.hpp"

namespace etapt::cli {

using Json = nlohmann::ordered_json;

// Round to 15 significant digits; non-finite values pass through.
double round15(double v);

// "%.6e"
std::string sci(double v);

// Shortest round-trip text of round15(v), for CSV cells.
std::string csv_number(double v);

Json complex_json(Complex z);
Json matrix_json(const Matrix& m);
Json config_json(const RunConfig& config);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const;
};

// Two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace etapt::cli
