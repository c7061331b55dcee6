#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace etapt::cli {

namespace {

double parse_number(const std::string& token, const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw UsageError(std::string("cannot parse ") + what + " '" + token + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Grid points are snapped to 1e-12 so that start + i * step prints cleanly.
double snap(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::pair<int, int> parse_dims(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) {
    throw UsageError("--dims expects N or N1,N2, got '" + text + "'");
  }
  auto as_int = [&](const std::string& s) {
    const double v = parse_number(s, "dimension");
    if (v != std::floor(v)) throw UsageError("dimensions must be integers");
    return static_cast<int>(v);
  };
  const int n1 = as_int(parts[0]);
  return {n1, parts.size() == 2 ? as_int(parts[1]) : n1};
}

std::vector<double> parse_grid_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw UsageError("--c3-grid expects start:stop:step, got '" + text + "'");
  }
  const double start = parse_number(parts[0], "grid start");
  const double stop = parse_number(parts[1], "grid stop");
  const double step = parse_number(parts[2], "grid step");
  if (!(step > 0.0)) throw UsageError("grid step must be positive");
  std::vector<double> grid;
  if (stop < start) return grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) grid.push_back(snap(start + static_cast<double>(i) * step));
  return grid;
}

std::vector<double> parse_grid_list(const std::string& text) {
  std::vector<double> grid;
  if (text.empty()) return grid;
  for (const auto& part : split(text, ',')) grid.push_back(parse_number(part, "grid value"));
  return grid;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw UsageError("--format must be json or csv, got '" + text + "'");
}

void RunConfig::validate() const {
  if (!(c1_sq > 0.0) || !(c2_sq > 0.0)) throw UsageError("--c1sq and --c2sq must be positive");
  if (!std::isfinite(c1_sq) || !std::isfinite(c2_sq) || !std::isfinite(c3)) {
    throw UsageError("oscillator parameters must be finite");
  }
  if (dim1 < 2 || dim2 < 2) throw UsageError("each mode needs at least 2 Fock levels");
  if (dim1 > 64 || dim2 > 64) throw UsageError("at most 64 Fock levels per mode are supported");
  if (k < 1) throw UsageError("-k must be at least 1");
  if (!(bulk_fraction > 0.0 && bulk_fraction <= 1.0)) {
    throw UsageError("--bulk-fraction must lie in (0, 1]");
  }
  for (double t : {tolerances.reality, tolerances.convergence, tolerances.machine,
                   tolerances.identity, tolerances.sweep}) {
    if (!(t > 0.0)) throw UsageError("tolerances must be positive");
  }
  if (jobs < 1) throw UsageError("--jobs must be at least 1");
  if (theta_override && !std::isfinite(*theta_override)) {
    throw UsageError("--theta-override must be finite");
  }
}

OscillatorParams RunConfig::params() const { return {c1_sq, c2_sq, c3}; }

TwoModeDims RunConfig::dims() const { return {ModeDim(dim1), ModeDim(dim2)}; }

void print_defaults(std::ostream& os) {
  const RunConfig d;
  char line[128];
  auto row = [&](const char* key, const std::string& value) {
    std::snprintf(line, sizeof line, "  %-18s %s\n", key, value.c_str());
    os << line;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  os << "etapt defaults\n";
  row("c1sq", num(d.c1_sq));
  row("c2sq", num(d.c2_sq));
  row("c3", num(d.c3));
  row("dims", std::to_string(d.dim1) + "," + std::to_string(d.dim2));
  row("k", std::to_string(d.k));
  row("bulk-fraction", num(d.bulk_fraction));
  row("tol-reality", num(d.tolerances.reality));
  row("tol-convergence", num(d.tolerances.convergence));
  row("tol-machine", num(d.tolerances.machine));
  row("tol-identity", num(d.tolerances.identity));
  row("tol-sweep", num(d.tolerances.sweep));
  row("c3-grid", "0:1.5:0.05");
  row("format", "json");
  row("jobs", std::to_string(d.jobs));
}

}  // namespace etapt::cli
