#include "cli/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace etapt::cli {

double round15(double v) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  double out = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), out);
  return out;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, round15(v));
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Json complex_json(Complex z) {
  Json j;
  j["re"] = round15(z.real());
  j["im"] = round15(z.imag());
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["c1sq"] = round15(c.c1_sq);
  j["c2sq"] = round15(c.c2_sq);
  j["c3"] = round15(c.c3);
  j["dims"] = {c.dim1, c.dim2};
  j["k"] = c.k;
  j["bulk_fraction"] = round15(c.bulk_fraction);
  j["tolerances"] = {{"reality", c.tolerances.reality},
                     {"convergence", c.tolerances.convergence},
                     {"machine", c.tolerances.machine},
                     {"identity", c.tolerances.identity},
                     {"sweep", c.tolerances.sweep}};
  j["theta_override"] = c.theta_override ? Json(round15(*c.theta_override)) : Json(nullptr);
  if (!c.c3_grid.empty()) {
    Json grid = Json::array();
    for (double v : c.c3_grid) grid.push_back(round15(v));
    j["c3_grid"] = std::move(grid);
  }
  return j;
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        out += c;
        continue;
      }
      out += '"';
      for (char ch : c) {
        if (ch == '"') out += '"';
        out += ch;
      }
      out += '"';
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace etapt::cli
