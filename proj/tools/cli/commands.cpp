#include "cli/commands.hpp"

#include <cmath>

#include "etapt/linalg.hpp"
#include "etapt/model.hpp"
#include "etapt/symm.hpp"
#include "etapt/verify.hpp"

namespace etapt::cli {

namespace {

constexpr const char* kSchema = "etapt/1";

Json envelope(const std::string& command, const RunConfig& config) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = config_json(config);
  return j;
}

void finish(CommandResult& r, Json results, bool pass) {
  r.report["results"] = std::move(results);
  r.report["pass"] = pass;
  r.exit_code = pass ? kExitPass : kExitCheckFailed;
}

const char* phase_name(Phase p) { return p == Phase::Unbroken ? "unbroken" : "broken"; }

double theta_for(const RunConfig& config) {
  return config.theta_override ? *config.theta_override : model::theta_of(config.params());
}

std::string bool_cell(bool b) { return b ? "true" : "false"; }

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BrokenPhase:
    case ErrorKind::DegenerateFrequencies:
      return kExitCheckFailed;
    case ErrorKind::InvalidDimension:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidArgument:
    case ErrorKind::TruncationLimit:
      return kExitUsage;
    case ErrorKind::Numerical:
    case ErrorKind::Degeneracy:
    case ErrorKind::IllConditionedNormalization:
      return kExitNumerical;
  }
  return kExitNumerical;
}

CommandResult cmd_spectrum(const RunConfig& config) {
  config.validate();
  CommandResult r{kExitPass, envelope("spectrum", config), {}};
  const auto rep = verify::spectrum_report(config.params(), config.dims(),
                                           static_cast<std::size_t>(config.k), config.tolerances);

  Json levels = Json::array();
  for (const auto& m : rep.matched) {
    levels.push_back({{"n1", m.label.n1},
                      {"n2", m.label.n2},
                      {"analytic", round15(m.analytic)},
                      {"numeric", complex_json(m.numeric)},
                      {"abs_error", round15(m.abs_error)},
                      {"abs_error_sci", sci(m.abs_error)}});
  }
  Json numeric = Json::array();
  for (const auto& z : rep.numeric) numeric.push_back(complex_json(z));
  Json unmatched = Json::array();
  for (const auto& z : rep.unmatched) unmatched.push_back(complex_json(z));

  Json res;
  res["phase"] = phase_name(rep.phase);
  res["k"] = rep.k;
  res["max_imag"] = round15(rep.max_imag);
  res["max_imag_sci"] = sci(rep.max_imag);
  res["levels"] = std::move(levels);
  res["numeric"] = std::move(numeric);
  res["unmatched"] = std::move(unmatched);
  if (rep.phase == Phase::Broken) {
    res["pair_audit"] = round15(rep.pair_audit);
    res["pair_audit_sci"] = sci(rep.pair_audit);
  }

  r.table.header = {"index", "n1", "n2", "analytic", "numeric_re", "numeric_im", "abs_error"};
  for (std::size_t i = 0; i < rep.numeric.size(); ++i) {
    const Complex z = rep.numeric[i];
    if (i < rep.matched.size()) {
      const auto& m = rep.matched[i];
      r.table.rows.push_back({std::to_string(i), std::to_string(m.label.n1),
                              std::to_string(m.label.n2), csv_number(m.analytic),
                              csv_number(z.real()), csv_number(z.imag()),
                              csv_number(m.abs_error)});
    } else {
      r.table.rows.push_back({std::to_string(i), "", "", "", csv_number(z.real()),
                              csv_number(z.imag()), ""});
    }
  }
  finish(r, std::move(res), rep.pass);
  return r;
}

CommandResult cmd_verify(const RunConfig& config) {
  config.validate();
  CommandResult r{kExitPass, envelope("verify", config), {}};
  const verify::SuiteOptions options{config.bulk_fraction, config.tolerances,
                                     config.theta_override};
  const auto reports = verify::identity_suite(config.params(), config.dims(), options);

  Json identities = Json::array();
  bool pass = true;
  r.table.header = {"name", "residual", "tolerance", "bulk_fraction", "pass"};
  for (const auto& rep : reports) {
    identities.push_back({{"name", rep.name},
                          {"residual", round15(rep.residual)},
                          {"residual_sci", sci(rep.residual)},
                          {"tolerance", rep.tolerance},
                          {"bulk_fraction", round15(rep.bulk_fraction)},
                          {"pass", rep.pass}});
    r.table.rows.push_back({rep.name, sci(rep.residual), sci(rep.tolerance),
                            csv_number(rep.bulk_fraction), bool_cell(rep.pass)});
    pass = pass && rep.pass;
  }
  Json res;
  res["theta"] = round15(theta_for(config));
  res["identities"] = std::move(identities);
  finish(r, std::move(res), pass);
  return r;
}

CommandResult cmd_gram(const RunConfig& config) {
  config.validate();
  CommandResult r{kExitPass, envelope("gram", config), {}};
  const auto params = config.params();
  const auto dims = config.dims();
  const auto k = static_cast<std::size_t>(config.k);

  // Labels and oracle signs come from the decoupled oscillator; the Gram
  // tables use eigenvectors of the truncated H directly.
  const auto states = model::model_eigensystem(params, dims, k);
  const Matrix pi = symm::parity(dims).matrix();
  std::vector<int> oracle;
  for (const auto& s : states) {
    const Complex v = s.phi.transpose() * pi * s.phi;
    oracle.push_back(v.real() > 0.0 ? 1 : -1);
  }

  const auto pairs = linalg::general_eigensystem(model::hamiltonian(params, dims).matrix());
  std::vector<Vector> vecs;
  for (std::size_t i = 0; i < k; ++i) vecs.push_back(pairs[i].vector);

  const double theta = theta_for(config);
  const auto et = symm::eta_tilde(symm::metric(theta, dims));
  const auto g = verify::gram(vecs, GramForm::EtaTilde, et);
  const auto c = verify::gram(vecs, GramForm::CEtaTilde, et);

  const double tol = config.tolerances.convergence;
  const bool signs_ok = g.signs == oracle;
  const bool pass = signs_ok && g.max_deviation < tol && c.max_deviation < tol;

  Json labels = Json::array();
  for (const auto& s : states) labels.push_back({s.label.n1, s.label.n2});
  Json res;
  res["theta"] = round15(theta);
  res["labels"] = std::move(labels);
  res["signs"] = g.signs;
  res["oracle_signs"] = oracle;
  res["signs_match"] = signs_ok;
  res["eta_tilde"] = {{"matrix", matrix_json(g.matrix)},
                      {"max_deviation", round15(g.max_deviation)},
                      {"max_deviation_sci", sci(g.max_deviation)},
                      {"max_offdiag", round15(g.max_offdiag)}};
  res["c_eta_tilde"] = {{"matrix", matrix_json(c.matrix)},
                        {"max_deviation", round15(c.max_deviation)},
                        {"max_deviation_sci", sci(c.max_deviation)},
                        {"max_offdiag", round15(c.max_offdiag)}};

  r.table.header = {"n", "n1", "n2", "sign", "oracle_sign", "eta_tilde_re", "eta_tilde_im",
                    "c_eta_tilde_re", "c_eta_tilde_im"};
  for (std::size_t n = 0; n < k; ++n) {
    const auto i = static_cast<Index>(n);
    r.table.rows.push_back({std::to_string(n), std::to_string(states[n].label.n1),
                            std::to_string(states[n].label.n2), std::to_string(g.signs[n]),
                            std::to_string(oracle[n]), csv_number(g.matrix(i, i).real()),
                            csv_number(g.matrix(i, i).imag()), csv_number(c.matrix(i, i).real()),
                            csv_number(c.matrix(i, i).imag())});
  }
  finish(r, std::move(res), pass);
  return r;
}

CommandResult cmd_sweep(const RunConfig& config) {
  config.validate();
  if (config.c3_grid.empty()) throw UsageError("the c3 grid is empty");
  CommandResult r{kExitPass, envelope("sweep", config), {}};
  const auto rep =
      verify::phase_sweep(config.c1_sq, config.c2_sq, config.c3_grid, config.dims(),
                          static_cast<std::size_t>(config.k), config.tolerances.sweep,
                          config.jobs);

  Json rows = Json::array();
  r.table.header = {"c3", "max_imag", "unbroken_analytic", "unbroken_numeric"};
  for (const auto& row : rep.rows) {
    rows.push_back({{"c3", round15(row.c3)},
                    {"max_imag", round15(row.max_imag)},
                    {"unbroken_analytic", row.unbroken_analytic},
                    {"unbroken_numeric", row.unbroken_numeric}});
    r.table.rows.push_back({csv_number(row.c3), sci(row.max_imag),
                            bool_cell(row.unbroken_analytic), bool_cell(row.unbroken_numeric)});
  }
  Json res;
  res["threshold"] = rep.threshold;
  res["step"] = round15(rep.step);
  res["analytic_boundary"] = round15(rep.analytic_boundary);
  res["detected_boundary"] =
      rep.detected_boundary ? Json(round15(*rep.detected_boundary)) : Json(nullptr);
  res["warnings"] = rep.warnings;
  res["rows"] = std::move(rows);
  finish(r, std::move(res), rep.pass);
  return r;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  try {
    if (name == "spectrum") return cmd_spectrum(config);
    if (name == "verify") return cmd_verify(config);
    if (name == "gram") return cmd_gram(config);
    if (name == "sweep") return cmd_sweep(config);
  } catch (const Error& e) {
    CommandResult r{exit_code_for(e.kind()), envelope(name, config), {}};
    r.report["results"] = nullptr;
    r.report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.report["pass"] = false;
    r.table.header = {"error", "message"};
    r.table.rows.push_back({std::string(to_string(e.kind())), e.what()});
    return r;
  }
  throw UsageError("unknown command '" + name + "'");
}

std::string render(const CommandResult& result, OutputFormat format) {
  return format == OutputFormat::Json ? dump(result.report) : result.table.render();
}

}  // namespace etapt::cli
