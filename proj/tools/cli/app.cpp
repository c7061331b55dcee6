#include "cli/app.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace etapt::cli {

namespace {

struct RawFlags {
  std::string dims;
  std::string format = "json";
  std::string grid_range;
  std::string grid_list;
  double theta_override = 0.0;
};

void add_common(CLI::App* sub, RunConfig& c, RawFlags& raw, bool with_c3) {
  sub->add_option("--c1sq", c.c1_sq, "c1^2 (> 0)");
  sub->add_option("--c2sq", c.c2_sq, "c2^2 (> 0)");
  if (with_c3) sub->add_option("--c3", c.c3, "coupling strength");
  sub->add_option("--dims", raw.dims, "Fock levels per mode, N or N1,N2");
  sub->add_option("-k", c.k, "number of low-lying levels");
  sub->add_option("--bulk-fraction", c.bulk_fraction,
                  "bulk is n1 + n2 <= fraction * min(N1, N2)");
  sub->add_option("--tol-reality", c.tolerances.reality);
  sub->add_option("--tol-convergence", c.tolerances.convergence);
  sub->add_option("--tol-machine", c.tolerances.machine);
  sub->add_option("--tol-identity", c.tolerances.identity);
  sub->add_option("--tol-sweep", c.tolerances.sweep);
  sub->add_option("-o,--output", c.output, "write the report here instead of stdout");
  sub->add_option("--format", raw.format, "json or csv");
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  RawFlags raw;
  bool show_defaults = false;

  CLI::App app{"Numerical checks for the PT-symmetric coupled oscillator"};
  app.name("etapt");
  app.add_flag("--show-defaults", show_defaults, "print default settings and exit");
  app.require_subcommand(0, 1);

  auto* spectrum = app.add_subcommand("spectrum", "truncated vs analytic low-lying spectrum");
  auto* verify = app.add_subcommand("verify", "bulk-projected operator identities");
  auto* gram = app.add_subcommand("gram", "eta~ and C eta~ Gram tables of the eigenstates");
  auto* sweep = app.add_subcommand("sweep", "scan c3 across the exceptional point");
  add_common(spectrum, config, raw, true);
  add_common(verify, config, raw, true);
  add_common(gram, config, raw, true);
  add_common(sweep, config, raw, false);
  for (auto* sub : {verify, gram}) {
    sub->add_option("--theta-override", raw.theta_override,
                    "use this angle instead of the closure root");
  }
  auto* range = sweep->add_option("--c3-grid", raw.grid_range, "start:stop:step");
  auto* list = sweep->add_option("--c3-list", raw.grid_list, "comma-separated c3 values");
  range->excludes(list);
  sweep->add_option("--jobs", config.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (show_defaults) {
    print_defaults(out);
    return kExitPass;
  }
  const auto chosen = app.get_subcommands();
  if (chosen.empty()) {
    err << app.help();
    return kExitUsage;
  }
  const std::string name = chosen.front()->get_name();

  try {
    if (!raw.dims.empty()) std::tie(config.dim1, config.dim2) = parse_dims(raw.dims);
    config.format = parse_format(raw.format);
    if ((name == "verify" || name == "gram") && chosen.front()->count("--theta-override") > 0) {
      config.theta_override = raw.theta_override;
    }
    if (name == "sweep") {
      if (sweep->count("--c3-list") > 0) {
        config.c3_grid = parse_grid_list(raw.grid_list);
      } else {
        config.c3_grid = parse_grid_range(raw.grid_range.empty() ? "0:1.5:0.05" : raw.grid_range);
      }
    }
    config.validate();

    const CommandResult result = run_command(name, config);
    const std::string text = render(result, config.format);
    if (config.output.empty()) {
      out << text;
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!(file << text)) throw UsageError("cannot write " + config.output);
    }
    if (result.report.contains("error")) {
      err << "etapt: " << result.report["error"]["message"].get<std::string>() << "\n";
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "etapt: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace etapt::cli
