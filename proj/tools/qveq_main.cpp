// qveq: exact-arithmetic workbench for the degree-25 difference equation.
//
//   qveq verify     residual and symmetry scans for a candidate mapping
//   qveq replay     cascade replay, reference diff and exact re-derivation
//   qveq stability  fixed-point stability certification and constants
//   qveq fuzzy      p-adic fuzzy layer checks
//
// Exit status: 0 all checks passed, 1 some check failed, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qveq/commands.hpp"

namespace {

// Applies a JSON config file (keys mirror the long flag names) as defaults;
// command-line flags still override because parsing happens afterwards.
void apply_config_file(const std::string& path, qveq::RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw qveq::ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qveq::ConfigError(std::string("config file: ") + e.what());
  }
  auto get = [&](const char* key, auto& into) {
    if (doc.contains(key)) into = doc.at(key).get<std::decay_t<decltype(into)>>();
  };
  get("degree", cfg.degree);
  get("mode", cfg.mode);
  get("precision", cfg.precision);
  get("seed", cfg.seed);
  get("samples", cfg.samples);
  get("range", cfg.range);
  get("function", cfg.function);
  get("replay_mode", cfg.replay_mode);
  get("diff", cfg.diff);
  get("alt_seed", cfg.alt_seed);
  get("fixture", cfg.fixture_path);
  get("control", cfg.control);
  get("q", cfg.q);
  get("iterations", cfg.iterations);
  get("kappa", cfg.kappa);
  get("eps", cfg.eps);
  get("constants_only", cfg.constants_only);
  get("which", cfg.which);
  get("a", cfg.exp_a);
  get("b", cfg.exp_b);
  get("l", cfg.exp_l);
  get("p", cfg.prime);
  get("matrix_n", cfg.matrix_n);
  get("out", cfg.out_path);
}

void add_common_options(CLI::App* cmd, qveq::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "RNG seed; echoed in the report");
  cmd->add_option("--precision", cfg.precision, "float precision in bits")
      ->check(CLI::Range(64L, 65536L));
  cmd->add_option("--out", cfg.out_path, "report path (default: stdout)");
  cmd->add_option("--config", "JSON config file mirroring the flags")
      ->configurable(false);
}

int emit(const qveq::ReportDocument& report, const qveq::RunConfig& cfg) {
  const std::string text = report.serialize();
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << cfg.out_path << "'\n";
      return 2;
    }
    out << text;
  }
  return qveq::exit_code_for(report);
}

}  // namespace

int main(int argc, char** argv) {
  qveq::RunConfig cfg;

  // config file first, flags override
  try {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") apply_config_file(argv[i + 1], cfg);
    }
  } catch (const qveq::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"exact workbench for the degree-25 difference equation"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "residual and symmetry scans");
  verify->add_option("--degree", cfg.degree, "equation degree (odd)");
  verify->add_option("--mode", cfg.mode, "exact | bigreal");
  verify->add_option("--function", cfg.function, "mapping under test");
  verify->add_option("--samples", cfg.samples, "number of sample pairs");
  add_common_options(verify, cfg);

  auto* replay = app.add_subcommand("replay", "cascade replay and re-derivation");
  replay->add_option("--mode", cfg.replay_mode, "auto | scripted");
  replay->add_option("--degree", cfg.degree, "equation degree (odd; auto mode only)");
  replay->add_flag("--diff", cfg.diff, "diff the scripted cascade against the reference table");
  replay->add_flag("--alt-seed", cfg.alt_seed,
                   "seed the scripted cascade with (0,2)-(13,1) instead of (0,2)-(12,1)");
  replay->add_option("--fixture", cfg.fixture_path, "reference table JSON");
  add_common_options(replay, cfg);

  auto* stability = app.add_subcommand("stability", "fixed-point certification");
  stability->add_option("--control", cfg.control,
                        "power:l=L | product:a=A,b=B | mixed:a=A,b=B");
  stability->add_option("--q", cfg.q, "+1 or -1");
  stability->add_option("--iters", cfg.iterations, "iteration count K");
  stability->add_option("--kappa", cfg.kappa, "contraction constant (default: derived)");
  stability->add_option("--eps", cfg.eps, "demo perturbation size");
  stability->add_option("--mode", cfg.mode, "exact | bigreal");
  stability->add_option("--samples", cfg.samples, "sample count");
  stability->add_option("--range", cfg.range, "samples drawn from [-range, range]");
  stability->add_option("--n", cfg.matrix_n, "largest matrix size for the lifted bound");
  stability->add_flag("--constants-only", cfg.constants_only,
                      "only recompute the closed-form constants");
  stability->add_option("--which", cfg.which, "constants target: power | product | mixed");
  stability->add_option("--a", cfg.exp_a, "exponent a");
  stability->add_option("--b", cfg.exp_b, "exponent b");
  stability->add_option("--l", cfg.exp_l, "exponent l");
  add_common_options(stability, cfg);

  auto* fuzzy = app.add_subcommand("fuzzy", "p-adic fuzzy layer checks");
  fuzzy->add_option("--p", cfg.prime, "prime of the p-adic absolute value");
  fuzzy->add_option("--function", cfg.function, "mapping under test");
  fuzzy->add_option("--q", cfg.q, "+1 or -1");
  fuzzy->add_option("--kappa", cfg.kappa, "scaling constant (default: derived)");
  fuzzy->add_option("--iters", cfg.iterations, "iteration count K");
  fuzzy->add_option("--n", cfg.matrix_n, "matrix size for the lift");
  add_common_options(fuzzy, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    const qveq::ReportDocument report = qveq::run_command(cfg);
    return emit(report, cfg);
  } catch (const qveq::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
