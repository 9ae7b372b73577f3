// meanscope: seeded verification of weighted mean inequalities.
//
// Exit codes: 0 everything passed, 1 a mathematical check failed,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "meanscope/harness.hpp"
#include "meanscope/means.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

template <typename T>
std::optional<T> given(const CLI::Option* opt, const T& value) {
  return opt->count() > 0 ? std::optional<T>(value) : std::nullopt;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kExitPass;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "meanscope: cannot write '" << path << "'\n";
    return kExitUsage;
  }
  out << text;
  return kExitPass;
}

double mean_value(const std::string& kind, double v, double a, double b) {
  using namespace meanscope;
  const PositivePair p(a, b);
  if (kind == "arith") return arithmetic(Weight(v), p);
  if (kind == "geom") return geometric(Weight(v), p);
  if (kind == "harm") return harmonic(Weight(v), p);
  return weighted_log_mean(Weight(v), p);
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = meanscope::harness;

  CLI::App app{"Seeded verification of weighted mean inequalities"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run inequality suites and write a report");
  std::string suite, format, out, config_path, seed_text;
  long samples = 0;
  double tol = 0.0;
  int workers = 1;
  bool timing = false;
  std::vector<int> dims;
  auto* o_suite = verify->add_option("--suite", suite, "scalar|operator|jensen|integral|all");
  auto* o_samples = verify->add_option("--samples", samples, "Samples per entry (pairs per dimension for operator rows)");
  auto* o_seed = verify->add_option("--seed", seed_text, "Unsigned 64-bit seed");
  auto* o_tol = verify->add_option("--tol", tol, "Relative tolerance (default 1e-10, operator rows 1e-9)");
  auto* o_dims = verify->add_option("--dims", dims, "Operator dimensions")->delimiter(',');
  auto* o_format = verify->add_option("--format", format, "json|csv|text");
  auto* o_out = verify->add_option("--out", out, "Output path (default stdout)");
  auto* o_workers = verify->add_option("--workers", workers, "Worker threads");
  auto* o_timing = verify->add_flag("--timing", timing, "Record wall-clock time in the report");
  verify->add_option("--config", config_path, "JSON config file mirroring these flags");

  // tightness
  auto* tight = app.add_subcommand("tightness", "Search for the worst case of one entry");
  std::string ineq;
  long budget = 100000;
  std::string tight_seed = "0";
  std::vector<int> tight_dims{2, 3, 4, 5, 6, 7, 8};
  tight->add_option("--ineq", ineq, "Entry id (S1..S25, O1..O4)")->required();
  tight->add_option("--budget", budget, "Evaluations (pairs for operator rows)");
  tight->add_option("--seed", tight_seed, "Unsigned 64-bit seed");
  tight->add_option("--dims", tight_dims, "Operator dimensions")->delimiter(',');

  // constants
  auto* consts = app.add_subcommand("constants", "Specht and Kantorovich constants");
  std::vector<double> t_values;
  consts->add_option("--t", t_values, "Ratio points")->required()->delimiter(',');

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate one weighted mean");
  std::string mean_kind;
  double ev = 0.5, ea = 1.0, eb = 1.0;
  eval->add_option("--mean", mean_kind, "arith|geom|harm|log")
      ->required()
      ->check(CLI::IsMember({"arith", "geom", "harm", "log"}));
  eval->add_option("--v", ev, "Weight in [0, 1]")->required();
  eval->add_option("--a", ea, "First argument")->required();
  eval->add_option("--b", eb, "Second argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      h::SpecOverrides flags;
      flags.suite = given(o_suite, suite);
      flags.samples = given(o_samples, samples);
      flags.tol = given(o_tol, tol);
      flags.dims = given(o_dims, dims);
      flags.format = given(o_format, format);
      flags.out = given(o_out, out);
      flags.workers = given(o_workers, workers);
      if (o_timing->count() > 0) flags.timing = timing;
      if (o_seed->count() > 0) {
        flags.seed = h::overrides_from_json({{"seed", seed_text}}).seed;
      }
      const h::SpecOverrides file =
          config_path.empty() ? h::SpecOverrides{} : h::load_config_file(config_path);
      const h::SampleSpec spec = h::resolve_spec(flags, file, std::getenv("MEANSCOPE_SEED"));
      const h::SuiteReport report = h::run_verify(spec);
      const int io = write_output(h::render(report, spec.format), spec.out);
      if (io != kExitPass) return io;
      if (report.failures > 0) {
        std::cerr << "meanscope: " << report.failures << " failing evaluations; see argmin in "
                  << "the report\n";
        return kExitFail;
      }
      return kExitPass;
    }
    if (tight->parsed()) {
      const auto seed = h::overrides_from_json({{"seed", tight_seed}}).seed.value();
      const auto result = h::run_tightness(ineq, budget, seed, tight_dims);
      std::cout << result.json.dump(2) << "\n";
      return result.pass ? kExitPass : kExitFail;
    }
    if (consts->parsed()) {
      std::cout << h::render_constants(h::run_constants(t_values));
      return kExitPass;
    }
    if (eval->parsed()) {
      std::cout.precision(17);
      std::cout << mean_value(mean_kind, ev, ea, eb) << "\n";
      return kExitPass;
    }
  } catch (const std::invalid_argument& e) {
    // UsageError and input validation (weights, positivity) alike.
    std::cerr << "meanscope: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "meanscope: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
