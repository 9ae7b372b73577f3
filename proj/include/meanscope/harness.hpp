#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "meanscope/catalog.hpp"

namespace meanscope::harness {

/// Bad flags, bad config files, unknown ids. The CLI maps these to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Suite { scalar, integral, jensen, operator_rows, all };
enum class Format { json, csv, text };

Suite parse_suite(const std::string& s);
Format parse_format(const std::string& s);
const char* to_string(Suite s);
const char* to_string(Format f);

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultOperatorTol = 1e-9;

struct SampleSpec {
  Suite suite = Suite::all;
  long samples = 1000;  // per catalog entry; seeded pairs per dimension for operator rows
  std::uint64_t seed = 0;
  std::optional<double> tol;  // unset: 1e-10 for catalog entries, 1e-9 for operator rows
  std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  Format format = Format::json;
  std::string out;
  int workers = 1;
  bool timing = false;
  // Where each setting came from: "flag", "config", "env" or "default".
  std::map<std::string, std::string> provenance;

  double catalog_tol() const { return tol.value_or(kDefaultTol); }
  double operator_tol() const { return tol.value_or(kDefaultOperatorTol); }
  void validate() const;
};

/// Settings given explicitly by one source.
struct SpecOverrides {
  std::optional<std::string> suite;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::vector<int>> dims;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<bool> timing;
};

/// Reads a config object whose keys mirror the verify flags.
SpecOverrides overrides_from_json(const nlohmann::json& config);
SpecOverrides load_config_file(const std::string& path);

/// Flags win over the config file, which wins over MEANSCOPE_SEED, which
/// wins over the defaults.
SampleSpec resolve_spec(const SpecOverrides& flags, const SpecOverrides& config,
                        const char* env_seed);

std::vector<std::string> suite_ids(Suite suite);

struct SuiteReport {
  nlohmann::json json;
  long failures = 0;
  long evaluations = 0;
};

SuiteReport run_verify(const SampleSpec& spec);

std::string report_version();
std::string render(const SuiteReport& report, Format format);

nlohmann::json inputs_to_json(const catalog::CheckInputs& in);
nlohmann::json outcome_to_json(const catalog::CheckOutcome& o);

/// Worst case found for a catalog id (S*) or an operator row (O*). Operator
/// rows draw `budget` seeded pairs across `dims` and serialize the worst
/// pair. Returns the JSON document and whether the worst case passes.
struct TightnessResult {
  nlohmann::json json;
  bool pass = true;
};

TightnessResult run_tightness(const std::string& id, long budget, std::uint64_t seed,
                              const std::vector<int>& dims);

/// max over v in [0, 1] of ((1 - v) + v t) / t^v.
double specht_by_maximization(double t);
/// max over v in [0, 1] of ((1 - v) + v t)((1 - v) + v / t).
double kantorovich_by_maximization(double t);

struct ConstantsRow {
  double t = 1.0;
  double specht_formula = 1.0;
  double specht_max = 1.0;
  double kantorovich_formula = 1.0;
  double kantorovich_max = 1.0;
  double specht_delta() const;
  double kantorovich_delta() const;
};

std::vector<ConstantsRow> run_constants(const std::vector<double>& t_values);
std::string render_constants(const std::vector<ConstantsRow>& rows);

}  // namespace meanscope::harness
