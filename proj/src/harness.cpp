#include "meanscope/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "meanscope/means.hpp"
#include "meanscope/numerics.hpp"
#include "meanscope/operator_suite.hpp"
#include "meanscope/rng.hpp"

namespace meanscope::harness {

using nlohmann::json;

namespace {

constexpr long kMaxSamples = 100'000'000;
constexpr int kMaxWorkers = 256;
constexpr int kMaxDim = 64;

bool is_operator_id(const std::string& id) { return !id.empty() && id[0] == 'O'; }

// Per-entry accumulator over a strided slice of sample indices.
struct EntryStats {
  long evaluations = 0;
  long failures = 0;
  long first_failure = -1;
  double min_relative = std::numeric_limits<double>::infinity();
  long argmin = -1;
  long alternate_failures = 0;
  double alternate_min_relative = std::numeric_limits<double>::infinity();

  void record(long index, const catalog::CheckOutcome& o) {
    ++evaluations;
    if (!o.pass) {
      ++failures;
      if (first_failure < 0 || index < first_failure) first_failure = index;
    }
    const double rel = o.relative_slack();
    // NaN slack sorts first so a broken sample is always the reported one.
    const bool worse = std::isnan(rel) ? !std::isnan(min_relative) || argmin < 0 || index < argmin
                                       : rel < min_relative || (rel == min_relative && index < argmin);
    if (argmin < 0 || worse) {
      min_relative = rel;
      argmin = index;
    }
    if (o.alternate_min_slack) {
      if (!o.alternate_pass()) ++alternate_failures;
      alternate_min_relative = std::min(alternate_min_relative,
                                        *o.alternate_min_slack / o.alternate_scale.value_or(1.0));
    }
  }

  void merge(const EntryStats& o) {
    evaluations += o.evaluations;
    failures += o.failures;
    alternate_failures += o.alternate_failures;
    alternate_min_relative = std::min(alternate_min_relative, o.alternate_min_relative);
    if (o.first_failure >= 0 && (first_failure < 0 || o.first_failure < first_failure)) {
      first_failure = o.first_failure;
    }
    if (o.argmin < 0) return;
    const bool worse = std::isnan(o.min_relative)
                           ? !std::isnan(min_relative) || argmin < 0 || o.argmin < argmin
                           : o.min_relative < min_relative ||
                                 (o.min_relative == min_relative && o.argmin < argmin);
    if (argmin < 0 || worse) {
      min_relative = o.min_relative;
      argmin = o.argmin;
    }
  }
};

catalog::CheckOutcome evaluate_sample(const catalog::InequalityEntry& e, std::uint64_t seed,
                                      long index, double tol) {
  Rng rng(stream_seed(seed, e.id, static_cast<std::uint64_t>(index)));
  const auto inputs = catalog::sample_inputs(e, rng);
  try {
    return catalog::evaluate(e.id, inputs, tol);
  } catch (const std::exception& ex) {
    catalog::CheckOutcome o;
    o.entry_id = e.id;
    o.inputs = inputs;
    o.min_slack = std::numeric_limits<double>::quiet_NaN();
    o.tol = tol;
    o.pass = false;
    o.diagnostic = std::string("evaluation threw: ") + ex.what();
    return o;
  }
}

template <typename Work>
void run_workers(int workers, Work&& work) {
  if (workers <= 1) {
    work(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back([&work, w] { work(w); });
  for (auto& t : threads) t.join();
}

const char* suite_of(const std::string& id) {
  static const std::vector<std::string> integral = {"S13", "S14", "S16", "S17", "S18"};
  static const std::vector<std::string> jensen = {"S22", "S23", "S24", "S25"};
  if (is_operator_id(id)) return "operator";
  if (std::find(integral.begin(), integral.end(), id) != integral.end()) return "integral";
  if (std::find(jensen.begin(), jensen.end(), id) != jensen.end()) return "jensen";
  return "scalar";
}

json catalog_entry_report(const catalog::InequalityEntry& e, const SampleSpec& spec) {
  const double tol = spec.catalog_tol();
  const int workers = std::max(1, spec.workers);
  std::vector<EntryStats> partial(workers);
  run_workers(workers, [&](int w) {
    for (long i = w; i < spec.samples; i += workers) {
      partial[w].record(i, evaluate_sample(e, spec.seed, i, tol));
    }
  });
  EntryStats total;
  for (const auto& p : partial) total.merge(p);

  // The worst sample is regenerated from its index rather than carried
  // through the workers.
  const auto worst = evaluate_sample(e, spec.seed, total.argmin, tol);
  json entry = {
      {"id", e.id},
      {"suite", suite_of(e.id)},
      {"description", e.description},
      {"evaluations", total.evaluations},
      {"failures", total.failures},
      {"min_slack", worst.min_slack},
      {"min_relative_slack", worst.relative_slack()},
      {"argmin", outcome_to_json(worst)},
  };
  entry["argmin"]["sample_index"] = total.argmin;
  if (total.first_failure >= 0) entry["first_failure_index"] = total.first_failure;
  if (e.alternate) {
    entry["alternate"] = {{"label", e.alternate_label},
                          {"failures", total.alternate_failures},
                          {"min_relative_slack", total.alternate_min_relative}};
  }
  return entry;
}

json pair_to_json(const op::OperatorPair& p) {
  return {{"dim", p.dim},
          {"pair_index", p.index},
          {"cond_a", p.cond_a},
          {"cond_b", p.cond_b},
          {"seed_a", p.seed_a},
          {"seed_b", p.seed_b},
          {"A", op::matrix_to_json(p.a.matrix())},
          {"B", op::matrix_to_json(p.b.matrix())}};
}

json operator_entries_report(const SampleSpec& spec, const std::vector<std::string>& ids) {
  const auto result =
      op::run_operator_suite(spec.seed, spec.dims, spec.samples, spec.operator_tol(), spec.workers);
  json entries = json::array();
  for (const auto& row : result.rows) {
    if (std::find(ids.begin(), ids.end(), row.id) == ids.end()) continue;
    const auto& meta = *std::find_if(op::operator_rows().begin(), op::operator_rows().end(),
                                     [&](const op::OperatorRow& r) { return r.id == row.id; });
    json entry = {{"id", row.id},
                  {"suite", "operator"},
                  {"description", meta.description},
                  {"evaluations", row.evaluations},
                  {"failures", row.failures},
                  {"excluded", row.excluded},
                  {"min_slack", row.argmin_min_eig},
                  {"min_relative_slack", row.min_relative_slack}};
    if (row.argmin_pair >= 0) {
      json argmin = pair_to_json(op::generate_pair(spec.seed, row.argmin_dim, row.argmin_pair));
      argmin["v"] = row.argmin_v;
      argmin["min_eig_of_difference"] = row.argmin_min_eig;
      argmin["scale"] = row.argmin_scale;
      argmin["tol"] = spec.operator_tol();
      entry["argmin"] = argmin;
    } else {
      entry["argmin"] = nullptr;
    }
    entries.push_back(entry);
  }
  return entries;
}

json spec_to_json(const SampleSpec& spec) {
  // Output path and worker count are left out: they do not change the
  // content and reports must compare equal across them.
  json prov = json::object();
  for (const auto& [k, v] : spec.provenance) {
    if (k != "out" && k != "workers") prov[k] = v;
  }
  return {{"suite", to_string(spec.suite)},
          {"samples", spec.samples},
          {"seed", spec.seed},
          {"tol", spec.catalog_tol()},
          {"operator_tol", spec.operator_tol()},
          {"dims", spec.dims},
          {"format", to_string(spec.format)},
          {"provenance", prov}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
  try {
    std::size_t used = 0;
    if (text.empty() || text[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid seed from ") + source + ": '" + text + "'");
  }
}

}  // namespace

Suite parse_suite(const std::string& s) {
  if (s == "scalar") return Suite::scalar;
  if (s == "integral") return Suite::integral;
  if (s == "jensen") return Suite::jensen;
  if (s == "operator") return Suite::operator_rows;
  if (s == "all") return Suite::all;
  throw UsageError("unknown suite '" + s + "' (scalar, operator, jensen, integral, all)");
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw UsageError("unknown format '" + s + "' (json, csv, text)");
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::scalar: return "scalar";
    case Suite::integral: return "integral";
    case Suite::jensen: return "jensen";
    case Suite::operator_rows: return "operator";
    case Suite::all: return "all";
  }
  return "?";
}

const char* to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "?";
}

void SampleSpec::validate() const {
  if (samples < 1 || samples > kMaxSamples) {
    throw UsageError("samples must be in [1, " + std::to_string(kMaxSamples) + "]");
  }
  if (tol && !(*tol > 0.0 && std::isfinite(*tol))) throw UsageError("tol must be a positive number");
  if (workers < 1 || workers > kMaxWorkers) {
    throw UsageError("workers must be in [1, " + std::to_string(kMaxWorkers) + "]");
  }
  if (suite == Suite::operator_rows || suite == Suite::all) {
    if (dims.empty()) throw UsageError("dims must be nonempty for the operator suite");
    for (int d : dims) {
      if (d < 1 || d > kMaxDim) {
        throw UsageError("dims must lie in [1, " + std::to_string(kMaxDim) + "]");
      }
    }
  }
}

SpecOverrides overrides_from_json(const json& config) {
  if (!config.is_object()) throw UsageError("config must be a JSON object");
  static const std::vector<std::string> known = {"suite",  "samples", "seed",    "tol",   "dims",
                                                 "format", "out",     "workers", "timing"};
  for (const auto& [key, _] : config.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  SpecOverrides o;
  try {
    if (config.contains("suite")) o.suite = config.at("suite").get<std::string>();
    if (config.contains("samples")) o.samples = config.at("samples").get<long>();
    if (config.contains("seed")) {
      const auto& s = config.at("seed");
      if (s.is_number_unsigned()) {
        o.seed = s.get<std::uint64_t>();
      } else if (s.is_string()) {
        o.seed = parse_seed(s.get<std::string>(), "config");
      } else {
        throw UsageError("config seed must be an unsigned integer");
      }
    }
    if (config.contains("tol")) o.tol = config.at("tol").get<double>();
    if (config.contains("dims")) o.dims = config.at("dims").get<std::vector<int>>();
    if (config.contains("format")) o.format = config.at("format").get<std::string>();
    if (config.contains("out")) o.out = config.at("out").get<std::string>();
    if (config.contains("workers")) o.workers = config.at("workers").get<int>();
    if (config.contains("timing")) o.timing = config.at("timing").get<bool>();
  } catch (const json::exception& ex) {
    throw UsageError(std::string("bad config value: ") + ex.what());
  }
  return o;
}

SpecOverrides load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json config;
  try {
    in >> config;
  } catch (const json::exception& ex) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + ex.what());
  }
  return overrides_from_json(config);
}

SampleSpec resolve_spec(const SpecOverrides& flags, const SpecOverrides& config,
                        const char* env_seed) {
  SampleSpec spec;
  auto pick = [&](const char* name, const auto& flag, const auto& file, auto& target) {
    if (flag) {
      target = *flag;
      spec.provenance[name] = "flag";
    } else if (file) {
      target = *file;
      spec.provenance[name] = "config";
    } else {
      spec.provenance[name] = "default";
    }
  };
  std::string suite = to_string(spec.suite);
  std::string format = to_string(spec.format);
  pick("suite", flags.suite, config.suite, suite);
  pick("samples", flags.samples, config.samples, spec.samples);
  pick("seed", flags.seed, config.seed, spec.seed);
  if (spec.provenance["seed"] == "default" && env_seed != nullptr && *env_seed != '\0') {
    spec.seed = parse_seed(env_seed, "MEANSCOPE_SEED");
    spec.provenance["seed"] = "env";
  }
  pick("tol", flags.tol, config.tol, spec.tol);
  pick("dims", flags.dims, config.dims, spec.dims);
  pick("format", flags.format, config.format, format);
  pick("out", flags.out, config.out, spec.out);
  pick("workers", flags.workers, config.workers, spec.workers);
  pick("timing", flags.timing, config.timing, spec.timing);
  spec.suite = parse_suite(suite);
  spec.format = parse_format(format);
  spec.validate();
  return spec;
}

std::vector<std::string> suite_ids(Suite suite) {
  std::vector<std::string> ids;
  for (const auto& e : catalog::list_entries()) {
    const std::string s = suite_of(e.id);
    if (suite == Suite::all || s == to_string(suite)) ids.push_back(e.id);
  }
  if (suite == Suite::all || suite == Suite::operator_rows) {
    for (const auto& r : op::operator_rows()) ids.push_back(r.id);
  }
  return ids;
}

std::string report_version() {
  std::string layout = catalog::catalog_fingerprint();
  for (const auto& r : op::operator_rows()) layout += "|" + r.id + "|" + r.description;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(layout)));
  return std::string("meanscope-report/1+catalog.") + buf;
}

SuiteReport run_verify(const SampleSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto ids = suite_ids(spec.suite);

  json entries = json::array();
  std::vector<std::string> operator_ids;
  for (const auto& id : ids) {
    if (is_operator_id(id)) {
      operator_ids.push_back(id);
    } else {
      entries.push_back(catalog_entry_report(catalog::find_entry(id), spec));
    }
  }
  if (!operator_ids.empty()) {
    for (auto& e : operator_entries_report(spec, operator_ids)) entries.push_back(e);
  }

  SuiteReport report;
  long failing_entries = 0;
  for (const auto& e : entries) {
    report.evaluations += e.at("evaluations").get<long>();
    const long f = e.at("failures").get<long>();
    report.failures += f;
    if (f > 0) ++failing_entries;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  report.json = {
      {"spec", spec_to_json(spec)},
      {"entries", entries},
      {"totals",
       {{"entries", entries.size()},
        {"failing_entries", failing_entries},
        {"evaluations", report.evaluations},
        {"failures", report.failures},
        {"pass", report.failures == 0}}},
      {"runtime_ms", nullptr},
      {"version", report_version()},
  };
  if (spec.timing) {
    report.json["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  return report;
}

std::string render(const SuiteReport& report, Format format) {
  const json& j = report.json;
  switch (format) {
    case Format::json:
      return j.dump(2) + "\n";
    case Format::csv: {
      std::ostringstream out;
      out << "id,suite,evaluations,failures,min_slack,min_relative_slack,argmin\n";
      for (const auto& e : j.at("entries")) {
        out << e.at("id").get<std::string>() << ',' << e.at("suite").get<std::string>() << ','
            << e.at("evaluations").get<long>() << ',' << e.at("failures").get<long>() << ','
            << number(e.at("min_slack").is_number() ? e.at("min_slack").get<double>() : NAN)
            << ','
            << number(e.at("min_relative_slack").is_number()
                          ? e.at("min_relative_slack").get<double>()
                          : NAN)
            << ',' << csv_field(e.at("argmin").dump()) << '\n';
      }
      return out.str();
    }
    case Format::text: {
      std::ostringstream out;
      char line[160];
      std::snprintf(line, sizeof line, "%-5s %-9s %12s %9s %14s\n", "id", "suite", "evaluations",
                    "failures", "min_rel_slack");
      out << line;
      for (const auto& e : j.at("entries")) {
        const auto& rel = e.at("min_relative_slack");
        std::snprintf(line, sizeof line, "%-5s %-9s %12ld %9ld %14.6e%s\n",
                      e.at("id").get<std::string>().c_str(),
                      e.at("suite").get<std::string>().c_str(), e.at("evaluations").get<long>(),
                      e.at("failures").get<long>(), rel.is_number() ? rel.get<double>() : NAN,
                      e.at("failures").get<long>() > 0 ? "  FAIL" : "");
        out << line;
      }
      const auto& t = j.at("totals");
      out << "total: " << t.at("evaluations").get<long>() << " evaluations, "
          << t.at("failures").get<long>() << " failures\n";
      if (j.at("runtime_ms").is_number()) out << "runtime: " << j.at("runtime_ms") << " ms\n";
      out << "version: " << j.at("version").get<std::string>() << "\n";
      return out.str();
    }
  }
  return {};
}

json inputs_to_json(const catalog::CheckInputs& in) {
  json j = {{"signature", catalog::to_string(in.signature)}};
  switch (in.signature) {
    case catalog::Signature::weight_ratio:
      j["v"] = in.v;
      j["t"] = in.t;
      break;
    case catalog::Signature::pair:
    case catalog::Signature::ordered_pair:
      j["a"] = in.a;
      j["b"] = in.b;
      break;
    case catalog::Signature::pair_weight:
      j["a"] = in.a;
      j["b"] = in.b;
      j["v"] = in.v;
      break;
    case catalog::Signature::jensen:
      j["points"] = in.points;
      j["weights"] = in.weights;
      j["m"] = in.m;
      break;
  }
  if (!in.function.empty()) j["function"] = in.function;
  return j;
}

json outcome_to_json(const catalog::CheckOutcome& o) {
  json sides = json::array();
  for (double s : o.side_values) {
    if (std::isfinite(s)) {
      sides.push_back(s);
    } else {
      sides.push_back(std::isnan(s) ? "nan" : (s > 0 ? "inf" : "-inf"));
    }
  }
  json j = {{"inputs", inputs_to_json(o.inputs)},
            {"sides", sides},
            {"scale", o.scale},
            {"pass", o.pass}};
  if (!o.diagnostic.empty()) j["diagnostic"] = o.diagnostic;
  if (o.alternate_min_slack) {
    j["alternate_min_slack"] = *o.alternate_min_slack;
    j["alternate_pass"] = o.alternate_pass();
  }
  return j;
}

TightnessResult run_tightness(const std::string& id, long budget, std::uint64_t seed,
                              const std::vector<int>& dims) {
  if (budget < 1 || budget > kMaxSamples) throw UsageError("budget must be positive");
  TightnessResult result;
  if (!is_operator_id(id)) {
    try {
      catalog::find_entry(id);
    } catch (const catalog::UnknownEntryError& ex) {
      throw UsageError(ex.what());
    }
    const auto worst = catalog::tightness_search(id, budget, seed, kDefaultTol);
    result.pass = worst.pass;
    result.json = {{"id", id},
                   {"budget", budget},
                   {"seed", seed},
                   {"min_slack", worst.min_slack},
                   {"min_relative_slack", worst.relative_slack()},
                   {"worst", outcome_to_json(worst)}};
    return result;
  }

  const auto& rows = op::operator_rows();
  if (std::none_of(rows.begin(), rows.end(), [&](const op::OperatorRow& r) { return r.id == id; })) {
    throw UsageError("unknown operator row: " + id);
  }
  if (dims.empty()) throw UsageError("dims must be nonempty");
  const auto grid = op::weight_grid();
  double best = std::numeric_limits<double>::infinity();
  long best_pair = -1;
  int best_dim = 0;
  double best_v = 0.0;
  op::LoewnerVerdict best_verdict;
  for (long i = 0; i < budget; ++i) {
    const int dim = dims[static_cast<std::size_t>(i) % dims.size()];
    const auto pair = op::generate_pair(seed, dim, i);
    const op::PairFrame frame(pair.a, pair.b);
    const auto& lambda = frame.ratio_spectrum();
    const auto k = op::k_constants({lambda(0), lambda(lambda.size() - 1)});
    const op::Matrix half = frame.log_mean(0.5, op::kOperatorQuadratureTol).value;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (id == "O4" && g > 0) break;
      for (const auto& c :
           op::evaluate_operator_rows(frame, k, grid[g], kDefaultOperatorTol, g == 0, &half)) {
        if (c.id != id) continue;
        if (c.verdict.relative_slack() < best) {
          best = c.verdict.relative_slack();
          best_pair = i;
          best_dim = dim;
          best_v = grid[g];
          best_verdict = c.verdict;
        }
      }
    }
  }
  json worst = pair_to_json(op::generate_pair(seed, best_dim, best_pair));
  worst["v"] = best_v;
  worst["min_eig_of_difference"] = best_verdict.min_eig_of_difference;
  worst["scale"] = best_verdict.scale;
  worst["pass"] = best_verdict.pass;
  result.pass = best_verdict.pass;
  result.json = {{"id", id},
                 {"budget", budget},
                 {"seed", seed},
                 {"dims", dims},
                 {"min_slack", best_verdict.min_eig_of_difference},
                 {"min_relative_slack", best},
                 {"worst", worst}};
  return result;
}

double specht_by_maximization(double t) {
  return numerics::maximize_unit([t](double v) {
           return ((1.0 - v) + v * t) / std::pow(t, v);
         })
      .value;
}

double kantorovich_by_maximization(double t) {
  return numerics::maximize_unit([t](double v) {
           return ((1.0 - v) + v * t) * ((1.0 - v) + v / t);
         })
      .value;
}

double ConstantsRow::specht_delta() const { return specht_max - specht_formula; }
double ConstantsRow::kantorovich_delta() const { return kantorovich_max - kantorovich_formula; }

std::vector<ConstantsRow> run_constants(const std::vector<double>& t_values) {
  std::vector<ConstantsRow> rows;
  for (double t : t_values) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw UsageError("t must be a positive finite number, got " + number(t));
    }
    ConstantsRow r;
    r.t = t;
    r.specht_formula = specht(RatioPoint(t));
    r.specht_max = specht_by_maximization(t);
    r.kantorovich_formula = kantorovich(RatioPoint(t));
    r.kantorovich_max = kantorovich_by_maximization(t);
    rows.push_back(r);
  }
  return rows;
}

std::string render_constants(const std::vector<ConstantsRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-20s %-20s %-10s %-20s %-20s %-10s\n", "t", "S_formula",
                "S_max", "S_delta", "K_formula", "K_max", "K_delta");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "%-12.6g %-20.15g %-20.15g %-10.2e %-20.15g %-20.15g %-10.2e\n", r.t,
                  r.specht_formula, r.specht_max, r.specht_delta(), r.kantorovich_formula,
                  r.kantorovich_max, r.kantorovich_delta());
    out << line;
  }
  return out.str();
}

}  // namespace meanscope::harness
