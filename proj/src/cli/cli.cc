// Copyright 2026 The Homogen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homogen/cli.h"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "homogen/calc/salients.h"
#include "homogen/calc/sampler.h"
#include "homogen/diagnostics.h"
#include "homogen/homogenizer.h"
#include "homogen/karel/gen.h"
#include "homogen/karel/grid.h"
#include "homogen/karel/interpreter.h"
#include "homogen/karel/syntax.h"
#include "homogen/karel/task.h"
#include "homogen/rng.h"
#include "json.hpp"

#ifndef HOMOGEN_VERSION
#define HOMOGEN_VERSION "0.0.0"
#endif

namespace homogen::cli {

namespace {

using nlohmann::ordered_json;

// The raw reference sample in a homogenize report is drawn from its own
// stream, this far from the homogenizer's seed.
constexpr std::uint64_t kRawReferenceOffset = std::uint64_t{1} << 32;

// Bad flags or flag combinations; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generation could not make progress; exit code 3.
class StallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t ParseSeed(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(std::string(what) + " is not a 64-bit unsigned integer: '" +
                     std::string(text) + "'");
  }
  return value;
}

// Flags shared by generate and homogenize.
struct CommonFlags {
  std::string seed_text;
  std::string out;
  std::size_t count = 0;
};

struct CalcFlags {
  std::string dist = "dcfg";
  double p = 0.0;
  int max_depth = 0;
  CLI::Option* p_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
};

struct KarelFlags {
  std::string grids = "uniform";
  double r_wall = 0.0;
  double r_marker = 0.0;
  std::string marker_dist = "uniform";
  int pairs = karel::kMaxPairs;
  std::string programs = "cfg";
  int min_length = 1;
  int max_length = 20;
  std::string nested;
  bool minimal_actions = false;
  std::int64_t step_limit = karel::kDefaultStepLimit;
  CLI::Option* r_wall_opt = nullptr;
  CLI::Option* r_marker_opt = nullptr;
  CLI::Option* marker_dist_opt = nullptr;
};

struct HomogenizeFlags {
  std::string var;
  double eps = 0.025;
  std::string in;
  std::uint64_t max_draws = 0;
  std::uint64_t warmup = 0;
  CLI::Option* max_draws_opt = nullptr;
};

void AddCommonFlags(CLI::App* app, CommonFlags& f) {
  app->add_option("--count", f.count, "Number of records")->required();
  app->add_option("--seed", f.seed_text,
                  "64-bit seed (falls back to HOMOGEN_SEED, then 0)");
  app->add_option("--out", f.out, "Output path (stdout when omitted)");
}

void AddCalcFlags(CLI::App* app, CalcFlags& f) {
  app->add_option("--dist", f.dist, "dcfg, t2t, rcfg or bal")
      ->check(CLI::IsMember({"dcfg", "t2t", "rcfg", "bal"}));
  f.p_opt = app->add_option("--p", f.p, "Expansion probability (dcfg, rcfg)");
  f.depth_opt =
      app->add_option("--max-depth", f.max_depth, "Largest depth (t2t, bal)");
}

void AddKarelFlags(CLI::App* app, KarelFlags& f) {
  app->add_option("--grids", f.grids, "uniform or narrow")
      ->check(CLI::IsMember({"uniform", "narrow"}));
  f.r_wall_opt = app->add_option("--r-wall", f.r_wall, "Narrow wall ratio");
  f.r_marker_opt =
      app->add_option("--r-marker", f.r_marker, "Narrow marker ratio");
  f.marker_dist_opt = app->add_option("--marker-dist", f.marker_dist,
                                      "Narrow marker counts: geom, uniform, anti");
  app->add_option("--pairs", f.pairs, "Shown I/O pairs, 1..5 (0: random)")
      ->check(CLI::Range(0, karel::kMaxPairs));
  app->add_option("--programs", f.programs, "cfg or action-only")
      ->check(CLI::IsMember({"cfg", "action-only"}));
  app->add_option("--min-length", f.min_length, "Action-only minimum length");
  app->add_option("--max-length", f.max_length, "Action-only maximum length");
  app->add_option("--nested", f.nested,
                  "Keep programs nesting OUTER:INNER (while, repeat, if, "
                  "ifelse)");
  app->add_flag("--minimal-actions", f.minimal_actions,
                "Keep programs without cancelling action pairs");
  app->add_option("--step-limit", f.step_limit, "Interpreter step limit")
      ->check(CLI::NonNegativeNumber);
}

void AddHomogenizeFlags(CLI::App* app, HomogenizeFlags& f) {
  app->add_option("--var", f.var, "Salient variable to homogenize")
      ->required();
  app->add_option("--eps", f.eps, "Smoothing epsilon");
  app->add_option("--in", f.in, "Read samples from this dataset instead");
  f.max_draws_opt =
      app->add_option("--max-draws", f.max_draws, "Cap on source draws");
  app->add_option("--warmup", f.warmup, "Draws that only feed the counts");
}

calc::CalcSampler BuildCalcSampler(const CalcFlags& f, ordered_json& params) {
  calc::CalcSampler sampler = calc::SamplerByName(f.dist);
  const bool takes_p = f.dist == "dcfg" || f.dist == "rcfg";
  if (f.p_opt->count() > 0 && !takes_p) {
    throw UsageError("--p applies to dcfg and rcfg only");
  }
  if (f.depth_opt->count() > 0 && takes_p) {
    throw UsageError("--max-depth applies to t2t and bal only");
  }
  params["dist"] = f.dist;
  if (auto* s = std::get_if<calc::Dcfg>(&sampler)) {
    if (f.p_opt->count() > 0) s->p = f.p;
    params["p"] = s->p;
  } else if (auto* s = std::get_if<calc::Rcfg>(&sampler)) {
    if (f.p_opt->count() > 0) s->p = f.p;
    params["p"] = s->p;
  } else if (auto* s = std::get_if<calc::T2t>(&sampler)) {
    if (f.depth_opt->count() > 0) s->max_depth = f.max_depth;
    params["max_depth"] = s->max_depth;
  } else if (auto* s = std::get_if<calc::Bal>(&sampler)) {
    if (f.depth_opt->count() > 0) {
      if (f.max_depth < 1 || f.max_depth > 20) {
        throw UsageError("bal --max-depth must lie in 1..20");
      }
      s->depth_weights.assign(f.max_depth + 1, 1.0);
      s->depth_weights[0] = 0.0;
    }
    params["depth_weights"] = s->depth_weights;
  }
  try {
    calc::ValidateSampler(sampler);
  } catch (const calc::SamplerError& e) {
    throw UsageError(e.what());
  }
  return sampler;
}

karel::TaskStreamConfig BuildKarelConfig(const KarelFlags& f,
                                         ordered_json& params) {
  karel::TaskStreamConfig config;
  params["grids"] = f.grids;
  const bool narrow_flags = f.r_wall_opt->count() > 0 ||
                            f.r_marker_opt->count() > 0 ||
                            f.marker_dist_opt->count() > 0;
  try {
    if (f.grids == "narrow") {
      karel::NarrowGridParams narrow;
      narrow.r_wall = f.r_wall;
      narrow.r_marker = f.r_marker;
      narrow.marker_dist = karel::ParseMarkerCountDist(f.marker_dist);
      narrow.Validate();
      config.narrow = narrow;
      params["r_wall"] = narrow.r_wall;
      params["r_marker"] = narrow.r_marker;
      params["marker_dist"] =
          std::string(karel::MarkerCountDistName(narrow.marker_dist));
    } else if (narrow_flags) {
      throw UsageError(
          "--r-wall, --r-marker and --marker-dist need --grids narrow");
    }
    config.n_pairs = f.pairs;
    config.task.step_limit = f.step_limit;
    params["pairs"] = f.pairs;
    params["step_limit"] = f.step_limit;
    params["programs"] = f.programs;
    if (f.programs == "action-only") {
      if (f.min_length < 1 || f.max_length < f.min_length) {
        throw UsageError("action-only lengths need 1 <= min <= max");
      }
      config.programs = karel::TaskStreamConfig::Programs::kActionOnly;
      config.action_min_length = f.min_length;
      config.action_max_length = f.max_length;
      params["min_length"] = f.min_length;
      params["max_length"] = f.max_length;
    }
    if (!f.nested.empty()) {
      const auto colon = f.nested.find(':');
      if (colon == std::string::npos) {
        throw UsageError("--nested expects OUTER:INNER");
      }
      config.nested = {karel::ParseConstructKind(f.nested.substr(0, colon)),
                       karel::ParseConstructKind(f.nested.substr(colon + 1))};
      params["nested"] = f.nested;
    }
    if (f.minimal_actions) {
      config.require_minimal_actions = true;
      params["minimal_actions"] = true;
    }
    config.table.Validate();
  } catch (const karel::GenerationError& e) {
    throw UsageError(e.what());
  }
  return config;
}

// Per-domain glue between records, JSON lines and salient variables.
struct CalcDomain {
  using Sample = calc::CalcRecord;
  static constexpr const char* kName = "calc";
  static std::vector<SalientSpec<Sample>> Variables() {
    return calc::CalcVariables();
  }
  static std::string ToLine(const Sample& s) {
    return calc::RecordToJson(s).dump();
  }
  static Sample FromJson(const nlohmann::json& j) {
    return calc::RecordFromJson(j);
  }
};

struct KarelDomain {
  using Sample = karel::SynthesisTask;
  static constexpr const char* kName = "karel";
  static std::vector<SalientSpec<Sample>> Variables() {
    return karel::KarelTaskVariables();
  }
  static std::string ToLine(const Sample& s) {
    return karel::TaskToJson(s).dump();
  }
  static Sample FromJson(const nlohmann::json& j) {
    return karel::TaskFromJson(j);
  }
};

template <typename Domain>
SalientSpec<typename Domain::Sample> FindVariable(const std::string& name) {
  std::string known;
  for (auto& spec : Domain::Variables()) {
    if (spec.name == name) return spec;
    known += (known.empty() ? "" : ", ") + spec.name;
  }
  throw UsageError("unknown " + std::string(Domain::kName) + " variable '" +
                   name + "' (known: " + known + ")");
}

// Parses one dataset line, reporting failures with their line number.
template <typename Domain>
typename Domain::Sample ParseLine(const std::string& line,
                                  std::size_t line_no) {
  try {
    return Domain::FromJson(nlohmann::json::parse(line));
  } catch (const std::exception& e) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " +
                                e.what());
  }
}

// Where a command writes its dataset: a file, or `out` for stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }

  void WriteLine(const std::string& line) { *stream_ << line << '\n'; }

  void Close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::runtime_error("failed writing " + path_);
    } else {
      stream_->flush();
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << contents;
  file.close();
  if (!file) throw std::runtime_error("failed writing " + path);
}

struct SeedChoice {
  std::uint64_t seed = 0;
  std::string source;
};

SeedChoice ResolveSeed(const std::string& flag, const std::string& env) {
  if (!flag.empty()) return {ParseSeed(flag, "--seed"), "flag"};
  if (!env.empty()) return {ParseSeed(env, "HOMOGEN_SEED"), "env"};
  return {0, "default"};
}

// Manifest shared by generate and homogenize. Outputs are listed with their
// digests; `outputs` holds paths, the first being the dataset.
ordered_json Manifest(const std::vector<std::string>& args,
                      const std::string& command, const std::string& domain,
                      const SeedChoice& seed, ordered_json params,
                      ordered_json streams,
                      const std::vector<std::string>& outputs) {
  ordered_json m;
  m["tool"] = "homogen";
  m["version"] = HOMOGEN_VERSION;
  m["command_line"] = args;
  m["command"] = command;
  m["domain"] = domain;
  m["seed"] = seed.seed;
  m["seed_source"] = seed.source;
  m["parameters"] = std::move(params);
  m["streams"] = std::move(streams);
  ordered_json files = ordered_json::array();
  for (const auto& path : outputs) {
    ordered_json entry;
    entry["path"] = path;
    entry["sha256"] = Sha256File(path);
    files.push_back(std::move(entry));
  }
  m["outputs"] = std::move(files);
  return m;
}

template <typename Domain>
int RunGenerate(const std::vector<std::string>& args,
                std::function<typename Domain::Sample(Rng&)> source,
                const CommonFlags& common, const SeedChoice& seed,
                ordered_json params, std::ostream& out, std::ostream& err) {
  Sink sink(common.out, out);
  for (std::size_t i = 0; i < common.count; ++i) {
    Rng rng(seed.seed + i);
    sink.WriteLine(Domain::ToLine(source(rng)));
  }
  sink.Close();
  params["count"] = common.count;
  ordered_json streams;
  streams["record"] = "seed + record index";
  if (common.out.empty()) {
    // No file to digest; the manifest still describes the run.
    err << Manifest(args, "generate", Domain::kName, seed, std::move(params),
                    std::move(streams), {})
               .dump(2)
        << '\n';
  } else {
    WriteFile(common.out + ".manifest.json",
              Manifest(args, "generate", Domain::kName, seed, std::move(params),
                       std::move(streams), {common.out})
                      .dump(2) +
                  "\n");
  }
  return kExitOk;
}

// Reads a dataset file sample by sample; throws SourceExhausted at the end.
template <typename Domain>
class FileSource {
 public:
  explicit FileSource(const std::string& path)
      : file_(std::make_shared<std::ifstream>(path, std::ios::binary)) {
    if (!*file_) throw UsageError("cannot open " + path);
  }

  typename Domain::Sample operator()(Rng&) {
    std::string line;
    while (std::getline(*file_, line)) {
      ++line_no_;
      if (!line.empty()) return ParseLine<Domain>(line, line_no_);
    }
    throw SourceExhausted("input exhausted after " +
                          std::to_string(line_no_) + " lines");
  }

 private:
  std::shared_ptr<std::ifstream> file_;
  std::size_t line_no_ = 0;
};

template <typename Domain>
int RunHomogenize(const std::vector<std::string>& args,
                  std::function<typename Domain::Sample(Rng&)> generator,
                  const CommonFlags& common, const HomogenizeFlags& hflags,
                  const SeedChoice& seed, ordered_json params,
                  std::ostream& out, std::ostream& err) {
  using Sample = typename Domain::Sample;
  const SalientSpec<Sample> spec = FindVariable<Domain>(hflags.var);
  const auto variables = Domain::Variables();

  HomogenizerConfig config;
  config.epsilon = hflags.eps;
  config.target_size = common.count;
  config.seed = seed.seed;
  config.warmup_draws = hflags.warmup;
  if (hflags.max_draws_opt->count() > 0) config.max_draws = hflags.max_draws;
  try {
    ValidateConfig(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::function<Sample(Rng&)> source = generator;
  if (!hflags.in.empty()) source = FileSource<Domain>(hflags.in);

  // Histograms of every variable over the accepted samples, so the dataset
  // streams straight to disk.
  std::vector<Histogram> after;
  for (const auto& v : variables) after.emplace_back(v.domain);

  Sink sink(common.out, out);
  RunStats stats{0, 0, CountTable(spec.domain)};
  try {
    stats = HomogenizeInto<Sample>(
        source, spec, config, [&](Sample&& s, std::uint64_t) {
          for (std::size_t k = 0; k < variables.size(); ++k) {
            after[k].Add(variables[k].extract(s));
          }
          sink.WriteLine(Domain::ToLine(s));
        });
  } catch (const BudgetExhausted& e) {
    const RunStats& partial = e.partial();
    std::size_t empty_bins = 0;
    for (std::size_t i = 0; i < partial.final_counts.size(); ++i) {
      if (partial.final_counts.count_at(i) == 0) ++empty_bins;
    }
    throw StallError("draw budget exhausted: " +
                     std::to_string(partial.accepted) + " of " +
                     std::to_string(common.count) + " accepted after " +
                     std::to_string(partial.draws_used) + " draws; " +
                     std::to_string(empty_bins) + " of " +
                     std::to_string(partial.final_counts.size()) +
                     " values of '" + spec.name + "' never seen");
  } catch (const SourceExhausted& e) {
    throw StallError(e.what());
  } catch (const karel::GenerationError& e) {
    throw StallError(e.what());
  }
  sink.Close();

  // Reference: an equally sized raw sample from an independent stream, or
  // the leading records of the input file.
  std::vector<Histogram> before;
  for (const auto& v : variables) before.emplace_back(v.domain);
  ordered_json streams;
  streams["homogenizer"] = seed.seed;
  if (hflags.in.empty()) {
    Rng raw_rng(seed.seed + kRawReferenceOffset);
    for (std::size_t i = 0; i < common.count; ++i) {
      const Sample s = generator(raw_rng);
      for (std::size_t k = 0; k < variables.size(); ++k) {
        before[k].Add(variables[k].extract(s));
      }
    }
    streams["raw_reference"] = seed.seed + kRawReferenceOffset;
  } else {
    FileSource<Domain> reread(hflags.in);
    Rng unused(0);
    for (std::size_t i = 0; i < common.count; ++i) {
      const Sample s = reread(unused);
      for (std::size_t k = 0; k < variables.size(); ++k) {
        before[k].Add(variables[k].extract(s));
      }
    }
    streams["raw_reference"] = "leading records of the input";
  }

  std::vector<ReportRow> rows;
  const double draws_per_accept =
      static_cast<double>(stats.draws_used - config.warmup_draws) /
      static_cast<double>(std::max<std::size_t>(common.count, 1));
  for (std::size_t k = 0; k < variables.size(); ++k) {
    ReportRow row;
    row.variable = variables[k].name;
    row.epsilon = config.epsilon;
    row.kl_before = KlToUniform(before[k]);
    row.kl_after = KlToUniform(after[k]);
    try {
      row.reduction_pct = KlReduction(before[k], after[k]);
    } catch (const UndefinedReduction&) {
      row.reduction_pct = std::numeric_limits<double>::quiet_NaN();
    }
    row.draws_per_accept = draws_per_accept;
    row.bound = config.epsilon > 0 ? ExpectedTriesBound(config.epsilon)
                                   : std::numeric_limits<double>::infinity();
    rows.push_back(std::move(row));
  }

  params["var"] = spec.name;
  params["eps"] = config.epsilon;
  params["count"] = common.count;
  params["warmup"] = config.warmup_draws;
  params["max_draws"] = config.max_draws.value_or(DefaultMaxDraws(config));
  if (!hflags.in.empty()) params["in"] = hflags.in;
  params["draws_used"] = stats.draws_used;

  const std::string csv = ReportCsv(rows);
  const std::string json = ReportJson(rows).dump(2) + "\n";
  if (common.out.empty()) {
    err << csv;
    err << Manifest(args, "homogenize", Domain::kName, seed, std::move(params),
                    std::move(streams), {})
               .dump(2)
        << '\n';
  } else {
    WriteFile(common.out + ".report.csv", csv);
    WriteFile(common.out + ".report.json", json);
    WriteFile(common.out + ".manifest.json",
              Manifest(args, "homogenize", Domain::kName, seed,
                       std::move(params), std::move(streams),
                       {common.out, common.out + ".report.csv",
                        common.out + ".report.json"})
                      .dump(2) +
                  "\n");
  }
  return kExitOk;
}

template <typename Domain>
ordered_json StatsOf(std::ifstream& file, const std::vector<std::string>& names,
                     std::size_t& records) {
  using Sample = typename Domain::Sample;
  std::vector<SalientSpec<Sample>> specs;
  if (names.empty()) {
    specs = Domain::Variables();
  } else {
    for (const auto& n : names) specs.push_back(FindVariable<Domain>(n));
  }
  std::vector<Histogram> hists;
  for (const auto& s : specs) hists.emplace_back(s.domain);
  std::string line;
  std::size_t line_no = 0;
  records = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Sample sample = ParseLine<Domain>(line, line_no);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const SalientValue v = specs[k].extract(sample);
      try {
        hists[k].Add(v);
      } catch (const std::out_of_range&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " +
                                    specs[k].name + " value " +
                                    std::to_string(v) + " outside its domain");
      }
    }
    ++records;
  }
  ordered_json vars = ordered_json::array();
  for (std::size_t k = 0; k < specs.size(); ++k) {
    ordered_json v;
    v["name"] = specs[k].name;
    v["kl_to_uniform"] = KlToUniform(hists[k]);
    v["total"] = hists[k].total();
    ordered_json hist = ordered_json::object();
    for (std::size_t i = 0; i < hists[k].size(); ++i) {
      if (hists[k].count_at(i) > 0) {
        hist[std::to_string(hists[k].domain()[i])] = hists[k].count_at(i);
      }
    }
    v["histogram"] = std::move(hist);
    vars.push_back(std::move(v));
  }
  return vars;
}

int RunStats(const std::string& path, const std::string& vars_text,
             const std::string& format, std::ostream& out) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open " + path);
  // The first non-empty line decides the domain.
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty()) break;
  }
  if (line.empty()) throw std::invalid_argument(path + ": empty dataset");
  nlohmann::json first;
  try {
    first = nlohmann::json::parse(line);
  } catch (const std::exception& e) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " +
                                e.what());
  }
  std::vector<std::string> names;
  if (!vars_text.empty()) {
    std::stringstream ss(vars_text);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) names.push_back(name);
    }
  }
  file.clear();
  file.seekg(0);
  std::size_t records = 0;
  ordered_json variables;
  std::string domain;
  if (first.is_object() && first.contains("expr")) {
    domain = CalcDomain::kName;
    variables = StatsOf<CalcDomain>(file, names, records);
  } else if (first.is_object() && first.contains("program")) {
    domain = KarelDomain::kName;
    variables = StatsOf<KarelDomain>(file, names, records);
  } else {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": neither a calculator nor a Karel record");
  }

  if (format == "json") {
    ordered_json j;
    j["domain"] = domain;
    j["records"] = records;
    j["variables"] = std::move(variables);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "variable,kl_to_uniform,total,histogram\n";
  for (const auto& v : variables) {
    char kl[32];
    std::snprintf(kl, sizeof(kl), "%.6g", v["kl_to_uniform"].get<double>());
    std::string hist;
    for (const auto& [value, count] : v["histogram"].items()) {
      hist += (hist.empty() ? "" : ";") + value + ":" +
              std::to_string(count.get<std::uint64_t>());
    }
    out << v["name"].get<std::string>() << ',' << kl << ','
        << v["total"].get<std::uint64_t>() << ',' << hist << '\n';
  }
  return kExitOk;
}

std::string ReadWhole(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(file), {});
}

int RunKarel(const std::string& program_path, const std::string& grid_path,
             std::int64_t step_limit, std::ostream& out) {
  karel::Program program = [&] {
    try {
      return karel::ParseProgram(ReadWhole(program_path));
    } catch (const karel::SyntaxError& e) {
      throw UsageError(program_path + ": " + e.what());
    }
  }();
  karel::Grid grid = [&] {
    try {
      return karel::GridFromJson(nlohmann::json::parse(ReadWhole(grid_path)));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(grid_path + ": " + e.what());
    }
  }();
  const karel::ExecResult result = karel::Execute(program, grid, step_limit);
  if (result.ok()) {
    out << "result: Success\n";
  } else {
    out << "result: Crash " << karel::CrashReasonName(result.crash()) << '\n';
  }
  out << "steps: " << result.steps << '\n';
  if (result.ok()) {
    out << "grid: " << karel::GridToJson(result.output()).dump() << '\n';
    out << karel::GridToAscii(result.output());
  }
  const auto arms = karel::AllBranchArms(program);
  out << "branches: " << result.branches_taken.size() << "/" << arms.size()
      << " arms taken";
  for (const auto& arm : result.branches_taken) {
    out << " b" << arm.branch_id
        << (arm.arm == karel::Arm::kThen ? ".then" : ".else");
  }
  out << '\n';
  return result.ok() ? kExitOk : kExitCrash;
}

}  // namespace

std::string Sha256File(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                               EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 unavailable");
  }
  char buf[1 << 16];
  while (file.read(buf, sizeof(buf)) || file.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(file.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const std::string& env_seed) {
  CLI::App app{"Generate, homogenize and inspect synthetic datasets", "homogen"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HOMOGEN_VERSION);

  // Separate flag sets per subcommand, since options remember their parser.
  CommonFlags common;
  CalcFlags gen_calc_flags;
  CalcFlags hom_calc_flags;
  KarelFlags gen_karel_flags;
  KarelFlags hom_karel_flags;
  HomogenizeFlags hom_calc_hflags;
  HomogenizeFlags hom_karel_hflags;

  auto* generate = app.add_subcommand("generate", "Write a raw dataset");
  generate->require_subcommand(1);
  auto* gen_calc = generate->add_subcommand("calc", "Calculator expressions");
  auto* gen_karel = generate->add_subcommand("karel", "Karel synthesis tasks");
  AddCommonFlags(gen_calc, common);
  AddCalcFlags(gen_calc, gen_calc_flags);
  AddCommonFlags(gen_karel, common);
  AddKarelFlags(gen_karel, gen_karel_flags);

  auto* homogenize =
      app.add_subcommand("homogenize", "Write a homogenized dataset");
  homogenize->require_subcommand(1);
  auto* hom_calc = homogenize->add_subcommand("calc", "Calculator expressions");
  auto* hom_karel = homogenize->add_subcommand("karel", "Karel synthesis tasks");
  AddCommonFlags(hom_calc, common);
  AddCalcFlags(hom_calc, hom_calc_flags);
  AddHomogenizeFlags(hom_calc, hom_calc_hflags);
  AddCommonFlags(hom_karel, common);
  AddKarelFlags(hom_karel, hom_karel_flags);
  AddHomogenizeFlags(hom_karel, hom_karel_hflags);

  std::string stats_path;
  std::string stats_vars;
  std::string stats_format = "csv";
  auto* stats = app.add_subcommand("stats", "Histograms and KL to uniform");
  stats->add_option("path", stats_path, "Dataset file")->required();
  stats->add_option("--vars", stats_vars, "Comma-separated variables");
  stats->add_option("--format", stats_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string program_path;
  std::string grid_path;
  std::int64_t step_limit = karel::kDefaultStepLimit;
  auto* run = app.add_subcommand("karel-run", "Execute a program on a grid");
  run->add_option("program", program_path, "Program file")->required();
  run->add_option("grid", grid_path, "Grid JSON file")->required();
  run->add_option("--step-limit", step_limit, "Interpreter step limit")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats) return RunStats(stats_path, stats_vars, stats_format, out);
    if (*run) return RunKarel(program_path, grid_path, step_limit, out);

    const SeedChoice seed = ResolveSeed(common.seed_text, env_seed);
    ordered_json params;
    const bool is_generate = generate->parsed();
    if (*gen_calc || *hom_calc) {
      const calc::CalcSampler sampler = BuildCalcSampler(
          is_generate ? gen_calc_flags : hom_calc_flags, params);
      std::function<calc::CalcRecord(Rng&)> source = [sampler](Rng& rng) {
        return calc::SampleRecord(rng, sampler);
      };
      if (is_generate) {
        return RunGenerate<CalcDomain>(args, source, common, seed, params, out,
                                       err);
      }
      return RunHomogenize<CalcDomain>(args, source, common, hom_calc_hflags,
                                       seed, params, out, err);
    }
    const karel::TaskStreamConfig config = BuildKarelConfig(
        is_generate ? gen_karel_flags : hom_karel_flags, params);
    std::function<karel::SynthesisTask(Rng&)> source = [config](Rng& rng) {
      return karel::NextTask(rng, config);
    };
    if (is_generate) {
      try {
        return RunGenerate<KarelDomain>(args, source, common, seed, params,
                                        out, err);
      } catch (const karel::GenerationError& e) {
        throw StallError(e.what());
      }
    }
    return RunHomogenize<KarelDomain>(args, source, common, hom_karel_hflags,
                                      seed, params, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StallError& e) {
    err << "stalled: " << e.what() << '\n';
    return kExitStall;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCrash;
  }
}

}  // namespace homogen::cli
