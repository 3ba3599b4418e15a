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

// Uniformity measurements over salient variables.

#ifndef HOMOGEN_DIAGNOSTICS_H_
#define HOMOGEN_DIAGNOSTICS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "homogen/homogenizer.h"
#include "json.hpp"

namespace homogen {

class Histogram {
 public:
  explicit Histogram(std::vector<SalientValue> domain) : table_(std::move(domain)) {}
  explicit Histogram(CountTable table) : table_(std::move(table)) {}

  // Throws std::out_of_range for values outside the domain.
  void Add(SalientValue value) { table_.Increment(value); }

  const std::vector<SalientValue>& domain() const { return table_.domain(); }
  std::uint64_t count(SalientValue value) const { return table_.count(value); }
  std::uint64_t count_at(std::size_t i) const { return table_.count_at(i); }
  std::uint64_t total() const { return table_.total(); }
  std::size_t size() const { return table_.size(); }

 private:
  CountTable table_;
};

template <typename Sample>
Histogram HistogramOf(std::span<const Sample> samples,
                      const SalientSpec<Sample>& spec) {
  Histogram h(spec.domain);
  for (const Sample& s : samples) h.Add(spec.extract(s));
  return h;
}

class UndefinedReduction : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// D(P || U) = sum_x p_x ln(p_x |X|), natural log, empty bins contribute 0.
// Throws std::domain_error for an empty histogram.
double KlToUniform(const Histogram& h);

// 100 * (1 - D_after / D_before). Negative when `after` is less uniform.
// Throws std::invalid_argument on mismatched domains, std::domain_error on
// empty inputs and UndefinedReduction when `before` is already uniform.
double KlReduction(const Histogram& before, const Histogram& after);

struct CurvePoint {
  double epsilon;
  double draws_per_accept;
  double standard_error;
  double bound;
};

// Runs a homogenization of `accepts_per_point` samples for every epsilon and
// reports the mean number of source draws per accepted sample next to the
// 1 + 1/eps bound. Each point uses its own generator, seeded seed + index.
template <typename Sample, typename Source>
std::vector<CurvePoint> AcceptanceCurve(Source&& source,
                                        const SalientSpec<Sample>& spec,
                                        std::span<const double> epsilons,
                                        std::size_t accepts_per_point,
                                        std::uint64_t seed) {
  std::vector<CurvePoint> points;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double eps = epsilons[i];
    const double bound = ExpectedTriesBound(eps);
    HomogenizerConfig config;
    config.epsilon = eps;
    config.target_size = accepts_per_point;
    config.seed = seed + i;
    double sum = 0.0;
    double sum_sq = 0.0;
    HomogenizeInto<Sample>(source, spec, config,
                           [&](Sample&&, std::uint64_t tries) {
                             const double t = static_cast<double>(tries);
                             sum += t;
                             sum_sq += t * t;
                           });
    const double n = static_cast<double>(accepts_per_point);
    const double mean = sum / n;
    const double var =
        n > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
    points.push_back({eps, mean, std::sqrt(var / n), bound});
  }
  return points;
}

// One line of a homogenization report.
struct ReportRow {
  std::string variable;
  double epsilon;
  double kl_before;
  double kl_after;
  double reduction_pct;
  double draws_per_accept;
  double bound;
};

// Header plus one row per entry; columns in ReportRow order.
std::string ReportCsv(std::span<const ReportRow> rows);
nlohmann::ordered_json ReportJson(std::span<const ReportRow> rows);

}  // namespace homogen

#endif  // HOMOGEN_DIAGNOSTICS_H_
