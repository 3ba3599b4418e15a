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

// Salient-variable homogenization.
//
// Wraps an arbitrary sampler and rejection-samples its output so that the
// marginal distribution of one declared feature (the salient variable) is
// driven toward uniform. Each draw s is counted, then accepted with
// probability
//
//   g = (p_min + eps) / (p_curr + eps)
//
// where p_curr is the running frequency of the value of s and p_min the
// smallest running frequency over the whole declared domain.

#ifndef HOMOGEN_HOMOGENIZER_H_
#define HOMOGEN_HOMOGENIZER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homogen/rng.h"

namespace homogen {

using SalientValue = std::int64_t;

// A named feature of samples with a finite, ordered domain.
template <typename Sample>
struct SalientSpec {
  std::string name;
  std::vector<SalientValue> domain;
  std::function<SalientValue(const Sample&)> extract;
};

// Returns the closed integer range [lo, hi] as a domain.
std::vector<SalientValue> IntegerDomain(SalientValue lo, SalientValue hi,
                                        SalientValue stride = 1);

class HomogenizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTableError : public HomogenizerError {
 public:
  EmptyTableError();
};

// The extractor produced a value that is not in the declared domain.
class ContractViolation : public HomogenizerError {
 public:
  ContractViolation(std::string variable, SalientValue value);
  const std::string& variable() const { return variable_; }
  SalientValue value() const { return value_; }

 private:
  std::string variable_;
  SalientValue value_;
};

// A finite source ran dry before the target size was reached.
class SourceExhausted : public HomogenizerError {
 public:
  using HomogenizerError::HomogenizerError;
};

// Counts of salient values seen so far, over a fixed domain.
class CountTable {
 public:
  // Throws std::invalid_argument on an empty domain or duplicate values.
  explicit CountTable(std::vector<SalientValue> domain);

  const std::vector<SalientValue>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  bool Contains(SalientValue value) const { return index_.contains(value); }

  // Throws std::out_of_range for values outside the domain.
  std::uint64_t count(SalientValue value) const;
  std::uint64_t count_at(std::size_t index) const { return counts_[index]; }
  std::uint64_t total() const { return total_; }
  std::uint64_t min_count() const { return min_count_; }

  // Throws std::out_of_range for values outside the domain.
  void Increment(SalientValue value);

  bool operator==(const CountTable& other) const {
    return domain_ == other.domain_ && counts_ == other.counts_;
  }

 private:
  std::size_t IndexOf(SalientValue value) const;

  std::vector<SalientValue> domain_;
  std::unordered_map<SalientValue, std::size_t> index_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t min_count_ = 0;
  std::size_t num_at_min_ = 0;
};

// (p_min + eps) / (p_curr + eps) for a value that has just been counted.
// Throws EmptyTableError when nothing has been counted yet.
double AcceptanceProbability(const CountTable& counts, SalientValue value,
                             double epsilon);

// Upper bound 1 + 1/eps on the mean number of source draws per accepted
// sample. Throws std::domain_error unless epsilon > 0.
double ExpectedTriesBound(double epsilon);

// Number of source draws after which the eps = 0 homogenized distribution is
// within xi of uniform with probability at least 1 - delta, for a source whose
// least likely value has probability p_min:
//
//   48 ln(2 |X| / delta) / (p_min |X|^2 xi^2)
//
// Throws std::domain_error on out-of-range arguments.
double RequiredPresamples(std::int64_t domain_size, double delta, double xi,
                          double p_min);

struct HomogenizerConfig {
  double epsilon = 0.025;
  std::size_t target_size = 1;
  std::uint64_t seed = 0;
  // Cap on source draws, warm-up included. Defaults to DefaultMaxDraws().
  std::optional<std::uint64_t> max_draws;
  // Draws that only feed the count table before accepting begins.
  std::uint64_t warmup_draws = 0;
  // With eps = 0 every draw is rejected until each domain value has been
  // seen at least once, so a zero epsilon without warm-up must be opted into.
  bool allow_zero_epsilon = false;
};

// n * ceil(1 + 1/eps) * 20. For eps = 0 the bound is infinite and the cap
// falls back to n * 20000.
std::uint64_t DefaultMaxDraws(const HomogenizerConfig& config);

// Throws std::invalid_argument for an unusable configuration.
void ValidateConfig(const HomogenizerConfig& config);

struct RunStats {
  std::uint64_t draws_used = 0;
  std::uint64_t accepted = 0;
  CountTable final_counts;
};

// max_draws was reached before target_size samples were accepted.
class BudgetExhausted : public HomogenizerError {
 public:
  explicit BudgetExhausted(RunStats partial);
  const RunStats& partial() const { return partial_; }

 private:
  RunStats partial_;
};

// The accept/reject step, separated from any particular source so that it
// can be driven value by value.
class SampledHomogenizer {
 public:
  struct Decision {
    bool accepted;
    double probability;
  };

  SampledHomogenizer(std::vector<SalientValue> domain, double epsilon)
      : counts_(std::move(domain)), epsilon_(epsilon) {}

  // Counts the value without considering it for acceptance.
  void Observe(SalientValue value) { counts_.Increment(value); }

  // Counts the value, then flips a coin with the acceptance probability.
  Decision Offer(SalientValue value, Rng& rng) {
    counts_.Increment(value);
    const double g = AcceptanceProbability(counts_, value, epsilon_);
    return {rng.UniformReal() < g, g};
  }

  const CountTable& counts() const { return counts_; }
  double epsilon() const { return epsilon_; }

 private:
  CountTable counts_;
  double epsilon_;
};

template <typename Sample>
struct HomogenizedDataset {
  std::vector<Sample> items;
  std::uint64_t draws_used = 0;
  CountTable final_counts;
};

// Streaming form of Homogenize(). Accepted samples are handed to
// `sink(Sample&&, std::uint64_t draws_since_previous_accept)` in acceptance
// order, so memory stays bounded by the domain size.
//
// `source(Rng&)` returns one sample per call. The source and the accept coin
// share a single generator seeded from config.seed: each draw consumes the
// source's random numbers first, then one number for the coin.
template <typename Sample, typename Source, typename Sink>
RunStats HomogenizeInto(Source&& source, const SalientSpec<Sample>& spec,
                        const HomogenizerConfig& config, Sink&& sink) {
  ValidateConfig(config);
  const std::uint64_t max_draws =
      config.max_draws.value_or(DefaultMaxDraws(config));
  SampledHomogenizer homogenizer(spec.domain, config.epsilon);
  Rng rng(config.seed);
  std::uint64_t draws = 0;
  std::uint64_t accepted = 0;
  std::uint64_t since_accept = 0;

  auto extract = [&](const Sample& s) {
    const SalientValue value = spec.extract(s);
    if (!homogenizer.counts().Contains(value)) {
      throw ContractViolation(spec.name, value);
    }
    return value;
  };
  auto budget_check = [&] {
    if (draws >= max_draws) {
      throw BudgetExhausted(RunStats{draws, accepted, homogenizer.counts()});
    }
  };

  for (std::uint64_t i = 0; i < config.warmup_draws; ++i) {
    budget_check();
    Sample s = source(rng);
    ++draws;
    homogenizer.Observe(extract(s));
  }
  while (accepted < config.target_size) {
    budget_check();
    Sample s = source(rng);
    ++draws;
    ++since_accept;
    const auto decision = homogenizer.Offer(extract(s), rng);
    if (decision.accepted) {
      sink(std::move(s), since_accept);
      since_accept = 0;
      ++accepted;
    }
  }
  return RunStats{draws, accepted, homogenizer.counts()};
}

// Rejection-samples `config.target_size` items from `source` so that the
// salient variable of `spec` is approximately uniform over its domain.
template <typename Sample, typename Source>
HomogenizedDataset<Sample> Homogenize(Source&& source,
                                      const SalientSpec<Sample>& spec,
                                      const HomogenizerConfig& config) {
  std::vector<Sample> items;
  items.reserve(config.target_size);
  RunStats stats = HomogenizeInto<Sample>(
      std::forward<Source>(source), spec, config,
      [&items](Sample&& s, std::uint64_t) { items.push_back(std::move(s)); });
  return HomogenizedDataset<Sample>{std::move(items), stats.draws_used,
                                    std::move(stats.final_counts)};
}

}  // namespace homogen

#endif  // HOMOGEN_HOMOGENIZER_H_
