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

#include "homogen/homogenizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace homogen {

std::vector<SalientValue> IntegerDomain(SalientValue lo, SalientValue hi,
                                        SalientValue stride) {
  if (stride <= 0 || hi < lo) {
    throw std::invalid_argument("IntegerDomain: empty or ill-formed range");
  }
  std::vector<SalientValue> out;
  for (SalientValue v = lo; v <= hi; v += stride) out.push_back(v);
  return out;
}

EmptyTableError::EmptyTableError()
    : HomogenizerError("count table is empty (total = 0)") {}

ContractViolation::ContractViolation(std::string variable, SalientValue value)
    : HomogenizerError("salient variable '" + variable + "' produced value " +
                       std::to_string(value) + " outside its declared domain"),
      variable_(std::move(variable)),
      value_(value) {}

BudgetExhausted::BudgetExhausted(RunStats partial)
    : HomogenizerError("draw budget of " + std::to_string(partial.draws_used) +
                       " exhausted after " + std::to_string(partial.accepted) +
                       " accepted samples"),
      partial_(std::move(partial)) {}

CountTable::CountTable(std::vector<SalientValue> domain)
    : domain_(std::move(domain)), counts_(domain_.size(), 0) {
  if (domain_.empty()) {
    throw std::invalid_argument("salient domain must not be empty");
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (!index_.emplace(domain_[i], i).second) {
      throw std::invalid_argument("duplicate domain value " +
                                  std::to_string(domain_[i]));
    }
  }
  num_at_min_ = domain_.size();
}

std::size_t CountTable::IndexOf(SalientValue value) const {
  auto it = index_.find(value);
  if (it == index_.end()) {
    throw std::out_of_range("value " + std::to_string(value) +
                            " is not in the domain");
  }
  return it->second;
}

std::uint64_t CountTable::count(SalientValue value) const {
  return counts_[IndexOf(value)];
}

void CountTable::Increment(SalientValue value) {
  const std::size_t i = IndexOf(value);
  const std::uint64_t before = counts_[i]++;
  ++total_;
  if (before == min_count_ && --num_at_min_ == 0) {
    // Every bin now sits strictly above the old minimum, which can only
    // have risen by one.
    ++min_count_;
    num_at_min_ = static_cast<std::size_t>(
        std::count(counts_.begin(), counts_.end(), min_count_));
  }
}

double AcceptanceProbability(const CountTable& counts, SalientValue value,
                             double epsilon) {
  if (counts.total() == 0) throw EmptyTableError();
  const double total = static_cast<double>(counts.total());
  const double p_min = static_cast<double>(counts.min_count()) / total;
  const double p_curr = static_cast<double>(counts.count(value)) / total;
  const double denom = p_curr + epsilon;
  // Only reachable for an uncounted value at eps = 0.
  if (denom == 0.0) return 1.0;
  return std::min(1.0, (p_min + epsilon) / denom);
}

double ExpectedTriesBound(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("ExpectedTriesBound: epsilon must be > 0");
  }
  return 1.0 + 1.0 / epsilon;
}

double RequiredPresamples(std::int64_t domain_size, double delta, double xi,
                          double p_min) {
  if (domain_size < 1) {
    throw std::domain_error("RequiredPresamples: domain size must be >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("RequiredPresamples: delta must be in (0, 1)");
  }
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw std::domain_error("RequiredPresamples: xi must be > 0");
  }
  if (!(p_min > 0.0 && p_min <= 1.0)) {
    throw std::domain_error("RequiredPresamples: p_min must be in (0, 1]");
  }
  const double k = static_cast<double>(domain_size);
  return 48.0 * std::log(2.0 * k / delta) / (p_min * k * k * xi * xi);
}

std::uint64_t DefaultMaxDraws(const HomogenizerConfig& config) {
  const auto n = static_cast<std::uint64_t>(config.target_size);
  if (config.epsilon <= 0.0) return n * 20000;
  const double per_accept = std::ceil(ExpectedTriesBound(config.epsilon));
  const double cap = static_cast<double>(n) * per_accept * 20.0;
  if (cap >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(cap);
}

void ValidateConfig(const HomogenizerConfig& config) {
  if (!(config.epsilon >= 0.0) || !std::isfinite(config.epsilon)) {
    throw std::invalid_argument("epsilon must be a finite value >= 0");
  }
  if (config.target_size == 0) {
    throw std::invalid_argument("target size must be positive");
  }
  if (config.max_draws && *config.max_draws == 0) {
    throw std::invalid_argument("max_draws must be positive");
  }
  if (config.epsilon == 0.0 && config.warmup_draws == 0 &&
      !config.allow_zero_epsilon) {
    throw std::invalid_argument(
        "epsilon = 0 rejects every draw until all domain values have been "
        "seen; use a warm-up or set allow_zero_epsilon");
  }
}

}  // namespace homogen
