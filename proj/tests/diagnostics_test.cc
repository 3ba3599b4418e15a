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

#include "homogen/diagnostics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "homogen/calc/salients.h"
#include "homogen/calc/sampler.h"
#include "homogen/homogenizer.h"
#include "homogen/rng.h"

namespace homogen {
namespace {

Histogram FromCounts(const std::vector<std::uint64_t>& counts) {
  Histogram h(IntegerDomain(0, static_cast<SalientValue>(counts.size()) - 1));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (std::uint64_t k = 0; k < counts[i]; ++k) {
      h.Add(static_cast<SalientValue>(i));
    }
  }
  return h;
}

// Shannon entropy in nats, computed independently of the library.
double EntropyOracle(const std::vector<std::uint64_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double h = 0;
  for (auto c : counts) {
    if (c > 0) h -= (c / total) * std::log(c / total);
  }
  return h;
}

TEST(KlToUniformTest, UniformIsZero) {
  EXPECT_DOUBLE_EQ(KlToUniform(FromCounts({5, 5, 5, 5})), 0.0);
}

TEST(KlToUniformTest, PointMassIsLogDomainSize) {
  EXPECT_NEAR(KlToUniform(FromCounts({0, 8, 0, 0})), std::log(4.0), 1e-12);
}

TEST(KlToUniformTest, MatchesEntropyOracle) {
  const double kl = KlToUniform(FromCounts({3, 1}));
  EXPECT_NEAR(kl, std::log(2.0) - EntropyOracle({3, 1}), 1e-12);
  EXPECT_NEAR(kl, 0.75 * std::log(1.5) + 0.25 * std::log(0.5), 1e-12);
  EXPECT_NEAR(kl, 0.1308, 5e-5);
}

TEST(KlToUniformTest, RandomHistogramsMatchOracle) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint64_t> counts(rng.UniformInt(1, 12));
    for (auto& c : counts) c = rng.UniformInt(0, 50);
    counts[0] += 1;  // never empty
    const double expected =
        std::log(static_cast<double>(counts.size())) - EntropyOracle(counts);
    ASSERT_NEAR(KlToUniform(FromCounts(counts)), expected, 1e-10);
  }
}

TEST(KlToUniformTest, PermutationInvariant) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> counts(8);
    for (auto& c : counts) c = rng.UniformInt(0, 30);
    counts[3] += 1;
    const double base = KlToUniform(FromCounts(counts));
    for (int k = 0; k < 5; ++k) {
      for (std::size_t i = counts.size() - 1; i > 0; --i) {
        std::swap(counts[i], counts[rng.UniformInt(0, i)]);
      }
      ASSERT_NEAR(KlToUniform(FromCounts(counts)), base, 1e-12);
    }
  }
}

TEST(KlToUniformTest, ZeroExactlyWhenUniform) {
  Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> counts(rng.UniformInt(2, 6));
    for (auto& c : counts) c = rng.UniformInt(0, 4);
    counts[0] += 1;
    const bool uniform =
        std::all_of(counts.begin(), counts.end(),
                    [&](auto c) { return c == counts[0]; });
    const double kl = KlToUniform(FromCounts(counts));
    if (uniform) {
      ASSERT_EQ(kl, 0.0);
    } else {
      ASSERT_GT(kl, 0.0);
    }
  }
}

TEST(KlToUniformTest, EmptyHistogramThrows) {
  EXPECT_THROW(KlToUniform(FromCounts({0, 0})), std::domain_error);
}

TEST(KlReductionTest, Examples) {
  const Histogram skewed = FromCounts({6, 2, 1, 1});
  EXPECT_DOUBLE_EQ(KlReduction(skewed, skewed), 0.0);
  EXPECT_DOUBLE_EQ(KlReduction(skewed, FromCounts({3, 3, 3, 3})), 100.0);
  EXPECT_LT(KlReduction(FromCounts({3, 2, 2, 3}), skewed), 0.0);
}

TEST(KlReductionTest, Errors) {
  EXPECT_THROW(KlReduction(FromCounts({2, 2}), FromCounts({3, 1})),
               UndefinedReduction);
  EXPECT_THROW(KlReduction(FromCounts({3, 1}), FromCounts({3, 1, 1})),
               std::invalid_argument);
}

TEST(HistogramTest, HistogramOfUsesSpec) {
  const SalientSpec<int> parity{"parity", {0, 1},
                                [](const int& v) { return v % 2; }};
  const std::vector<int> samples = {1, 2, 3, 5, 7};
  const Histogram h = HistogramOf<int>(samples, parity);
  EXPECT_EQ(h.count(0), 1u);
  EXPECT_EQ(h.count(1), 4u);
  EXPECT_EQ(h.total(), 5u);
}

// A biased source over 0..7 (p proportional to 2^-x).
SalientValue Biased(Rng& rng) {
  SalientValue v = 0;
  while (v < 7 && rng.Bernoulli(0.5)) ++v;
  return v;
}

const SalientSpec<SalientValue> kBiasedSpec{
    "x", IntegerDomain(0, 7), [](const SalientValue& v) { return v; }};

TEST(AcceptanceCurveTest, HugeEpsilonAcceptsAlmostEverything) {
  const std::vector<double> eps = {1000.0};
  const auto curve =
      AcceptanceCurve<SalientValue>(Biased, kBiasedSpec, eps, 5000, 1);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_NEAR(curve[0].draws_per_accept, 1.0, 0.01);
  EXPECT_DOUBLE_EQ(curve[0].bound, 1.001);
}

TEST(AcceptanceCurveTest, NonIncreasingAndUnderBound) {
  const std::vector<double> eps = {0.01, 0.03, 0.1, 0.3, 1.0, 3.0};
  const auto curve =
      AcceptanceCurve<SalientValue>(Biased, kBiasedSpec, eps, 5000, 7);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    EXPECT_LE(curve[i].draws_per_accept,
              curve[i].bound + 3 * curve[i].standard_error);
    if (i > 0) {
      EXPECT_LE(curve[i].draws_per_accept,
                curve[i - 1].draws_per_accept +
                    3 * (curve[i].standard_error +
                         curve[i - 1].standard_error));
    }
  }
}

TEST(AcceptanceCurveTest, DcfgLengthStaysUnderBound) {
  const calc::CalcSampler sampler = calc::Dcfg{};
  const auto vars = calc::CalcVariables();
  const std::vector<double> eps = {0.025};
  const auto curve = AcceptanceCurve<calc::CalcRecord>(
      [&](Rng& rng) { return calc::SampleRecord(rng, sampler); }, vars[0], eps,
      5000, 3);
  EXPECT_LE(curve[0].draws_per_accept, 41.0);
}

TEST(ReportTest, CsvAndJsonLayout) {
  const std::vector<ReportRow> rows = {
      {"length", 0.025, 3.3579, 1.7079, 49.1394, 4.904, 41.0}};
  EXPECT_EQ(ReportCsv(rows),
            "variable,epsilon,kl_before,kl_after,reduction_pct,"
            "draws_per_accept,bound\n"
            "length,0.025,3.3579,1.7079,49.1394,4.904,41\n");
  const auto json = ReportJson(rows);
  ASSERT_EQ(json.size(), 1u);
  EXPECT_EQ(json[0]["variable"], "length");
  EXPECT_DOUBLE_EQ(json[0]["reduction_pct"].get<double>(), 49.1394);
}

}  // namespace
}  // namespace homogen
