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

#ifndef HOMOGEN_CALC_SALIENTS_H_
#define HOMOGEN_CALC_SALIENTS_H_

#include <string>
#include <string_view>
#include <vector>

#include "homogen/calc/expr.h"
#include "homogen/calc/sampler.h"
#include "homogen/homogenizer.h"
#include "homogen/rng.h"
#include "json.hpp"

namespace homogen::calc {

// Features of a rendered expression. The parenthesized depth of a digit is
// the number of parenthesis pairs enclosing it.
struct CalcSalients {
  int length_even = 0;      // text length, odd lengths rounded up
  int num_ops = 0;
  int num_paren_pairs = 0;
  double mean_depth = 0.0;  // over digits
  int mean_depth_bin = 0;   // round(4 * mean_depth), clamped to 0..40
  int max_depth = 0;

  bool operator==(const CalcSalients&) const = default;
};

// Throws ExprSyntaxError when `text` does not parse.
CalcSalients ComputeCalcSalients(std::string_view text);

// One dataset line: the rendered expression and its value mod 10.
struct CalcRecord {
  std::string expr;
  int label = 0;

  bool operator==(const CalcRecord&) const = default;
};

CalcRecord MakeRecord(const Expr& expr);
CalcRecord SampleRecord(Rng& rng, const CalcSampler& sampler);

// {"expr": "...", "label": n}
nlohmann::ordered_json RecordToJson(const CalcRecord& record);
// Throws std::invalid_argument or ExprSyntaxError on bad records, including
// a label that disagrees with the expression.
CalcRecord RecordFromJson(const nlohmann::json& json);

// Upper ends of the salient domains. Each sits above the 99.9th percentile
// of all four default samplers (checked by the sampler tests).
inline constexpr int kMaxLength = 320;
inline constexpr int kMaxOps = 120;
inline constexpr int kMaxParenPairs = 40;
inline constexpr int kMaxMeanDepthBin = 40;
inline constexpr int kMaxParenDepth = 15;

// length (2..320, even), max_depth (0..15), mean_depth (bins 0..40), num_ops
// (0..120) and num_parens (0..40). Values beyond a domain are clamped.
std::vector<SalientSpec<CalcRecord>> CalcVariables();

}  // namespace homogen::calc

#endif  // HOMOGEN_CALC_SALIENTS_H_
