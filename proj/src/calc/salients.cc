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

#include "homogen/calc/salients.h"

#include <algorithm>
#include <cmath>
#include <functional>

namespace homogen::calc {

CalcSalients ComputeCalcSalients(std::string_view text) {
  ParseExpr(text);
  CalcSalients out;
  const int length = static_cast<int>(text.size());
  out.length_even = length + (length % 2);
  int depth = 0;
  int digits = 0;
  int depth_sum = 0;
  for (char c : text) {
    switch (c) {
      case '(':
        ++depth;
        ++out.num_paren_pairs;
        break;
      case ')':
        --depth;
        break;
      case '+':
      case '-':
      case '*':
        ++out.num_ops;
        break;
      default:
        ++digits;
        depth_sum += depth;
        out.max_depth = std::max(out.max_depth, depth);
        break;
    }
  }
  out.mean_depth = static_cast<double>(depth_sum) / digits;
  out.mean_depth_bin =
      std::clamp(static_cast<int>(std::lround(4.0 * out.mean_depth)), 0,
                 kMaxMeanDepthBin);
  return out;
}

CalcRecord MakeRecord(const Expr& expr) {
  return CalcRecord{Render(expr), EvalMod10(expr)};
}

CalcRecord SampleRecord(Rng& rng, const CalcSampler& sampler) {
  return MakeRecord(SampleExpr(rng, sampler));
}

nlohmann::ordered_json RecordToJson(const CalcRecord& record) {
  nlohmann::ordered_json out;
  out["expr"] = record.expr;
  out["label"] = record.label;
  return out;
}

CalcRecord RecordFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("expr") || !json.contains("label") ||
      !json["expr"].is_string() || !json["label"].is_number_integer()) {
    throw std::invalid_argument(
        "a calculator record needs a string \"expr\" and an integer \"label\"");
  }
  CalcRecord record{json["expr"].get<std::string>(), json["label"].get<int>()};
  if (EvalMod10(ParseExpr(record.expr)) != record.label) {
    throw std::invalid_argument("label " + std::to_string(record.label) +
                                " does not match expression " + record.expr);
  }
  return record;
}

namespace {

SalientSpec<CalcRecord> Clamped(std::string name,
                                std::vector<SalientValue> domain,
                                std::function<int(const CalcSalients&)> field) {
  const SalientValue lo = domain.front();
  const SalientValue hi = domain.back();
  return SalientSpec<CalcRecord>{
      std::move(name), std::move(domain),
      [lo, hi, field = std::move(field)](const CalcRecord& r) {
        return std::clamp<SalientValue>(field(ComputeCalcSalients(r.expr)), lo,
                                        hi);
      }};
}

}  // namespace

std::vector<SalientSpec<CalcRecord>> CalcVariables() {
  std::vector<SalientSpec<CalcRecord>> out;
  out.push_back(Clamped("length", IntegerDomain(2, kMaxLength, 2),
                        [](const CalcSalients& s) { return s.length_even; }));
  out.push_back(Clamped("max_depth", IntegerDomain(0, kMaxParenDepth),
                        [](const CalcSalients& s) { return s.max_depth; }));
  out.push_back(Clamped("mean_depth", IntegerDomain(0, kMaxMeanDepthBin),
                        [](const CalcSalients& s) { return s.mean_depth_bin; }));
  out.push_back(Clamped("num_ops", IntegerDomain(0, kMaxOps),
                        [](const CalcSalients& s) { return s.num_ops; }));
  out.push_back(Clamped("num_parens", IntegerDomain(0, kMaxParenPairs),
                        [](const CalcSalients& s) { return s.num_paren_pairs; }));
  return out;
}

}  // namespace homogen::calc
