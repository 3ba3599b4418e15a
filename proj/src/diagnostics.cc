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

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace homogen {

double KlToUniform(const Histogram& h) {
  if (h.total() == 0) {
    throw std::domain_error("KL to uniform of an empty histogram");
  }
  const double total = static_cast<double>(h.total());
  const double k = static_cast<double>(h.size());
  double kl = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto c = h.count_at(i);
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    kl += p * std::log(p * k);
  }
  // Rounding can leave a tiny negative residue for uniform inputs.
  return std::max(0.0, kl);
}

double KlReduction(const Histogram& before, const Histogram& after) {
  if (before.domain() != after.domain()) {
    throw std::invalid_argument("KL reduction over different domains");
  }
  const double d_before = KlToUniform(before);
  const double d_after = KlToUniform(after);
  if (d_before == 0.0) {
    throw UndefinedReduction(
        "KL reduction undefined: the reference histogram is exactly uniform");
  }
  return 100.0 * (1.0 - d_after / d_before);
}

namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string ReportCsv(std::span<const ReportRow> rows) {
  std::string out =
      "variable,epsilon,kl_before,kl_after,reduction_pct,draws_per_accept,"
      "bound\n";
  for (const ReportRow& r : rows) {
    out += r.variable + "," + Num(r.epsilon) + "," + Num(r.kl_before) + "," +
           Num(r.kl_after) + "," + Num(r.reduction_pct) + "," +
           Num(r.draws_per_accept) + "," + Num(r.bound) + "\n";
  }
  return out;
}

nlohmann::ordered_json ReportJson(std::span<const ReportRow> rows) {
  auto out = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    out.push_back({{"variable", r.variable},
                   {"epsilon", r.epsilon},
                   {"kl_before", r.kl_before},
                   {"kl_after", r.kl_after},
                   {"reduction_pct", r.reduction_pct},
                   {"draws_per_accept", r.draws_per_accept},
                   {"bound", r.bound}});
  }
  return out;
}

}  // namespace homogen
