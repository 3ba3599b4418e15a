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

// The four calculator expression distributions.

#ifndef HOMOGEN_CALC_SAMPLER_H_
#define HOMOGEN_CALC_SAMPLER_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "homogen/calc/expr.h"
#include "homogen/rng.h"

namespace homogen::calc {

// Direct weighted grammar sampling: a uniform digit with probability 1 - p,
// otherwise one of + - * (p/3 each) over two recursively sampled operands.
struct Dcfg {
  double p = 0.4;
};

// Depth forcing: draw d ~ U{1..max_depth}; a node of target depth d > 0 is
// a uniform operator with one uniformly chosen side forced to depth d - 1
// and the other drawn to depth U{0..d-1}; depth 0 is a uniform digit.
struct T2t {
  int max_depth = 8;
};

// Like Dcfg, but a + or * node combines a run of 2, 3 or 4 (uniform)
// recursively sampled operands left-associatively.
struct Rcfg {
  double p = 0.3;
};

// A complete binary tree of uniform operators over uniform digits, with the
// depth drawn from `depth_weights` (index = depth).
struct Bal {
  std::vector<double> depth_weights = {0, 1, 1, 1, 1, 1, 1};
};

using CalcSampler = std::variant<Dcfg, T2t, Rcfg, Bal>;

class SamplerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws SamplerError for parameters under which sampling might not
// terminate: Dcfg needs p in [0, 1/2), Rcfg p in [0, 3/8), T2t a depth in
// 1..64 and Bal non-negative weights over depths 0..20 with a positive sum.
void ValidateSampler(const CalcSampler& sampler);

Expr SampleExpr(Rng& rng, const CalcSampler& sampler);

// The depth-forcing construction at a fixed target depth.
Expr SampleForcedDepth(Rng& rng, int depth);

// A complete tree of the given depth.
Expr SampleBalanced(Rng& rng, int depth);

// dcfg, t2t, rcfg or bal with default parameters. Throws SamplerError.
CalcSampler SamplerByName(std::string_view name);
std::string SamplerName(const CalcSampler& sampler);

}  // namespace homogen::calc

#endif  // HOMOGEN_CALC_SAMPLER_H_
