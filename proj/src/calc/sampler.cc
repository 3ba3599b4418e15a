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

#include "homogen/calc/sampler.h"

#include <cmath>
#include <utility>

namespace homogen::calc {

namespace {

constexpr Op kOps[] = {Op::kAdd, Op::kSub, Op::kMul};
constexpr int kMaxT2tDepth = 64;
constexpr std::size_t kMaxBalDepth = 20;

Op RandomOp(Rng& rng) { return kOps[rng.UniformInt(0, 2)]; }

Expr RandomDigit(Rng& rng) {
  return Expr::Digit(static_cast<int>(rng.UniformInt(0, 9)));
}

Expr SampleDcfg(Rng& rng, double p) {
  if (!rng.Bernoulli(p)) return RandomDigit(rng);
  const Op op = RandomOp(rng);
  Expr lhs = SampleDcfg(rng, p);
  Expr rhs = SampleDcfg(rng, p);
  return Expr::Binary(op, std::move(lhs), std::move(rhs));
}

Expr SampleRcfg(Rng& rng, double p) {
  if (!rng.Bernoulli(p)) return RandomDigit(rng);
  const Op op = RandomOp(rng);
  const int run = op == Op::kSub ? 2 : static_cast<int>(rng.UniformInt(2, 4));
  Expr acc = SampleRcfg(rng, p);
  for (int k = 1; k < run; ++k) {
    Expr next = SampleRcfg(rng, p);
    acc = Expr::Binary(op, std::move(acc), std::move(next));
  }
  return acc;
}

struct Visitor {
  Rng& rng;

  Expr operator()(const Dcfg& s) const { return SampleDcfg(rng, s.p); }
  Expr operator()(const Rcfg& s) const { return SampleRcfg(rng, s.p); }
  Expr operator()(const T2t& s) const {
    return SampleForcedDepth(rng, static_cast<int>(rng.UniformInt(1, s.max_depth)));
  }
  Expr operator()(const Bal& s) const {
    double total = 0;
    for (double w : s.depth_weights) total += w;
    double u = rng.UniformReal() * total;
    std::size_t chosen = 0;
    for (std::size_t depth = 0; depth < s.depth_weights.size(); ++depth) {
      if (s.depth_weights[depth] <= 0.0) continue;
      chosen = depth;  // rounding can leave u >= 0 past the end
      if ((u -= s.depth_weights[depth]) < 0) break;
    }
    return SampleBalanced(rng, static_cast<int>(chosen));
  }
};

}  // namespace

void ValidateSampler(const CalcSampler& sampler) {
  if (const auto* s = std::get_if<Dcfg>(&sampler)) {
    if (!(s->p >= 0.0 && s->p < 0.5)) {
      throw SamplerError("DCFG needs 0 <= p < 0.5 for finite expected size");
    }
  } else if (const auto* s = std::get_if<Rcfg>(&sampler)) {
    if (!(s->p >= 0.0 && s->p < 0.375)) {
      throw SamplerError("RCFG needs 0 <= p < 0.375 for finite expected size");
    }
  } else if (const auto* s = std::get_if<T2t>(&sampler)) {
    if (s->max_depth < 1 || s->max_depth > kMaxT2tDepth) {
      throw SamplerError("T2T max depth must lie in 1..64");
    }
  } else if (const auto* s = std::get_if<Bal>(&sampler)) {
    if (s->depth_weights.empty() || s->depth_weights.size() > kMaxBalDepth + 1) {
      throw SamplerError("BAL needs weights for depths 0..k with k <= 20");
    }
    double total = 0;
    for (double w : s->depth_weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw SamplerError("BAL depth weights must be finite and >= 0");
      }
      total += w;
    }
    if (total <= 0.0) throw SamplerError("BAL depth weights sum to zero");
  }
}

Expr SampleExpr(Rng& rng, const CalcSampler& sampler) {
  ValidateSampler(sampler);
  return std::visit(Visitor{rng}, sampler);
}

Expr SampleForcedDepth(Rng& rng, int depth) {
  if (depth <= 0) return RandomDigit(rng);
  const Op op = RandomOp(rng);
  const bool force_left = rng.Bernoulli(0.5);
  const int other = static_cast<int>(rng.UniformInt(0, depth - 1));
  Expr lhs = SampleForcedDepth(rng, force_left ? depth - 1 : other);
  Expr rhs = SampleForcedDepth(rng, force_left ? other : depth - 1);
  return Expr::Binary(op, std::move(lhs), std::move(rhs));
}

Expr SampleBalanced(Rng& rng, int depth) {
  if (depth <= 0) return RandomDigit(rng);
  const Op op = RandomOp(rng);
  Expr lhs = SampleBalanced(rng, depth - 1);
  Expr rhs = SampleBalanced(rng, depth - 1);
  return Expr::Binary(op, std::move(lhs), std::move(rhs));
}

CalcSampler SamplerByName(std::string_view name) {
  if (name == "dcfg") return Dcfg{};
  if (name == "t2t") return T2t{};
  if (name == "rcfg") return Rcfg{};
  if (name == "bal") return Bal{};
  throw SamplerError("unknown calculator distribution '" + std::string(name) +
                     "'");
}

std::string SamplerName(const CalcSampler& sampler) {
  static constexpr const char* kNames[] = {"dcfg", "t2t", "rcfg", "bal"};
  return kNames[sampler.index()];
}

}  // namespace homogen::calc
