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

// Reference computations for tests and the acceptance suite. Each one is
// written without calling the library routine it checks.

#ifndef HOMOGEN_TESTS_ORACLES_H_
#define HOMOGEN_TESTS_ORACLES_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "homogen/calc/expr.h"
#include "homogen/karel/gen.h"
#include "homogen/karel/interpreter.h"
#include "homogen/karel/task.h"
#include "homogen/rng.h"

namespace homogen::oracle {

// Exact value of calculator text with arbitrary-precision integers. The text
// is assumed well formed.
class BigEval {
 public:
  using Int = boost::multiprecision::cpp_int;

  explicit BigEval(std::string_view text) : text_(text) {}

  Int Run() { return Sum(); }

 private:
  Int Sum() {
    Int v = Term();
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char op = text_[pos_++];
      const Int rhs = Term();
      v = op == '+' ? Int(v + rhs) : Int(v - rhs);
    }
    return v;
  }
  Int Term() {
    Int v = Factor();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      v *= Factor();
    }
    return v;
  }
  Int Factor() {
    if (text_[pos_] == '(') {
      ++pos_;
      Int v = Sum();
      ++pos_;  // ')'
      return v;
    }
    return Int(text_[pos_++] - '0');
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Non-negative residue mod 10 of the exact value.
inline int Residue10(std::string_view text) {
  BigEval::Int r = BigEval(text).Run() % 10;
  if (r < 0) r += 10;
  return static_cast<int>(r);
}

// Arbitrary tree shapes, including right-nested runs the samplers avoid.
inline calc::Expr RandomExpr(Rng& rng, int depth) {
  if (depth <= 0 || rng.Bernoulli(0.3)) {
    return calc::Expr::Digit(static_cast<int>(rng.UniformInt(0, 9)));
  }
  static constexpr calc::Op kOps[] = {calc::Op::kAdd, calc::Op::kSub,
                                      calc::Op::kMul};
  const calc::Op op = kOps[rng.UniformInt(0, 2)];
  calc::Expr lhs = RandomExpr(rng, depth - 1);
  calc::Expr rhs = RandomExpr(rng, depth - 1);
  return calc::Expr::Binary(op, std::move(lhs), std::move(rhs));
}

// ln|X| - H(P) from raw counts.
inline double KlToUniform(const std::vector<std::uint64_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  double entropy = 0;
  for (auto c : counts) {
    if (c > 0) entropy -= (c / total) * std::log(c / total);
  }
  return std::log(static_cast<double>(counts.size())) - entropy;
}

// Marker-count pmf: a fair geometric on 1, 2, ... with the tail mass
// collected at 9, its mirror image, or uniform on 1..9.
inline double MarkerPmf(karel::MarkerCountDist dist, int k) {
  auto geom = [](int m) {
    return m < 9 ? std::ldexp(1.0, -m) : std::ldexp(1.0, -8);
  };
  switch (dist) {
    case karel::MarkerCountDist::kGeom:
      return geom(k);
    case karel::MarkerCountDist::kAntiGeom:
      return geom(10 - k);
    case karel::MarkerCountDist::kUniform:
      return 1.0 / 9.0;
  }
  return 0;
}

// floor(cells * percent / 100) in exact integer arithmetic.
inline int FloorShare(int cells, int percent) { return cells * percent / 100; }

// Replays a task without trusting its builder. Returns an empty string when
// every input runs cleanly to its stored output and the shown inputs cover
// every branch arm, otherwise a description of the first problem.
inline std::string CheckTask(const karel::SynthesisTask& task,
                             std::int64_t step_limit) {
  using karel::Arm;
  std::set<karel::BranchArm> covered;
  for (const karel::IoPair& pair : task.pairs) {
    const karel::ExecResult r = karel::Execute(task.program, pair.input, step_limit);
    if (!r.ok()) return "shown input crashed";
    if (r.output() != pair.output) return "stored output differs";
    covered.insert(r.branches_taken.begin(), r.branches_taken.end());
  }
  const karel::ExecResult held =
      karel::Execute(task.program, task.held_out.input, step_limit);
  if (!held.ok() || held.output() != task.held_out.output) {
    return "held-out pair invalid";
  }
  // Every if, ifElse and while node, found by walking the tree here.
  std::set<karel::BranchArm> wanted;
  std::vector<const karel::Stmt*> stack = {&task.program.body()};
  while (!stack.empty()) {
    const karel::Stmt* s = stack.back();
    stack.pop_back();
    if (s->kind == karel::StmtKind::kIf || s->kind == karel::StmtKind::kIfElse ||
        s->kind == karel::StmtKind::kWhile) {
      wanted.insert({s->branch_id, Arm::kThen});
      wanted.insert({s->branch_id, Arm::kElse});
    }
    for (const karel::Stmt& c : s->children) stack.push_back(&c);
  }
  if (covered != wanted) return "branches not covered";
  return "";
}

}  // namespace homogen::oracle

#endif  // HOMOGEN_TESTS_ORACLES_H_
