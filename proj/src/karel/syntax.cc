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

#include "homogen/karel/syntax.h"

#include <cctype>
#include <charconv>
#include <optional>

namespace homogen::karel {

SyntaxError::SyntaxError(std::size_t token_index, const std::string& message)
    : std::runtime_error("token " + std::to_string(token_index) + ": " +
                         message),
      token_index_(token_index) {}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else if (ch == '(' || ch == ')' || ch == ':' || ch == '{' || ch == '}') {
      flush();
      tokens.emplace_back(1, ch);
    } else {
      current += ch;
    }
  }
  flush();
  return tokens;
}

namespace {

class Emitter {
 public:
  explicit Emitter(std::vector<std::string>& out) : out_(out) {}

  void Statements(const Stmt& s) {
    if (s.kind == StmtKind::kSeq) {
      for (const Stmt& child : s.children) Statement(child);
    } else {
      Statement(s);
    }
  }

  void Statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kAction:
        Emit(std::string(ActionName(s.action)));
        Emit("(");
        Emit(")");
        break;
      case StmtKind::kSeq:
        Statements(s);
        break;
      case StmtKind::kWhile:
      case StmtKind::kIf:
      case StmtKind::kIfElse:
        Emit(s.kind == StmtKind::kWhile ? "while" : "if");
        Emit("(");
        Condition(s.cond);
        Emit(")");
        Emit(":");
        Body(s.children[0]);
        if (s.kind == StmtKind::kIfElse) {
          Emit("else");
          Emit(":");
          Body(s.children[1]);
        }
        break;
      case StmtKind::kRepeat:
        Emit("repeat");
        Emit("(");
        Emit(std::to_string(s.repeat_count));
        Emit(")");
        Emit(":");
        Body(s.children[0]);
        break;
    }
  }

 private:
  void Emit(std::string token) { out_.push_back(std::move(token)); }

  void Condition(const karel::Condition& c) {
    for (int i = 0; i < c.negations; ++i) {
      Emit("not");
      Emit("(");
    }
    Emit(std::string(PredicateName(c.predicate)));
    Emit("(");
    Emit(")");
    for (int i = 0; i < c.negations; ++i) Emit(")");
  }

  void Body(const Stmt& s) {
    if (s.kind == StmtKind::kAction) {
      Statement(s);
      return;
    }
    Emit("{");
    Statements(s);
    Emit("}");
  }

  std::vector<std::string>& out_;
};

std::optional<Action> ActionFromName(std::string_view name) {
  for (Action a : kAllActions) {
    if (ActionName(a) == name) return a;
  }
  return std::nullopt;
}

std::optional<Predicate> PredicateFromName(std::string_view name) {
  for (Predicate p : kAllPredicates) {
    if (PredicateName(p) == name) return p;
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::span<const std::string> tokens) : tokens_(tokens) {}

  Program ParseProgram() {
    Expect("def");
    Expect("main");
    Expect("(");
    Expect(")");
    Expect(":");
    std::vector<Stmt> items;
    while (!AtEnd()) items.push_back(ParseStatement());
    if (items.empty()) Fail("program body is empty");
    return Program(Stmt::Seq(std::move(items)));
  }

 private:
  bool AtEnd() const { return pos_ >= tokens_.size(); }

  const std::string& Peek() const {
    static const std::string kEnd;
    return AtEnd() ? kEnd : tokens_[pos_];
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw SyntaxError(pos_, message);
  }

  void Expect(std::string_view token) {
    if (AtEnd()) Fail("expected '" + std::string(token) + "', got end of input");
    if (tokens_[pos_] != token) {
      Fail("expected '" + std::string(token) + "', got '" + tokens_[pos_] +
           "'");
    }
    ++pos_;
  }

  Stmt ParseStatement() {
    if (AtEnd()) Fail("expected a statement, got end of input");
    const std::string& head = tokens_[pos_];
    if (auto action = ActionFromName(head)) {
      ++pos_;
      Expect("(");
      Expect(")");
      return Stmt::Act(*action);
    }
    if (head == "while") {
      ++pos_;
      const Condition c = ParseCondition();
      Expect(":");
      return Stmt::While(c, ParseBody());
    }
    if (head == "if") {
      ++pos_;
      const Condition c = ParseCondition();
      Expect(":");
      Stmt then_body = ParseBody();
      if (Peek() == "else") {
        ++pos_;
        Expect(":");
        return Stmt::IfElse(c, std::move(then_body), ParseBody());
      }
      return Stmt::If(c, std::move(then_body));
    }
    if (head == "repeat") {
      ++pos_;
      Expect("(");
      const int count = ParseRepeatCount();
      Expect(")");
      Expect(":");
      return Stmt::Repeat(count, ParseBody());
    }
    Fail("unexpected token '" + head + "'");
  }

  // `( C )` as it appears after while/if.
  Condition ParseCondition() {
    Expect("(");
    const Condition c = ParseConditionExpr();
    Expect(")");
    return c;
  }

  Condition ParseConditionExpr() {
    if (AtEnd()) Fail("expected a condition, got end of input");
    if (tokens_[pos_] == "not") {
      ++pos_;
      Expect("(");
      const Condition inner = ParseConditionExpr();
      Expect(")");
      return Not(inner);
    }
    auto predicate = PredicateFromName(tokens_[pos_]);
    if (!predicate) Fail("unknown condition '" + tokens_[pos_] + "'");
    ++pos_;
    Expect("(");
    Expect(")");
    return Cond(*predicate);
  }

  int ParseRepeatCount() {
    if (AtEnd()) Fail("expected a repeat count, got end of input");
    const std::string& text = tokens_[pos_];
    int value = -1;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      Fail("repeat count '" + text + "' is not an integer");
    }
    if (value < 0 || value > kMaxRepeat) {
      Fail("repeat count " + text + " outside 0..19");
    }
    ++pos_;
    return value;
  }

  Stmt ParseBody() {
    if (Peek() != "{") return ParseStatement();
    ++pos_;
    std::vector<Stmt> items;
    while (Peek() != "}") {
      if (AtEnd()) Fail("unterminated '{'");
      items.push_back(ParseStatement());
    }
    ++pos_;
    if (items.empty()) Fail("empty block");
    return Stmt::Seq(std::move(items));
  }

  std::span<const std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> EmitTokens(const Program& program) {
  std::vector<std::string> out = {"def", "main", "(", ")", ":"};
  Emitter(out).Statements(program.body());
  return out;
}

std::string FormatProgram(const Program& program) {
  std::string out;
  for (const std::string& token : EmitTokens(program)) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

Program ParseTokens(std::span<const std::string> tokens) {
  return Parser(tokens).ParseProgram();
}

Program ParseProgram(std::string_view text) {
  const std::vector<std::string> tokens = Tokenize(text);
  return ParseTokens(tokens);
}

}  // namespace homogen::karel
