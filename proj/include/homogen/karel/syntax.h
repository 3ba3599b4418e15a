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

// Concrete syntax of Karel programs.
//
// The canonical token stream of a program is
//
//   def main ( ) : <top-level statements>
//
// where statements are spelled
//
//   move ( )                               actions
//   while ( C ) : B    repeat ( r ) : B    if ( C ) : B
//   if ( C ) : B else : B
//
// and conditions as `frontIsClear ( )` or `not ( C )`. A body B is a bare
// action, or the body's statements wrapped in `{` `}`. Braces make the
// dangling-else case impossible in emitted text. The parser also accepts
// unbraced compound bodies, binding `else` to the nearest `if`.

#ifndef HOMOGEN_KAREL_SYNTAX_H_
#define HOMOGEN_KAREL_SYNTAX_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "homogen/karel/program.h"

namespace homogen::karel {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t token_index, const std::string& message);
  // Index of the offending token; equals the token count at end of input.
  std::size_t token_index() const { return token_index_; }

 private:
  std::size_t token_index_;
};

// Splits on whitespace; ( ) : { } are always tokens of their own.
std::vector<std::string> Tokenize(std::string_view text);

std::vector<std::string> EmitTokens(const Program& program);
// Tokens joined by single spaces.
std::string FormatProgram(const Program& program);

Program ParseTokens(std::span<const std::string> tokens);
Program ParseProgram(std::string_view text);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_SYNTAX_H_
