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

// The homogen command-line surface: generate, homogenize, stats, karel-run.

#ifndef HOMOGEN_CLI_H_
#define HOMOGEN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace homogen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCrash = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitStall = 3;

// Runs one command. `args` excludes the program name. `env_seed` stands in
// for the HOMOGEN_SEED environment variable (empty when unset).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const std::string& env_seed = "");

// Lowercase hex SHA-256 of a file's bytes. Throws std::runtime_error when the
// file cannot be read.
std::string Sha256File(const std::string& path);

}  // namespace homogen::cli

#endif  // HOMOGEN_CLI_H_
