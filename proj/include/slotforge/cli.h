// Copyright 2026 The Slotforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Subcommands:
//
//   annotate              --corpus C --mock-script S --out O
//   forge <kind>          --corpus C --out O [--jobs N]
//   parse                 --pred P [--out O]
//   score                 --gold D --pred P [--out O]
//   report                --base R --new R [--label L] [--mode M]
//   adapter-check
//
// Global flags: --config, --seed, --out, --format, --verbose, --set key=value.

#ifndef SLOTFORGE_CLI_H_
#define SLOTFORGE_CLI_H_

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "slotforge/errors.h"

namespace slotforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitExternalFailure = 3;

int ExitCodeFor(ErrorCode code);

// SLOTFORGE_* variables of the running process.
std::map<std::string, std::string> ProcessEnvironment();

// `args` excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err,
           const std::map<std::string, std::string> &environment = {});

}  // namespace slotforge

#endif  // SLOTFORGE_CLI_H_
