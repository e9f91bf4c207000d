// Copyright 2026 The seqdisc Authors
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

#ifndef SEQDISC_TOOLS_CLI_H_
#define SEQDISC_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace seqdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitStatistical = 4;
inline constexpr int kExitCertification = 5;
inline constexpr int kExitInternal = 1;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, or to the file given by --out; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace seqdisc::cli

#endif  // SEQDISC_TOOLS_CLI_H_
