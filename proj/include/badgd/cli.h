// Copyright 2026 The badgd Authors
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

// Command-line front end: stats, trigger, gap, tradeoff, audit, simulate.

#ifndef BADGD_CLI_H_
#define BADGD_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace badgd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInconsistent = 2;

// `args` excludes the program name. Results go to `out`, diagnostics and the
// per-stage log to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace badgd

#endif  // BADGD_CLI_H_
