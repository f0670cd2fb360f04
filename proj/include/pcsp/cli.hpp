// Copyright 2026 The pcsp Authors
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

#ifndef PCSP_CLI_HPP
#define PCSP_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pcsp {

// Runs one CLI command. args are the command-line arguments without the
// program name, in natural order. Machine-readable results go to out,
// diagnostics to err.
//
// Exit codes: 0 = positive answer, 1 = certified or bounds-exhausted
// negative, 2 = error (bad input, parse failure, budget exceeded).
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace pcsp

#endif  // PCSP_CLI_HPP
