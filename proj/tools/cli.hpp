// Copyright 2026 The qcell Authors
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

#ifndef QCELL_TOOLS_CLI_HPP
#define QCELL_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qcell::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the qcell tool. `args` excludes the program name.
/// Returns 0 on success, 1 on invalid input or usage, 2 on I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Data directory for `serve`: the flag if given, else $QCELL_DATA_DIR, else
/// ./qcell-data.
std::string resolve_data_dir(const std::string& flag_value, bool flag_given);

}  // namespace qcell::app

#endif  // QCELL_TOOLS_CLI_HPP
