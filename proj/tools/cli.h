// Copyright 2026 The dsmm Authors.
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

#ifndef DSMM_TOOLS_CLI_H_
#define DSMM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dsmm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCap = 3;

// Environment variable that sets the brute-force cap; --cap wins over it.
inline constexpr const char* kCapEnv = "DSMM_CAP";

// args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dsmm::cli

#endif  // DSMM_TOOLS_CLI_H_
