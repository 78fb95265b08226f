// Copyright 2026 The dioph Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// The `dioph` command line. Exit codes: 0 success, 2 bad input or failed
// hypothesis, 3 certification failure, 4 budget truncation (partial output
// still written).

#ifndef DIOPH_CLI_HPP_
#define DIOPH_CLI_HPP_

#include <iosfwd>

#include "dioph/numerics.hpp"

namespace dioph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitBudget = 4;

int exit_code_for(ErrorKind kind);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dioph

#endif  // DIOPH_CLI_HPP_
