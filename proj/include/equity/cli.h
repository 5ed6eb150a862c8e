/*
 * Copyright 2026 The Equity Metrics Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// equity-metrics command line: evaluate, synthetic and export subcommands.

#ifndef EQUITY_CLI_H_
#define EQUITY_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace equity {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnvVar = "EQUITY_METRICS_SEED";

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace equity

#endif  // EQUITY_CLI_H_
