/*
 * Copyright 2026 The gopenmax Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gopenmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Runs one command line (without the program name), e.g.
/// {"fit", "--dump", "net.jsonl", "--out", "model.json"}.
///
/// `--config FILE` loads a JSON document whose keys mirror the long flag
/// names (dashes or underscores). Keys may sit at the top level or under an
/// object named after the subcommand. Flags given on the command line win.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace gopenmax::cli
