// Copyright 2026 The robust360 Authors
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

#include "robust360/log.h"

#include <cstdlib>
#include <string>

namespace robust360 {

void init_logging() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("ROBUST360_LOG")) {
    level = spdlog::level::from_str(env);
  }
  spdlog::set_level(level);
}

}  // namespace robust360
