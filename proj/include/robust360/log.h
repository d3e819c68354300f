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

#ifndef ROBUST360_LOG_H_
#define ROBUST360_LOG_H_

#include <spdlog/spdlog.h>

namespace robust360 {

// Applies the ROBUST360_LOG environment variable (trace, debug, info, warn,
// error, off) to the default logger. Defaults to warn. Safe to call twice.
void init_logging();

}  // namespace robust360

#endif  // ROBUST360_LOG_H_
