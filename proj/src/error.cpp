// Copyright 2026 The tlsent Authors
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

#include "tlsent/error.hpp"

#include <utility>

namespace tlsent {

Error::Error(std::string module, const std::string &message)
    : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

ConfigError::ConfigError(const std::string &message,
                         std::vector<std::string> fields)
    : Error("config", message), fields_(std::move(fields)) {}

} // namespace tlsent
