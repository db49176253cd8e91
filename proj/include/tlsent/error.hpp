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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tlsent {

/// Base class for every error raised by the library. `what()` is prefixed
/// with the name of the module that raised it, e.g. "device-model: ...".
class Error : public std::runtime_error {
  public:
    Error(std::string module, const std::string &message);

    const std::string &module() const noexcept { return module_; }

  private:
    std::string module_;
};

/// Malformed input text (config files, schedules, CLI values).
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A device configuration violates one of its invariants. `fields` names
/// the offending entries (TLS ids or config keys).
class ConfigError : public Error {
  public:
    ConfigError(const std::string &message, std::vector<std::string> fields);

    const std::vector<std::string> &fields() const noexcept { return fields_; }

  private:
    std::vector<std::string> fields_;
};

/// Filesystem failures while writing reports.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace tlsent
