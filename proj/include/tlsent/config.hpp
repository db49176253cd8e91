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

/**
 * @file
 * Device configuration files.
 *
 *     {
 *       "device": {"omega10_ghz": 7.0, "readout_fidelity": 0.96,
 *                  "plasma_ghz": 9.0},
 *       "tls": [{"id": "T1", "omega_r_ghz": 5.0, "splitting_mhz": 40}, ...]
 *     }
 *
 * `plasma_ghz` is optional (default 9). Frequencies are ordinary
 * frequencies; they become rad/s on load, and each splitting becomes a
 * coupling S = pi * splitting. TLSs are sorted by frequency.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tlsent/device.hpp"

namespace tlsent::cli {

/// Throws ParseError for malformed JSON, missing or mistyped keys, and
/// unknown keys; ConfigError for invariant violations. Non-fatal warnings
/// are appended to `warnings` when given.
device::DeviceConfig parse_config(std::string_view text,
                                  std::vector<std::string> *warnings = nullptr);

/// parse_config on a file; an unreadable file is a ParseError.
device::DeviceConfig load_config(const std::filesystem::path &path,
                                 std::vector<std::string> *warnings = nullptr);

} // namespace tlsent::cli
