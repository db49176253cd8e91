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
 * Batch front end.
 *
 *     tlsent <command> --config PATH [--seed INT] [--out DIR] [options]
 *
 * Commands: w-state, bell, cluster, witness, tomo, spectroscopy, rwa-check.
 * Exit codes: 0 success, 2 usage or parse error, 3 configuration invariant,
 * 4 error in a simulation module, 5 I/O failure.
 */

#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tlsent/report.hpp"

namespace tlsent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitPhysics = 4;
inline constexpr int kExitIo = 5;

struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = "tlsent-out";
    std::optional<std::size_t> n;
    std::size_t shots = 0;
    std::string mode = "general";      ///< general | paper-n3
    std::vector<std::string> target;   ///< e.g. {"w3"}, {"c", "4"}, {"bell", "1", "2"}
    bool search_corrections = false;
    std::optional<double> readout_f;   ///< overrides the config value
    bool decomposed = false;
    bool exact = false;
    std::string bus_init = "plus";     ///< ground | plus
    std::size_t grid = 2000;
    std::vector<int> tls;
    std::string frame = "bus";         ///< bus | bare
    bool write_shots = false;

    /// Key/value echo written at the top of report.txt. The output
    /// directory is not part of it.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Runs one manifest and returns its report without writing anything.
Report run_command(const RunManifest &manifest);

/// Parses arguments (without the program name), runs, and emits the
/// report. Messages go to `out` and `err`; returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

int main_entry(int argc, char **argv);

/// Exit code for an exception escaping run_command or emit_report.
int exit_code_for(const std::exception &e);

} // namespace tlsent::cli
