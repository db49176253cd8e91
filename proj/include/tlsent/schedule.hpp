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
 * Pulse schedules and their text form.
 *
 * One instruction per line:
 *
 *     WINDOW j=<tls> t=<duration>ns
 *     ROT axis=<x|y|z> angle=<radians>
 *     RESET
 *     EXCITE
 *     MEASURE q=<qubit>
 *     PHASE generation
 *
 * `PHASE generation` separates preparation from generation and may appear
 * at most once. Blank lines and text after `#` are ignored. Numbers are
 * written with 17 significant digits; angles round-trip exactly and
 * durations to within one rounding of the ns conversion.
 */

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tlsent::protocol {

enum class Axis { X, Y, Z };

char to_char(Axis axis);

/// Bus and TLS j on resonance for `duration` seconds.
struct ResonantWindow {
    int tls = 1;
    double duration = 0.0;
    bool operator==(const ResonantWindow &) const = default;
};

/// exp(-i angle sigma_axis / 2) on the bus.
struct BusRotation {
    Axis axis = Axis::Z;
    double angle = 0.0;
    bool operator==(const BusRotation &) const = default;
};

/// Bus returned to |0>; requires the bus to be disentangled.
struct BusReset {
    bool operator==(const BusReset &) const = default;
};

/// X gate on the bus, |0> -> |1>.
struct BusExcite {
    bool operator==(const BusExcite &) const = default;
};

/// Projective measurement of a register qubit (0 = bus).
struct Measure {
    int target = 0;
    bool operator==(const Measure &) const = default;
};

using Instruction =
    std::variant<ResonantWindow, BusRotation, BusReset, BusExcite, Measure>;

struct PulseSchedule {
    std::vector<Instruction> steps;
    /// Leading steps that prepare inputs rather than generate entanglement.
    std::size_t preparation_steps = 0;

    bool operator==(const PulseSchedule &) const = default;
};

/// Throws Error on negative or non-finite durations and angles, TLS indices
/// outside 1..num_tls, and (unless allow_measure) any Measure.
void validate(const PulseSchedule &schedule, std::size_t num_tls,
              bool allow_measure = false);

std::string to_text(const Instruction &step);
std::string to_text(const PulseSchedule &schedule);

/// Throws ParseError with the offending line number.
PulseSchedule parse_schedule(std::string_view text);

} // namespace tlsent::protocol
