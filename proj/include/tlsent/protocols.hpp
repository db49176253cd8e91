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
 * Entanglement-generation protocols built from resonant windows and bus
 * operations, and the executor that runs them on the full register.
 */

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tlsent/device.hpp"
#include "tlsent/schedule.hpp"
#include "tlsent/state_vector.hpp"

namespace tlsent::protocol {

using device::DeviceConfig;

/// Called for each Measure step; may collapse the state in place.
using MeasureHook = std::function<void(StateVector &, const Measure &)>;

/// Runs every step on `state` (bus = qubit 0). A Measure step without a
/// hook throws.
StateVector execute(const PulseSchedule &schedule, StateVector state,
                    const DeviceConfig &config, const MeasureHook &hook = {});

/// Bus replaced by |0>. Throws unless the reduced bus state has purity
/// above 1 - 1e-9; the leftover register state is the bus-projected one.
void reset_bus(StateVector &state);

/// exp(-i angle sigma_axis / 2) on the bus.
void rotate_bus(StateVector &state, Axis axis, double angle);

/// X on the bus.
void excite_bus(StateVector &state);

/// WINDOW(j, tau_j) then RESET, for j = 1..N.
PulseSchedule initialization_schedule(const DeviceConfig &config);

/// Swaps each TLS into the bus and resets it; the result is |0, g, ..., g>
/// up to a global phase for any product input with the bus in |0>.
StateVector initialize_register(StateVector state, const DeviceConfig &config);

/// t_j = arcsin(1 / sqrt(N + 1 - j)) / S_j, with N = couplings.size().
std::vector<double> w_state_times(std::span<const double> couplings);

/// tau_1 / 3, tau_2 / 2, tau_3 / 2.
std::vector<double> w_state_times_paper_n3(std::span<const double> couplings);

/// |prod_{j<l} cos(S_j t_j) sin(S_l t_l)| for l = 1..N, followed by the
/// residual bus amplitude |prod_j cos(S_j t_j)|.
std::vector<double> w_amplitude_products(std::span<const double> couplings,
                                         std::span<const double> times);

enum class WMode { General, PaperN3 };
enum class BusInit { Ground, Plus };

const char *to_string(WMode mode);
const char *to_string(BusInit init);

struct ProtocolReport {
    StateVector final_state;
    double target_fidelity = 0.0;
    /// Reduced bus purity and ground population both above 1 - 1e-9.
    bool bus_disentangled = false;
    double bus_excited_population = 0.0;
    /// sqrt of each register TLS's excited population, register order.
    std::vector<double> amplitude_profile;
    std::vector<int> register_tls;
    PulseSchedule schedule;
};

/// EXCITE then WINDOW(j, t_j) for j = 1..n on TLSs 1..n.
PulseSchedule w_schedule(const DeviceConfig &config, std::size_t n,
                         WMode mode = WMode::General);

/// Runs w_schedule from |0, g, ..., g> and scores against |0> (x) |W_n>.
ProtocolReport run_w_protocol(const DeviceConfig &config, std::size_t n,
                              WMode mode = WMode::General);

/// EXCITE, WINDOW(j, tau_j / 2), WINDOW(k, tau_k).
PulseSchedule bell_schedule(const DeviceConfig &config, int j, int k);
ProtocolReport run_bell(const DeviceConfig &config, int j, int k);

/// Preparation: for TLS j < n, RESET, ROT(x, -pi/2), WINDOW(j, tau_j), which
/// leaves TLS j in (|g> + |e>)/sqrt(2); then RESET and, for BusInit::Plus,
/// ROT(y, pi/2). Generation: for j = 1..n-1, ROT(z, pi/2), WINDOW(j, tau_j),
/// ROT(z, pi/2); then WINDOW(n, tau_n).
PulseSchedule cluster_sequence(const DeviceConfig &config, std::size_t n,
                               BusInit bus_init);

/// Best per-qubit phase correction diag(1, i^k) for matching a register
/// state to a target.
struct PhaseCorrection {
    double fidelity = 0.0;
    std::vector<int> quarter_turns; ///< k per register qubit, 0..3
};

/// Maximizes |<target| (x)_q diag(1, i^{k_q}) |psi>|^2 over all 4^n choices,
/// where psi is the component of `full` with the bus and spectators in the
/// ground state. Ties go to the smallest index with qubit 1 least
/// significant.
PhaseCorrection best_phase_correction(const StateVector &full,
                                      const StateVector &target,
                                      std::span<const int> register_tls);

/// Applies diag(1, i^k) to each register TLS.
void apply_phase_correction(StateVector &state,
                            std::span<const int> register_tls,
                            std::span<const int> quarter_turns);

struct CorrectionVariant {
    BusInit bus_init = BusInit::Ground;
    double uncorrected_fidelity = 0.0;
    double literal_form_fidelity = 0.0;
    PhaseCorrection best;
};

struct CorrectionReport {
    std::vector<CorrectionVariant> variants; ///< Ground, Plus
    double best_fidelity = 0.0;
    BusInit best_bus_init = BusInit::Ground;
    std::vector<int> quarter_turns;
    /// best_fidelity >= 1 - 1e-6.
    bool exact_up_to_phase_corrections = false;
};

struct ClusterResult {
    ProtocolReport protocol; ///< for the requested bus_init
    CorrectionReport corrections;
};

/// Executes cluster_sequence for both bus initializations; `bus_init`
/// selects which run fills `protocol`.
ClusterResult run_cluster_protocol(const DeviceConfig &config, std::size_t n,
                                   BusInit bus_init);

} // namespace tlsent::protocol
