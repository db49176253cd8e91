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
 * Phase-qubit + TLS device physics.
 *
 * Everything here is in angular frequency (rad/s) with hbar = 1, times in
 * seconds. TLS j (1-based) lives on register qubit j; qubit 0 is the bus.
 */

#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlsent/operators.hpp"
#include "tlsent/state_vector.hpp"

namespace tlsent::device {

inline constexpr double kHbar = 1.054571817e-34; // J s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr std::size_t kMaxTls = 10;

struct TlsParams {
    std::string id;
    double omega_r = 0.0;  ///< level spacing, rad/s
    double coupling = 0.0; ///< S_j, rad/s
};

/// Bias dependence of the bare bus frequency; only spectroscopy uses it.
struct BiasModel {
    double omega_p0 = kTwoPi * 9.0e9; ///< frequency scale at zero bias, rad/s
    double critical_current = 1.0;    ///< bias is expressed in units of I0
};

struct DeviceConfig {
    double omega10 = 0.0;         ///< bus transition at operating bias, rad/s
    std::vector<TlsParams> tls;   ///< sorted by omega_r
    double readout_fidelity = 1.0;
    BiasModel bias;

    std::size_t num_tls() const noexcept { return tls.size(); }
    /// TLS j, 1-based.
    const TlsParams &tls_at(int j) const;
};

/// Checks the DeviceConfig invariants and throws ConfigError naming the
/// offending fields. Returns non-fatal warnings (weak-coupling violations).
/// `require_tls` enforces 1 <= N; physics routines accept N = 0.
std::vector<std::string> validate(const DeviceConfig &config,
                                  bool require_tls = true);

/// Sorts TLSs by level spacing, keeping ids attached.
void sort_tls(DeviceConfig &config);

/// Observed avoided-crossing gap (Hz) <-> coupling S (rad/s): S = pi * gap.
inline double coupling_from_splitting(double splitting_hz) {
    return std::numbers::pi * splitting_hz;
}
inline double splitting_from_coupling(double coupling) {
    return coupling / std::numbers::pi;
}

struct MicroscopicCoupling {
    double magnitude = 0.0; ///< |S|, rad/s
    int sign = 0;           ///< sign of (Icr - Icl); 0 when symmetric
};

/// S = ((Icr - Icl)/2) sqrt(hbar / (2 omega10 C)) converted from energy to
/// rad/s. Currents in A, omega10 in rad/s, capacitance in F.
MicroscopicCoupling coupling_from_microscopics(double icr, double icl,
                                               double omega10,
                                               double capacitance);

/// H = -(w10/2) Z_0 - sum_j [ (w_r^j/2) Z_j + S_j X_0 X_j ].
HermitianOperator full_hamiltonian(const DeviceConfig &config);

/// tau_j = pi / (2 S_j).
double swap_time(const DeviceConfig &config, int j);

/// Exchange map on (bus, TLS) in the local basis {|0g>, |1g>, |0e>, |1e>}
/// (bit 0 = bus): |1g> -> cos|1g> - i sin|0e>, |0e> -> cos|0e> - i sin|1g>,
/// |0g> and |1e> fixed. Equals exp(-i t (S/2)(XX + YY)).
Eigen::Matrix4cd exchange_gate(double coupling, double t);

/// In-place exchange on bus and `tls_qubit` by angle theta = S t.
void apply_exchange(StateVector &state, std::size_t tls_qubit, double theta);

/// Resonant window of length t between the bus and TLS j; other TLSs frozen.
StateVector resonant_evolution(StateVector state, int j, double t,
                               const DeviceConfig &config);

/// resonant_evolution at t = tau_j.
StateVector iswap(StateVector state, int j, const DeviceConfig &config);

enum class FrameReference {
    BusFrequency,    ///< every qubit rotates at omega10
    BareFrequencies, ///< bus at omega10, TLS k at its own omega_r^k
};

struct RotatingFrame {
    FrameReference reference = FrameReference::BusFrequency;
    /// Relabels |e_j> -> -|e_j> on the resonant TLS. The printed coupling
    /// -S X X reduces to -(S/2)(XX + YY), whose exchange carries +i sin; the
    /// exchange gate above carries -i sin. The two differ exactly by this
    /// basis sign, so the comparison is made in the relabeled basis.
    bool tls_sign_gauge = true;
};

enum class RwaProbe {
    /// Start from |1, g, ..., g> and compare final states.
    BusExcited,
    /// Process fidelity |tr(V^dag M)|^2 / 16 of the (bus, TLS j) block with
    /// spectators in |g>; M includes leakage out of that block as loss.
    Process,
};

/// 1 - fidelity between full-Hamiltonian evolution (moved to the rotating
/// frame) and the resonant exchange model. Requires omega10 == omega_r^j
/// to relative precision 1e-9.
double rwa_infidelity(const DeviceConfig &config, int j, double t,
                      RotatingFrame frame = {},
                      RwaProbe probe = RwaProbe::BusExcited);

/// Residual coupling of a detuned pair, Delta^2 / (4 delta_f). Both in Hz.
double dispersive_coupling(double splitting_hz, double detuning_hz);

} // namespace tlsent::device
