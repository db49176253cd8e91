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
 * Bus readout with finite fidelity, TLS readout through the bus, and
 * shot-sampled witness estimation.
 *
 * Outcome 0 is |0>/|g> and reports as +1; outcome 1 reports as -1.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tlsent/device.hpp"
#include "tlsent/state_vector.hpp"
#include "tlsent/witness.hpp"

namespace tlsent::measurement {

using device::DeviceConfig;
using witness::Direction;
using witness::MeasurementSetting;
using witness::WitnessOperator;

/// Symmetric readout error: the reported bit is flipped with probability
/// 1 - F. Owns its random stream.
class ReadoutModel {
  public:
    ReadoutModel(double fidelity, std::uint64_t seed);

    double fidelity() const noexcept { return fidelity_; }
    /// 2F - 1, the factor multiplying every single-qubit +-1 expectation.
    double contrast() const noexcept { return 2.0 * fidelity_ - 1.0; }

    /// Draws the true outcome given P(1), then the reported one.
    /// Branches below 1e-14 are never selected.
    std::pair<int, int> sample(double p1);

  private:
    double fidelity_;
    std::mt19937_64 engine_;
};

struct BusOutcome {
    int reported = 0;
    int true_outcome = 0;
};

/// Samples the bus, collapses `state` onto the true outcome and
/// renormalizes.
BusOutcome measure_bus(StateVector &state, ReadoutModel &readout);

struct TlsOutcome {
    int reported = 0;
    int true_outcome = 0;
    /// The transfer leaves an i-phase on the excited branch, equivalent to
    /// a known Z rotation by this angle on the measured TLS.
    double correctable_z_angle = 0.0;
};

/// iSWAP of TLS j into the bus, then measure_bus. The bus must be in |0>
/// to within 1e-9 beforehand. The bus is left in the measured state.
TlsOutcome read_tls(StateVector &state, int j, const DeviceConfig &config,
                    ReadoutModel &readout);

/// Unitary taking the +1 eigenvector of `basis` to |0>. Throws for I.
std::array<Complex, 4> basis_rotation(Direction basis);

StateVector rotate_for_basis(StateVector state, std::size_t qubit,
                             Direction basis);

/// Reported +-1 outcomes of one setting, shot-major: outcomes[shot * m + i]
/// is register qubit i.
struct ShotRecord {
    MeasurementSetting setting;
    std::vector<int> register_tls;
    std::size_t shots = 0;
    std::vector<std::int8_t> outcomes;
};

/// Header of basis@tls columns, then one row of +-1 values per shot.
std::string shots_csv(const ShotRecord &record);

/// Full register state (bus + TLSs); called once per setting.
using Preparation = std::function<StateVector()>;

enum class SamplingMethod {
    /// Born distribution of the rotated state, sampled qubit by qubit in
    /// the same order and with the same random draws as PerShot.
    Distribution,
    /// Each shot copies the state and runs read_tls / bus reset literally.
    PerShot,
};

struct SamplingOptions {
    std::size_t shots_per_setting = 0;
    double readout_fidelity = 1.0;
    std::uint64_t seed = 0;
    bool keep_records = false;
    SamplingMethod method = SamplingMethod::Distribution;
};

/// Shots are drawn in batches of this many, each from its own stream
/// derived from (seed, setting, batch).
inline constexpr std::size_t kShotBatch = 8192;

/// Rotates register qubit i of a fresh preparation into settings.bases[i]
/// and reads the register TLSs in ascending index order with a bus reset
/// after each read.
ShotRecord sample_setting(const Preparation &prep,
                          std::span<const int> register_tls,
                          const MeasurementSetting &setting,
                          std::size_t setting_index,
                          const DeviceConfig &config,
                          const SamplingOptions &options);

struct WitnessEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t settings = 0;
    std::size_t shots_per_setting = 0;
    /// (2F - 1); no mitigation is applied to `estimate`.
    double readout_contrast = 1.0;
    /// Same shots with each term divided by contrast^weight.
    double mitigated_estimate = 0.0;
    double mitigated_standard_error = 0.0;
    std::vector<ShotRecord> records; ///< filled when keep_records
};

/// Per shot, each setting yields sum_t c_t prod_{q in t} s_q over its
/// covered terms; the estimate is the sum of the per-setting means and the
/// variance the sum of per-setting sample variances over shots.
WitnessEstimate estimate_witness_sampled(
    const Preparation &prep, std::span<const int> register_tls,
    const WitnessOperator &w, const std::vector<MeasurementSetting> &settings,
    const DeviceConfig &config, const SamplingOptions &options);

} // namespace tlsent::measurement
