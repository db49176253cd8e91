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

#include <array>

#include "tlsent/measurement.hpp"
#include "tlsent/operators.hpp"

namespace tlsent::measurement {

struct TomographyOptions {
    std::size_t shots_per_setting = 0;
    double readout_fidelity = 1.0;
    std::uint64_t seed = 0;
    /// Infinite-shot limit: expectations are computed from the state and
    /// scaled by (2F - 1) per measured qubit.
    bool exact = false;
    bool keep_records = false;
};

struct TomographyResult {
    DensityMatrix rho;
    /// <s_a (x) s_b> at index 4a + b, with a, b over I, X, Y, Z; a acts on
    /// the first TLS of the pair.
    std::array<double, 16> expectations{};
    std::size_t settings_used = 0;
    double fidelity_vs_target = 0.0;
    double min_eigenvalue = 0.0;
    /// min_eigenvalue >= -1e-6; positivity is never enforced.
    bool physical = false;
    std::vector<ShotRecord> records;
};

/// Linear-inversion tomography of TLSs (j, k) from the nine settings
/// {x, y, z}^2. Single-qubit expectations are averaged over the three
/// settings that contain them. `target` is a two-qubit state with TLS j on
/// qubit 0.
TomographyResult tomography_two_qubit(const Preparation &prep, int j, int k,
                                      const StateVector &target,
                                      const DeviceConfig &config,
                                      const TomographyOptions &options);

/// rho = (1/4) sum_ab e[4a + b] s_a (x) s_b.
Matrix reconstruct_two_qubit(const std::array<double, 16> &expectations);

} // namespace tlsent::measurement
