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
 * Synthetic bus spectroscopy and avoided-crossing extraction.
 *
 * Frequencies here are ordinary frequencies in Hz; bias is I/I0.
 */

#pragma once

#include <string>
#include <vector>

#include "tlsent/device.hpp"

namespace tlsent::device {

struct SpectroscopyScan {
    std::vector<double> bias;
    /// Transition frequencies per bias point, ascending, Hz.
    std::vector<std::vector<double>> branches;
};

struct AvoidedCrossing {
    double center_bias = 0.0;
    double splitting_hz = 0.0;
    double tls_frequency_hz = 0.0;
};

struct ExtractionResult {
    std::vector<AvoidedCrossing> crossings; ///< ascending in frequency
    std::vector<std::string> warnings;
};

/// Detection band for extracted splittings, Hz.
inline constexpr double kMinSplittingHz = 5.0e6;
inline constexpr double kMaxSplittingHz = 500.0e6;

/// f_q(x) = (omega_p0 / 2 pi) (1 - x^2)^{1/4}.
double bare_bus_frequency_hz(const BiasModel &model, double bias);

/// Inverse of bare_bus_frequency_hz on (0, 1).
double bias_for_frequency(const BiasModel &model, double frequency_hz);

/// n points from lo to hi inclusive.
std::vector<double> uniform_bias_grid(double lo, double hi, std::size_t n);

/// At each bias the nearest TLS within four splittings of the bare curve
/// contributes the two branches of its 2x2 crossing; elsewhere only the
/// bare curve is reported. Bias values must lie in (0, 0.999).
SpectroscopyScan synth_spectroscopy(const DeviceConfig &config,
                                    const std::vector<double> &bias_grid);

/// Locates local minima of the inter-branch gap. Each crossing is refined
/// from the three samples around the minimum: for a single 2x2 crossing
/// gap^2 = (s - 2 f_r)^2 + splitting^2 with s the branch sum, so a parabola
/// in s gives the splitting and f_r directly. Minima without a neighbor on
/// both sides, fits that do not look like a single crossing, and splittings
/// outside the detection band produce warnings.
ExtractionResult extract_tls_parameters(const SpectroscopyScan &scan);

/// CSV with header bias,branch_index,frequency_hz.
std::string scan_csv(const SpectroscopyScan &scan);

} // namespace tlsent::device
