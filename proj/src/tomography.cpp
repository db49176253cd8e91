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

#include "tlsent/tomography.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tlsent/error.hpp"

namespace tlsent::measurement {

namespace {

const std::string kModule = "measurement";
constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Y,
                                          Pauli::Z};
constexpr std::array<Direction, 3> kBases = {Direction::X, Direction::Y,
                                             Direction::Z};

} // namespace

Matrix reconstruct_two_qubit(const std::array<double, 16> &expectations) {
    Matrix rho = Matrix::Zero(4, 4);
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const PauliString p({kPaulis[a], kPaulis[b]});
            rho += 0.25 * expectations[4 * a + b] * pauli_matrix(p);
        }
    }
    return rho;
}

TomographyResult tomography_two_qubit(const Preparation &prep, int j, int k,
                                      const StateVector &target,
                                      const DeviceConfig &config,
                                      const TomographyOptions &options) {
    if (j == k) {
        throw Error(kModule, fmt::format("tomography needs two distinct TLSs, "
                                         "got {} twice",
                                         j));
    }
    config.tls_at(j);
    config.tls_at(k);
    if (target.num_qubits() != 2) {
        throw Error(kModule, "tomography target must be a two-qubit state");
    }
    std::array<double, 16> e{};
    e[0] = 1.0;
    std::vector<ShotRecord> records;
    if (options.exact) {
        const std::array<std::size_t, 2> keep = {static_cast<std::size_t>(j),
                                                 static_cast<std::size_t>(k)};
        const DensityMatrix reduced = partial_trace(prep(), keep);
        const double contrast = 2.0 * options.readout_fidelity - 1.0;
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const PauliString p({kPaulis[a], kPaulis[b]});
                e[4 * a + b] = expectation(reduced, p) *
                               std::pow(contrast, static_cast<double>(p.weight()));
            }
        }
    } else {
        const std::array<int, 2> reg = {j, k};
        SamplingOptions so{options.shots_per_setting, options.readout_fidelity,
                           options.seed, false, SamplingMethod::Distribution};
        std::array<double, 4> first{};  // sums of <s_a (x) I> by a
        std::array<double, 4> second{}; // sums of <I (x) s_b> by b
        std::size_t s = 0;
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b, ++s) {
                MeasurementSetting setting{{kBases[a], kBases[b]}, {}};
                ShotRecord rec = sample_setting(prep, reg, setting, s, config, so);
                double m0 = 0.0, m1 = 0.0, m01 = 0.0;
                for (std::size_t shot = 0; shot < rec.shots; ++shot) {
                    const double x = rec.outcomes[2 * shot];
                    const double y = rec.outcomes[2 * shot + 1];
                    m0 += x;
                    m1 += y;
                    m01 += x * y;
                }
                const double n = static_cast<double>(rec.shots);
                e[4 * (a + 1) + (b + 1)] = m01 / n;
                first[a + 1] += m0 / n;
                second[b + 1] += m1 / n;
                if (options.keep_records) {
                    records.push_back(std::move(rec));
                }
            }
        }
        for (std::size_t a = 1; a < 4; ++a) {
            e[4 * a] = first[a] / 3.0;
            e[a] = second[a] / 3.0;
        }
    }
    DensityMatrix rho(reconstruct_two_qubit(e), 1e-9);
    const double fid = fidelity(rho, target);
    const double min_eig = rho.eigenvalues()(0);
    return TomographyResult{std::move(rho), e, 9, fid, min_eig, min_eig >= -1e-6,
                            std::move(records)};
}

} // namespace tlsent::measurement
