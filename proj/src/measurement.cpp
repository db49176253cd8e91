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

#include "tlsent/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "tlsent/error.hpp"
#include "tlsent/protocols.hpp"
#include "tlsent/rng.hpp"

namespace tlsent::measurement {

namespace {

const std::string kModule = "measurement";
constexpr double kBranchFloor = 1e-14;
constexpr double kBusGroundTolerance = 1e-9;

void check_bus_ground(const StateVector &state) {
    const double p = state.excited_probability(0);
    if (p > kBusGroundTolerance) {
        throw Error(kModule,
                    fmt::format("bus must be in |0> before a TLS transfer "
                                "(P(1) = {:.3g})",
                                p));
    }
}

// Register positions sorted by TLS index, the readout order.
std::vector<std::size_t> readout_order(std::span<const int> register_tls) {
    std::vector<std::size_t> order(register_tls.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return register_tls[a] < register_tls[b];
    });
    return order;
}

// Conditional-probability trie: level[L][prefix] is the weight of all
// outcomes whose first L reads (in readout order) equal `prefix`.
std::vector<std::vector<double>> prefix_weights(
    const StateVector &state, std::span<const int> register_tls,
    const std::vector<std::size_t> &order) {
    const std::size_t m = order.size();
    std::vector<std::vector<double>> level(m + 1);
    level[m].assign(std::size_t{1} << m, 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        std::size_t key = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (b & (std::uint64_t{1} << register_tls[order[i]])) {
                key |= std::size_t{1} << i;
            }
        }
        level[m][key] += std::norm(amps[b]);
    }
    for (std::size_t l = m; l-- > 0;) {
        level[l].assign(std::size_t{1} << l, 0.0);
        const std::size_t bit = std::size_t{1} << l;
        for (std::size_t p = 0; p < level[l].size(); ++p) {
            level[l][p] = level[l + 1][p] + level[l + 1][p | bit];
        }
    }
    return level;
}

} // namespace

ReadoutModel::ReadoutModel(double fidelity, std::uint64_t seed)
    : fidelity_(fidelity), engine_(seed) {
    if (!(fidelity > 0.5 && fidelity <= 1.0)) {
        throw Error(kModule,
                    fmt::format("readout fidelity {} outside (0.5, 1]", fidelity));
    }
}

std::pair<int, int> ReadoutModel::sample(double p1) {
    int t = uniform01(engine_) < p1 ? 1 : 0;
    if (t == 1 && p1 < kBranchFloor) {
        t = 0;
    } else if (t == 0 && 1.0 - p1 < kBranchFloor) {
        t = 1;
    }
    const int reported = uniform01(engine_) < 1.0 - fidelity_ ? 1 - t : t;
    return {t, reported};
}

BusOutcome measure_bus(StateVector &state, ReadoutModel &readout) {
    const auto [t, r] = readout.sample(state.excited_probability(0));
    auto amps = state.mutable_amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (static_cast<int>(i & 1U) != t) {
            amps[i] = 0.0;
        }
    }
    state.renormalize();
    return {r, t};
}

TlsOutcome read_tls(StateVector &state, int j, const DeviceConfig &config,
                    ReadoutModel &readout) {
    const double coupling = config.tls_at(j).coupling;
    check_bus_ground(state);
    device::apply_exchange(state, static_cast<std::size_t>(j),
                           coupling * device::swap_time(config, j));
    const BusOutcome bus = measure_bus(state, readout);
    return {bus.reported, bus.true_outcome, -0.5 * std::numbers::pi};
}

std::array<Complex, 4> basis_rotation(Direction basis) {
    constexpr double kPi = std::numbers::pi;
    double theta = 0.0;
    double phi = 0.0;
    switch (basis) {
    case Direction::Z:
        break;
    case Direction::X:
        theta = 0.5 * kPi;
        break;
    case Direction::Y:
        theta = 0.5 * kPi;
        phi = 0.5 * kPi;
        break;
    case Direction::ZpX:
        theta = 0.25 * kPi;
        break;
    case Direction::ZmX:
        theta = 0.25 * kPi;
        phi = kPi;
        break;
    case Direction::ZpY:
        theta = 0.25 * kPi;
        phi = 0.5 * kPi;
        break;
    case Direction::ZmY:
        theta = 0.25 * kPi;
        phi = -0.5 * kPi;
        break;
    case Direction::I:
        throw Error(kModule, "identity is not a measurement basis");
    }
    // Ry(-theta) Rz(-phi)
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex e0 = std::polar(1.0, 0.5 * phi);
    const Complex e1 = std::polar(1.0, -0.5 * phi);
    return {c * e0, s * e1, -s * e0, c * e1};
}

StateVector rotate_for_basis(StateVector state, std::size_t qubit,
                             Direction basis) {
    if (qubit >= state.num_qubits()) {
        throw Error(kModule, fmt::format("qubit {} out of range", qubit));
    }
    state.apply_single(basis_rotation(basis), qubit);
    return state;
}

std::string shots_csv(const ShotRecord &record) {
    const std::size_t m = record.register_tls.size();
    std::string out;
    for (std::size_t i = 0; i < m; ++i) {
        out += fmt::format("{}{}@{}", i ? "," : "",
                           witness::to_string(record.setting.bases[i]),
                           record.register_tls[i]);
    }
    out += '\n';
    for (std::size_t s = 0; s < record.shots; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            out += fmt::format("{}{}", i ? "," : "",
                               static_cast<int>(record.outcomes[s * m + i]));
        }
        out += '\n';
    }
    return out;
}

ShotRecord sample_setting(const Preparation &prep,
                          std::span<const int> register_tls,
                          const MeasurementSetting &setting,
                          std::size_t setting_index,
                          const DeviceConfig &config,
                          const SamplingOptions &options) {
    const std::size_t m = register_tls.size();
    if (options.shots_per_setting == 0) {
        throw Error(kModule, "shots per setting must be positive");
    }
    if (setting.bases.size() != m) {
        throw Error(kModule, "setting does not match the register size");
    }
    StateVector state = prep();
    if (state.num_qubits() != config.num_tls() + 1) {
        throw Error(kModule, "prepared state does not match the device");
    }
    for (std::size_t i = 0; i < m; ++i) {
        config.tls_at(register_tls[i]);
        state.apply_single(basis_rotation(setting.bases[i]),
                           static_cast<std::size_t>(register_tls[i]));
    }
    check_bus_ground(state);

    const auto order = readout_order(register_tls);
    std::vector<std::vector<double>> weights;
    if (options.method == SamplingMethod::Distribution) {
        weights = prefix_weights(state, register_tls, order);
    }

    ShotRecord record{setting, {register_tls.begin(), register_tls.end()},
                      options.shots_per_setting, {}};
    record.outcomes.resize(options.shots_per_setting * m);
    const std::size_t batches =
        (options.shots_per_setting + kShotBatch - 1) / kShotBatch;
    for (std::size_t b = 0; b < batches; ++b) {
        ReadoutModel readout(
            options.readout_fidelity,
            derive_stream_seed(options.seed,
                               fmt::format("setting{}/batch{}", setting_index, b)));
        const std::size_t first = b * kShotBatch;
        const std::size_t last =
            std::min(first + kShotBatch, options.shots_per_setting);
        for (std::size_t shot = first; shot < last; ++shot) {
            std::int8_t *row = record.outcomes.data() + shot * m;
            if (options.method == SamplingMethod::Distribution) {
                std::size_t prefix = 0;
                for (std::size_t l = 0; l < m; ++l) {
                    const double total = weights[l][prefix];
                    const double p1 =
                        total > 0.0
                            ? weights[l + 1][prefix | (std::size_t{1} << l)] / total
                            : 0.0;
                    const auto [t, r] = readout.sample(p1);
                    prefix |= static_cast<std::size_t>(t) << l;
                    row[order[l]] = static_cast<std::int8_t>(1 - 2 * r);
                }
            } else {
                StateVector copy = state;
                for (std::size_t l = 0; l < m; ++l) {
                    const auto out =
                        read_tls(copy, register_tls[order[l]], config, readout);
                    protocol::reset_bus(copy);
                    row[order[l]] = static_cast<std::int8_t>(1 - 2 * out.reported);
                }
            }
        }
    }
    return record;
}

WitnessEstimate estimate_witness_sampled(
    const Preparation &prep, std::span<const int> register_tls,
    const WitnessOperator &w, const std::vector<MeasurementSetting> &settings,
    const DeviceConfig &config, const SamplingOptions &options) {
    const std::size_t m = register_tls.size();
    if (w.num_qubits() != m) {
        throw Error(kModule, "witness size does not match the register");
    }
    if (options.shots_per_setting == 0) {
        throw Error(kModule, "shots per setting must be positive");
    }
    const auto &terms = w.terms();
    std::vector<int> covered(terms.size(), 0);
    WitnessEstimate est;
    est.settings = settings.size();
    est.shots_per_setting = options.shots_per_setting;
    est.readout_contrast = 2.0 * options.readout_fidelity - 1.0;
    // Per-shot value of each setting as a function of the outcome bits.
    std::vector<std::vector<double>> tables;
    std::vector<std::vector<double>> mitigated_tables;
    for (const auto &setting : settings) {
        std::vector<double> table(std::size_t{1} << m, 0.0);
        std::vector<double> mitigated(table.size(), 0.0);
        for (std::size_t idx : setting.covered_terms) {
            const auto &t = terms.at(idx);
            std::size_t support = 0;
            for (std::size_t q = 0; q < m; ++q) {
                if (t.factors[q] == Direction::I) {
                    continue;
                }
                if (t.factors[q] != setting.bases[q]) {
                    throw Error(kModule,
                                fmt::format("term {} is not measurable in "
                                            "setting '{}'",
                                            idx, setting.descriptor()));
                }
                support |= std::size_t{1} << q;
            }
            const double scale = std::pow(
                est.readout_contrast, static_cast<double>(std::popcount(support)));
            for (std::size_t bits = 0; bits < table.size(); ++bits) {
                const bool odd = std::popcount(bits & support) % 2 != 0;
                table[bits] += odd ? -t.coefficient : t.coefficient;
                mitigated[bits] +=
                    (odd ? -t.coefficient : t.coefficient) / scale;
            }
            ++covered[idx];
        }
        tables.push_back(std::move(table));
        mitigated_tables.push_back(std::move(mitigated));
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (covered[i] != 1) {
            throw Error(kModule,
                        fmt::format("witness term {} covered by {} settings "
                                    "(expected exactly one)",
                                    i, covered[i]));
        }
    }
    auto mean_and_variance = [](const std::vector<double> &values) {
        const double n = static_cast<double>(values.size());
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
        }
        return std::pair{mean, values.size() > 1 ? ss / (n - 1.0) / n : 0.0};
    };
    double variance = 0.0;
    double mitigated_variance = 0.0;
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const auto &table = tables[s];
        const auto &mtable = mitigated_tables[s];
        ShotRecord record =
            sample_setting(prep, register_tls, settings[s], s, config, options);
        const std::size_t shots = record.shots;
        std::vector<double> values(shots);
        std::vector<double> mvalues(shots);
        for (std::size_t shot = 0; shot < shots; ++shot) {
            std::size_t bits = 0;
            for (std::size_t q = 0; q < m; ++q) {
                if (record.outcomes[shot * m + q] < 0) {
                    bits |= std::size_t{1} << q;
                }
            }
            values[shot] = table[bits];
            mvalues[shot] = mtable[bits];
        }
        const auto [mean, var] = mean_and_variance(values);
        const auto [mmean, mvar] = mean_and_variance(mvalues);
        est.estimate += mean;
        variance += var;
        est.mitigated_estimate += mmean;
        mitigated_variance += mvar;
        if (options.keep_records) {
            est.records.push_back(std::move(record));
        }
    }
    est.standard_error = std::sqrt(variance);
    est.mitigated_standard_error = std::sqrt(mitigated_variance);
    return est;
}

} // namespace tlsent::measurement
