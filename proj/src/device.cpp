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

#include "tlsent/device.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "tlsent/error.hpp"

namespace tlsent::device {

namespace {

const std::string kModule = "device-model";

std::string tls_name(const DeviceConfig &config, std::size_t idx) {
    const auto &id = config.tls[idx].id;
    return id.empty() ? fmt::format("tls[{}]", idx) : id;
}

void check_tls_index(const DeviceConfig &config, int j) {
    if (j < 1 || static_cast<std::size_t>(j) > config.num_tls()) {
        throw Error(kModule, fmt::format("TLS index {} out of range [1, {}]", j,
                                         config.num_tls()));
    }
}

void check_register(const StateVector &state, const DeviceConfig &config) {
    if (state.num_qubits() < config.num_tls() + 1) {
        throw Error(kModule,
                    fmt::format("state has {} qubits but the device needs {}",
                                state.num_qubits(), config.num_tls() + 1));
    }
}

// Diagonal of H0 = -sum_q (w_q / 2) Z_q at basis index b.
double frame_energy(std::uint64_t b, std::span<const double> omegas) {
    double e = 0.0;
    for (std::size_t q = 0; q < omegas.size(); ++q) {
        const double z = ((b >> q) & 1U) ? -1.0 : 1.0;
        e -= 0.5 * omegas[q] * z;
    }
    return e;
}

} // namespace

const TlsParams &DeviceConfig::tls_at(int j) const {
    check_tls_index(*this, j);
    return tls[static_cast<std::size_t>(j - 1)];
}

std::vector<std::string> validate(const DeviceConfig &config,
                                  bool require_tls) {
    std::vector<std::string> warnings;
    if (!(config.omega10 > 0.0)) {
        throw ConfigError("device.omega10 must be positive", {"device.omega10"});
    }
    if (!(config.readout_fidelity > 0.5 && config.readout_fidelity <= 1.0)) {
        throw ConfigError(
            fmt::format("device.readout_fidelity {} outside (0.5, 1]",
                        config.readout_fidelity),
            {"device.readout_fidelity"});
    }
    if (!(config.bias.omega_p0 > 0.0) || !(config.bias.critical_current > 0.0)) {
        throw ConfigError("bias model scales must be positive",
                          {"device.plasma_ghz"});
    }
    if (require_tls && config.tls.empty()) {
        throw ConfigError("device has no TLSs (need 1 to 10)", {"tls"});
    }
    if (config.tls.size() > kMaxTls) {
        throw ConfigError(fmt::format("device has {} TLSs (at most {})",
                                      config.tls.size(), kMaxTls),
                          {"tls"});
    }
    for (std::size_t i = 0; i < config.tls.size(); ++i) {
        const auto &t = config.tls[i];
        const std::string name = tls_name(config, i);
        if (!(t.omega_r > 0.0)) {
            throw ConfigError(name + ": level spacing must be positive", {name});
        }
        if (!(t.coupling > 0.0)) {
            throw ConfigError(name + ": coupling must be positive", {name});
        }
        if (t.coupling / t.omega_r > 0.05) {
            warnings.push_back(
                fmt::format("{}: coupling/omega_r = {:.4g} exceeds 0.05; the "
                            "exchange model is a poor approximation",
                            name, t.coupling / t.omega_r));
        }
    }
    for (std::size_t i = 0; i < config.tls.size(); ++i) {
        for (std::size_t k = i + 1; k < config.tls.size(); ++k) {
            const auto &a = config.tls[i];
            const auto &b = config.tls[k];
            if (std::abs(a.omega_r - b.omega_r) <= a.coupling + b.coupling) {
                const std::string na = tls_name(config, i);
                const std::string nb = tls_name(config, k);
                throw ConfigError(
                    fmt::format("TLSs {} and {} overlap: |delta omega| = {:.6g} "
                                "rad/s <= S_a + S_b = {:.6g} rad/s",
                                na, nb, std::abs(a.omega_r - b.omega_r),
                                a.coupling + b.coupling),
                    {na, nb});
            }
        }
    }
    return warnings;
}

void sort_tls(DeviceConfig &config) {
    std::stable_sort(config.tls.begin(), config.tls.end(),
                     [](const TlsParams &a, const TlsParams &b) {
                         return a.omega_r < b.omega_r;
                     });
}

MicroscopicCoupling coupling_from_microscopics(double icr, double icl,
                                               double omega10,
                                               double capacitance) {
    if (!(omega10 > 0.0)) {
        throw Error(kModule, "omega10 must be positive");
    }
    if (!(capacitance > 0.0)) {
        throw Error(kModule, "capacitance must be positive");
    }
    const double energy =
        0.5 * (icr - icl) * std::sqrt(kHbar / (2.0 * omega10 * capacitance));
    const double s = energy / kHbar;
    return {std::abs(s), (s > 0.0) - (s < 0.0)};
}

HermitianOperator full_hamiltonian(const DeviceConfig &config) {
    validate(config, false);
    const std::size_t n = config.num_tls() + 1;
    PauliSum h(n);
    h.add(PauliString::single(n, 0, Pauli::Z), -0.5 * config.omega10);
    for (std::size_t j = 1; j < n; ++j) {
        const auto &t = config.tls[j - 1];
        h.add(PauliString::single(n, j, Pauli::Z), -0.5 * t.omega_r);
        PauliString xx(n);
        xx.set(0, Pauli::X);
        xx.set(j, Pauli::X);
        h.add(xx, -t.coupling);
    }
    return HermitianOperator::from_pauli_sum(h);
}

double swap_time(const DeviceConfig &config, int j) {
    return std::numbers::pi / (2.0 * config.tls_at(j).coupling);
}

Eigen::Matrix4cd exchange_gate(double coupling, double t) {
    const double c = std::cos(coupling * t);
    const Complex mis{0.0, -std::sin(coupling * t)};
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(3, 3) = 1.0;
    u(1, 1) = c;
    u(2, 2) = c;
    u(2, 1) = mis;
    u(1, 2) = mis;
    return u;
}

void apply_exchange(StateVector &state, std::size_t tls_qubit, double theta) {
    const double c = std::cos(theta);
    const Complex mis{0.0, -std::sin(theta)};
    const std::uint64_t bus = 1;
    const std::uint64_t tls = std::uint64_t{1} << tls_qubit;
    auto amps = state.mutable_amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & (bus | tls)) {
            continue;
        }
        Complex &a1g = amps[i | bus];
        Complex &a0e = amps[i | tls];
        const Complex x = a1g;
        const Complex y = a0e;
        a1g = c * x + mis * y;
        a0e = mis * x + c * y;
    }
}

StateVector resonant_evolution(StateVector state, int j, double t,
                               const DeviceConfig &config) {
    check_tls_index(config, j);
    check_register(state, config);
    if (t < 0.0) {
        throw Error(kModule, "resonant window duration must be non-negative");
    }
    apply_exchange(state, static_cast<std::size_t>(j),
                   config.tls_at(j).coupling * t);
    return state;
}

StateVector iswap(StateVector state, int j, const DeviceConfig &config) {
    return resonant_evolution(std::move(state), j, swap_time(config, j),
                              config);
}

double rwa_infidelity(const DeviceConfig &config, int j, double t,
                      RotatingFrame frame, RwaProbe probe) {
    check_tls_index(config, j);
    const auto &target = config.tls_at(j);
    if (std::abs(config.omega10 - target.omega_r) > 1e-9 * config.omega10) {
        throw Error(kModule,
                    fmt::format("rwa_infidelity is defined on resonance; "
                                "omega10 = {:.9g} but omega_r^{} = {:.9g}",
                                config.omega10, j, target.omega_r));
    }
    const std::size_t n = config.num_tls() + 1;
    std::vector<double> omegas(n, config.omega10);
    if (frame.reference == FrameReference::BareFrequencies) {
        for (std::size_t k = 1; k < n; ++k) {
            omegas[k] = config.tls[k - 1].omega_r;
        }
    }
    const std::uint64_t gauge_bit = std::uint64_t{1} << j;

    const Propagator lab(full_hamiltonian(config));
    auto to_frame = [&](StateVector s) {
        auto amps = s.mutable_amplitudes();
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            amps[b] *= std::polar(1.0, frame_energy(b, omegas) * t);
            if (frame.tls_sign_gauge && (b & gauge_bit)) {
                amps[b] = -amps[b];
            }
        }
        return s;
    };

    // Local basis of the (bus, TLS j) block with spectators in |g>.
    const std::array<std::uint64_t, 4> block = {0, 1, gauge_bit,
                                                1 | gauge_bit};
    auto basis = [&](std::uint64_t idx) {
        std::vector<Complex> amps(std::size_t{1} << n);
        amps[idx] = 1.0;
        return StateVector(n, std::move(amps));
    };

    if (probe == RwaProbe::BusExcited) {
        const StateVector start = basis(1);
        const StateVector full = to_frame(lab.evolve(start, t));
        const StateVector model = resonant_evolution(start, j, t, config);
        return std::max(0.0, 1.0 - fidelity(full, model));
    }

    const Eigen::Matrix4cd v = exchange_gate(target.coupling, t);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    for (int col = 0; col < 4; ++col) {
        const StateVector out = to_frame(lab.evolve(basis(block[col]), t));
        // The relabeling acts on inputs as well as outputs.
        const double sign =
            frame.tls_sign_gauge && (block[col] & gauge_bit) ? -1.0 : 1.0;
        for (int row = 0; row < 4; ++row) {
            m(row, col) = sign * out.amplitude(block[row]);
        }
    }
    const double f = std::norm((v.adjoint() * m).trace()) / 16.0;
    return std::max(0.0, 1.0 - f);
}

double dispersive_coupling(double splitting_hz, double detuning_hz) {
    if (detuning_hz == 0.0) {
        throw Error(kModule, "dispersive coupling needs a non-zero detuning");
    }
    return splitting_hz * splitting_hz / (4.0 * detuning_hz);
}

} // namespace tlsent::device
