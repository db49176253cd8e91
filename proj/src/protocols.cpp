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

#include "tlsent/protocols.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "tlsent/error.hpp"
#include "tlsent/targets.hpp"

namespace tlsent::protocol {

namespace {

const std::string kModule = "protocols";
constexpr double kPi = std::numbers::pi;
constexpr double kPurityTolerance = 1e-9;

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

// Reduced 2x2 density matrix of the bus: rho(a, b).
std::array<Complex, 4> bus_density(const StateVector &state) {
    std::array<Complex, 4> rho{};
    const auto amps = state.amplitudes();
    for (std::uint64_t r = 0; r < amps.size(); r += 2) {
        const Complex a0 = amps[r];
        const Complex a1 = amps[r + 1];
        rho[0] += a0 * std::conj(a0);
        rho[1] += a0 * std::conj(a1);
        rho[2] += a1 * std::conj(a0);
        rho[3] += a1 * std::conj(a1);
    }
    return rho;
}

double bus_purity(const std::array<Complex, 4> &rho) {
    return std::norm(rho[0]) + std::norm(rho[1]) + std::norm(rho[2]) +
           std::norm(rho[3]);
}

std::vector<double> couplings_for(const DeviceConfig &config,
                                  std::size_t n) {
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) {
        s[j] = config.tls_at(static_cast<int>(j + 1)).coupling;
    }
    return s;
}

void check_register_size(const DeviceConfig &config, std::size_t n,
                         std::size_t minimum) {
    if (n < minimum || n > config.num_tls()) {
        throw Error(kModule,
                    fmt::format("register size {} outside {}..{} configured TLSs",
                                n, minimum, config.num_tls()));
    }
}

StateVector ground_register(const DeviceConfig &config) {
    const std::size_t n = config.num_tls() + 1;
    std::vector<Complex> amps(std::size_t{1} << n);
    amps[0] = 1.0;
    return StateVector(n, std::move(amps));
}

ProtocolReport score(StateVector final_state, const StateVector &target,
                     std::vector<int> register_tls, PulseSchedule schedule,
                     const DeviceConfig &config) {
    ProtocolReport report{std::move(final_state), 0.0, false, 0.0, {}, {}, {}};
    report.target_fidelity = std::clamp(
        fidelity(report.final_state,
                 embed_register(target, register_tls, config.num_tls())),
        0.0, 1.0);
    const auto rho = bus_density(report.final_state);
    report.bus_excited_population = rho[3].real();
    report.bus_disentangled = bus_purity(rho) > 1.0 - kPurityTolerance &&
                              rho[0].real() > 1.0 - kPurityTolerance;
    for (int j : register_tls) {
        report.amplitude_profile.push_back(std::sqrt(
            report.final_state.excited_probability(static_cast<std::size_t>(j))));
    }
    report.register_tls = std::move(register_tls);
    report.schedule = std::move(schedule);
    return report;
}

} // namespace

const char *to_string(WMode mode) {
    return mode == WMode::General ? "general" : "paper-n3";
}

const char *to_string(BusInit init) {
    return init == BusInit::Ground ? "ground" : "plus";
}

void reset_bus(StateVector &state) {
    const auto rho = bus_density(state);
    const double purity = bus_purity(rho);
    if (purity <= 1.0 - kPurityTolerance) {
        throw Error(kModule,
                    fmt::format("bus reset while entangled (reduced purity "
                                "{:.12f})",
                                purity));
    }
    // Bus state from the dominant column; its phase is fixed so that
    // component is real and positive.
    const int c = rho[3].real() > rho[0].real() ? 1 : 0;
    const double scale = 1.0 / std::sqrt(rho[3 * c].real());
    const Complex phi0 = rho[c] * scale;
    const Complex phi1 = rho[2 + c] * scale;
    auto amps = state.mutable_amplitudes();
    for (std::uint64_t r = 0; r < amps.size(); r += 2) {
        amps[r] = std::conj(phi0) * amps[r] + std::conj(phi1) * amps[r + 1];
        amps[r + 1] = 0.0;
    }
    state.renormalize();
}

void rotate_bus(StateVector &state, Axis axis, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    std::array<Complex, 4> m{};
    switch (axis) {
    case Axis::X:
        m = {c, Complex{0.0, -s}, Complex{0.0, -s}, c};
        break;
    case Axis::Y:
        m = {c, -s, s, c};
        break;
    case Axis::Z:
        m = {std::polar(1.0, -0.5 * angle), 0.0, 0.0,
             std::polar(1.0, 0.5 * angle)};
        break;
    }
    state.apply_single(m, 0);
}

void excite_bus(StateVector &state) {
    state.apply_single({0.0, 1.0, 1.0, 0.0}, 0);
}

StateVector execute(const PulseSchedule &schedule, StateVector state,
                    const DeviceConfig &config, const MeasureHook &hook) {
    validate(schedule, config.num_tls(), static_cast<bool>(hook));
    if (state.num_qubits() != config.num_tls() + 1) {
        throw Error(kModule,
                    fmt::format("state has {} qubits, device needs {}",
                                state.num_qubits(), config.num_tls() + 1));
    }
    for (const auto &step : schedule.steps) {
        std::visit(Overloaded{
                       [&](const ResonantWindow &w) {
                           device::apply_exchange(
                               state, static_cast<std::size_t>(w.tls),
                               config.tls_at(w.tls).coupling * w.duration);
                       },
                       [&](const BusRotation &r) {
                           rotate_bus(state, r.axis, r.angle);
                       },
                       [&](const BusReset &) { reset_bus(state); },
                       [&](const BusExcite &) { excite_bus(state); },
                       [&](const Measure &m) { hook(state, m); },
                   },
                   step);
    }
    return state;
}

PulseSchedule initialization_schedule(const DeviceConfig &config) {
    PulseSchedule s;
    for (std::size_t j = 1; j <= config.num_tls(); ++j) {
        const int tls = static_cast<int>(j);
        s.steps.emplace_back(ResonantWindow{tls, device::swap_time(config, tls)});
        s.steps.emplace_back(BusReset{});
    }
    s.preparation_steps = s.steps.size();
    return s;
}

StateVector initialize_register(StateVector state, const DeviceConfig &config) {
    if (state.excited_probability(0) > kPurityTolerance) {
        throw Error(kModule, "register initialization expects the bus in |0>");
    }
    return execute(initialization_schedule(config), std::move(state), config);
}

std::vector<double> w_state_times(std::span<const double> couplings) {
    const std::size_t n = couplings.size();
    if (n == 0) {
        throw Error(kModule, "W state needs at least one TLS");
    }
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(couplings[j] > 0.0)) {
            throw Error(kModule, fmt::format("coupling {} is not positive", j + 1));
        }
        // j is 0-based here, so N + 1 - (j + 1) = N - j.
        t[j] = std::asin(1.0 / std::sqrt(static_cast<double>(n - j))) /
               couplings[j];
    }
    t[n - 1] = kPi / (2.0 * couplings[n - 1]);
    return t;
}

std::vector<double> w_state_times_paper_n3(std::span<const double> couplings) {
    if (couplings.size() != 3) {
        throw Error(kModule, "paper-n3 timing is defined for three TLSs only");
    }
    for (double s : couplings) {
        if (!(s > 0.0)) {
            throw Error(kModule, "couplings must be positive");
        }
    }
    return {kPi / (6.0 * couplings[0]), kPi / (4.0 * couplings[1]),
            kPi / (4.0 * couplings[2])};
}

std::vector<double> w_amplitude_products(std::span<const double> couplings,
                                         std::span<const double> times) {
    if (couplings.size() != times.size()) {
        throw Error(kModule, "coupling and time lists differ in length");
    }
    std::vector<double> out;
    double carried = 1.0;
    for (std::size_t l = 0; l < couplings.size(); ++l) {
        const double theta = couplings[l] * times[l];
        out.push_back(std::abs(carried * std::sin(theta)));
        carried *= std::cos(theta);
    }
    out.push_back(std::abs(carried));
    return out;
}

PulseSchedule w_schedule(const DeviceConfig &config, std::size_t n,
                         WMode mode) {
    check_register_size(config, n, 1);
    const auto s = couplings_for(config, n);
    const auto t = mode == WMode::General ? w_state_times(s)
                                          : w_state_times_paper_n3(s);
    PulseSchedule schedule;
    schedule.steps.emplace_back(BusExcite{});
    for (std::size_t j = 0; j < n; ++j) {
        schedule.steps.emplace_back(ResonantWindow{static_cast<int>(j + 1), t[j]});
    }
    return schedule;
}

ProtocolReport run_w_protocol(const DeviceConfig &config, std::size_t n,
                              WMode mode) {
    auto schedule = w_schedule(config, n, mode);
    auto final_state = execute(schedule, ground_register(config), config);
    return score(std::move(final_state), w_state(n), first_tls(n),
                 std::move(schedule), config);
}

PulseSchedule bell_schedule(const DeviceConfig &config, int j, int k) {
    if (j == k) {
        throw Error(kModule, fmt::format("Bell pair needs two distinct TLSs, "
                                         "got {} twice",
                                         j));
    }
    PulseSchedule schedule;
    schedule.steps.emplace_back(BusExcite{});
    schedule.steps.emplace_back(
        ResonantWindow{j, 0.5 * device::swap_time(config, j)});
    schedule.steps.emplace_back(ResonantWindow{k, device::swap_time(config, k)});
    return schedule;
}

ProtocolReport run_bell(const DeviceConfig &config, int j, int k) {
    auto schedule = bell_schedule(config, j, k);
    auto final_state = execute(schedule, ground_register(config), config);
    return score(std::move(final_state), bell_state(), {j, k},
                 std::move(schedule), config);
}

PulseSchedule cluster_sequence(const DeviceConfig &config, std::size_t n,
                               BusInit bus_init) {
    if (n < 2) {
        throw Error(kModule, "cluster chain needs at least two TLSs");
    }
    check_register_size(config, n, 2);
    PulseSchedule s;
    for (std::size_t j = 1; j < n; ++j) {
        const int tls = static_cast<int>(j);
        s.steps.emplace_back(BusReset{});
        s.steps.emplace_back(BusRotation{Axis::X, -0.5 * kPi});
        s.steps.emplace_back(ResonantWindow{tls, device::swap_time(config, tls)});
    }
    s.steps.emplace_back(BusReset{});
    if (bus_init == BusInit::Plus) {
        s.steps.emplace_back(BusRotation{Axis::Y, 0.5 * kPi});
    }
    s.preparation_steps = s.steps.size();
    for (std::size_t j = 1; j < n; ++j) {
        const int tls = static_cast<int>(j);
        s.steps.emplace_back(BusRotation{Axis::Z, 0.5 * kPi});
        s.steps.emplace_back(ResonantWindow{tls, device::swap_time(config, tls)});
        s.steps.emplace_back(BusRotation{Axis::Z, 0.5 * kPi});
    }
    const int last = static_cast<int>(n);
    s.steps.emplace_back(ResonantWindow{last, device::swap_time(config, last)});
    return s;
}

void apply_phase_correction(StateVector &state,
                            std::span<const int> register_tls,
                            std::span<const int> quarter_turns) {
    if (register_tls.size() != quarter_turns.size()) {
        throw Error(kModule, "one quarter-turn count per register TLS needed");
    }
    const std::array<Complex, 4> ipow = {Complex{1, 0}, Complex{0, 1},
                                         Complex{-1, 0}, Complex{0, -1}};
    for (std::size_t q = 0; q < register_tls.size(); ++q) {
        const int k = ((quarter_turns[q] % 4) + 4) % 4;
        state.apply_single({Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
                            ipow[static_cast<std::size_t>(k)]},
                           static_cast<std::size_t>(register_tls[q]));
    }
}

PhaseCorrection best_phase_correction(const StateVector &full,
                                      const StateVector &target,
                                      std::span<const int> register_tls) {
    const std::size_t m = register_tls.size();
    if (target.num_qubits() != m) {
        throw Error(kModule, "target size does not match the register");
    }
    if (m == 0 || m > 10) {
        throw Error(kModule, "phase-correction search supports 1..10 qubits");
    }
    const auto src = full.amplitudes();
    const auto tgt = target.amplitudes();

    // v[k] over base-4 digits; digit q starts as b_q in {0, 1}.
    std::vector<std::size_t> place(m);
    std::size_t size = 1;
    for (std::size_t q = 0; q < m; ++q) {
        place[q] = size;
        size *= 4;
    }
    std::vector<Complex> v(size);
    for (std::uint64_t b = 0; b < tgt.size(); ++b) {
        std::uint64_t idx_full = 0;
        std::size_t idx4 = 0;
        for (std::size_t q = 0; q < m; ++q) {
            if (b & (std::uint64_t{1} << q)) {
                idx_full |= std::uint64_t{1} << register_tls[q];
                idx4 += place[q];
            }
        }
        v[idx4] = std::conj(tgt[b]) * src[idx_full];
    }
    // Digit q: (f0, f1) -> f0 + i^k f1 for k = 0..3.
    const std::array<Complex, 4> ipow = {Complex{1, 0}, Complex{0, 1},
                                         Complex{-1, 0}, Complex{0, -1}};
    for (std::size_t q = 0; q < m; ++q) {
        const std::size_t p = place[q];
        for (std::size_t idx = 0; idx < size; ++idx) {
            if ((idx / p) % 4 != 0) {
                continue;
            }
            const Complex f0 = v[idx];
            const Complex f1 = v[idx + p];
            for (std::size_t k = 0; k < 4; ++k) {
                v[idx + k * p] = f0 + ipow[k] * f1;
            }
        }
    }
    std::size_t best = 0;
    double best_f = std::norm(v[0]);
    for (std::size_t idx = 1; idx < size; ++idx) {
        const double f = std::norm(v[idx]);
        if (f > best_f + 1e-12) {
            best = idx;
            best_f = f;
        }
    }
    PhaseCorrection out;
    out.fidelity = std::clamp(best_f, 0.0, 1.0);
    for (std::size_t q = 0; q < m; ++q) {
        out.quarter_turns.push_back(static_cast<int>((best / place[q]) % 4));
    }
    return out;
}

ClusterResult run_cluster_protocol(const DeviceConfig &config, std::size_t n,
                                   BusInit bus_init) {
    const auto reg = first_tls(n);
    const StateVector target = cluster_state(n);
    const StateVector embedded = embed_register(target, reg, config.num_tls());
    const StateVector literal =
        embed_register(cluster_state_literal(n), reg, config.num_tls());
    std::optional<ProtocolReport> requested;
    CorrectionReport c;
    for (BusInit init : {BusInit::Ground, BusInit::Plus}) {
        auto schedule = cluster_sequence(config, n, init);
        auto final_state = execute(schedule, ground_register(config), config);
        CorrectionVariant variant;
        variant.bus_init = init;
        variant.uncorrected_fidelity =
            std::clamp(fidelity(final_state, embedded), 0.0, 1.0);
        variant.literal_form_fidelity = fidelity(final_state, literal);
        variant.best = best_phase_correction(final_state, target, reg);
        if (c.variants.empty() || variant.best.fidelity > c.best_fidelity + 1e-12) {
            c.best_fidelity = variant.best.fidelity;
            c.best_bus_init = init;
            c.quarter_turns = variant.best.quarter_turns;
        }
        c.variants.push_back(std::move(variant));
        if (init == bus_init) {
            requested = score(std::move(final_state), target, reg,
                              std::move(schedule), config);
        }
    }
    c.exact_up_to_phase_corrections = c.best_fidelity >= 1.0 - 1e-6;
    return {std::move(*requested), std::move(c)};
}

} // namespace tlsent::protocol
