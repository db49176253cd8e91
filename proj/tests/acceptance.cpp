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


// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tlsent/cli.hpp"
#include "tlsent/config.hpp"
#include "tlsent/device.hpp"
#include "tlsent/measurement.hpp"
#include "tlsent/protocols.hpp"
#include "tlsent/spectroscopy.hpp"
#include "tlsent/targets.hpp"
#include "tlsent/tomography.hpp"
#include "tlsent/witness.hpp"

using namespace tlsent;
namespace fs = std::filesystem;

namespace {

const std::string kConfigDir = TLSENT_CONFIG_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

device::DeviceConfig device10() { return cli::load_config(kConfigDir + "/device10.json"); }
device::DeviceConfig device3() { return cli::load_config(kConfigDir + "/device3.json"); }

device::DeviceConfig single_tls(double omega, double coupling) {
    device::DeviceConfig c;
    c.omega10 = omega;
    c.tls.push_back({"T1", omega, coupling});
    return c;
}

StateVector haar_product(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<QubitState> f;
    for (std::size_t q = 0; q < n; ++q) {
        Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        f.push_back({a / norm, b / norm});
    }
    return product_state(f);
}

Outcome iswap_truth_table() {
    const auto c = single_tls(device::kTwoPi * 6e9, device::coupling_from_splitting(50e6));
    const double tau = device::swap_time(c, 1);
    const Complex mi{0.0, -1.0};
    // input label, output index, output amplitude
    const std::vector<std::tuple<const char *, std::uint64_t, Complex>> table = {
        {"0g", 0, 1.0}, {"1g", 2, mi}, {"0e", 1, mi}, {"1e", 3, 1.0}};
    double worst = 0.0;
    for (const auto &[in, idx, amp] : table) {
        const auto out = device::resonant_evolution(init_basis_state(in), 1, tau, c);
        for (std::uint64_t b = 0; b < 4; ++b) {
            const Complex expect = b == idx ? amp : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(out.amplitude(b) - expect));
        }
    }
    return {worst <= 1e-12, fmt::format("max amplitude error {:.3g}", worst)};
}

Outcome w_generation() {
    const auto c = device10();
    double worst_fid = 1.0, worst_amp = 0.0, worst_phase = 0.0, worst_bus = 0.0;
    bool disentangled = true;
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto rep = protocol::run_w_protocol(c, n);
        worst_fid = std::min(worst_fid, rep.target_fidelity);
        disentangled = disentangled && rep.bus_disentangled;
        worst_bus = std::max(worst_bus, rep.final_state.excited_probability(0));
        const double a = 1.0 / std::sqrt(double(n));
        for (std::size_t l = 1; l <= n; ++l) {
            const Complex raw = rep.final_state.amplitude(std::uint64_t{1} << l);
            worst_amp = std::max(worst_amp, std::abs(std::abs(raw) - a));
            worst_phase = std::max(worst_phase, std::abs(raw - Complex{0.0, -a}));
        }
    }
    const bool ok = worst_fid >= 1.0 - 1e-9 && disentangled && worst_bus <= 1e-12 &&
                    worst_amp <= 1e-10 && worst_phase <= 1e-10;
    return {ok, fmt::format("N=1..10: min fidelity {:.12f}, max |amp|-1/sqrt(N) {:.3g}, "
                            "max deviation from -i/sqrt(N) {:.3g}, bus P(1) {:.3g}",
                            worst_fid, worst_amp, worst_phase, worst_bus)};
}

Outcome bell() {
    const auto c = device10();
    double worst = 1.0;
    for (int j = 1; j <= 10; ++j) {
        for (int k = 1; k <= 10; ++k) {
            if (j != k) {
                worst = std::min(worst, protocol::run_bell(c, j, k).target_fidelity);
            }
        }
    }
    return {std::abs(worst - 1.0) <= 1e-10,
            fmt::format("all 90 ordered pairs: min fidelity {:.14f}", worst)};
}

Outcome literal_n3() {
    const auto rep = protocol::run_w_protocol(device3(), 3, protocol::WMode::PaperN3);
    const double closed =
        std::pow(0.5 + std::sqrt(6.0) / 4.0 + std::sqrt(3.0) / 4.0, 2) / 3.0;
    const double bus = rep.bus_excited_population;
    const bool ok = std::abs(rep.target_fidelity - closed) <= 1e-6 &&
                    std::abs(bus - 3.0 / 16.0) <= 1e-10;
    return {ok, fmt::format("fidelity {:.12f} (closed form {:.12f}), bus excitation {:.12f}",
                            rep.target_fidelity, closed, bus)};
}

Outcome cluster() {
    const auto c = device10();
    bool ok = true;
    std::string detail;
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto res = protocol::run_cluster_protocol(c, n, protocol::BusInit::Plus);
        ok = ok && res.corrections.variants.size() == 2;
        std::string turns;
        for (int k : res.corrections.quarter_turns) {
            turns += std::to_string(k);
        }
        detail += fmt::format("N={}: best {:.10f} ({}, k={}); ", n, res.corrections.best_fidelity,
                              protocol::to_string(res.corrections.best_bus_init), turns);
        const auto ideal = cluster_state(n);
        for (const auto &s : witness::cluster_stabilizers(n).generators) {
            ok = ok && std::abs(expectation(ideal, s) - 1.0) <= 1e-10;
        }
    }
    detail += "ideal stabilizers all +1";
    return {ok, detail};
}

Outcome w3_decomposition() {
    const auto d = witness::w3_witness_decomposed();
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(8);
    w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
    const Matrix expect = Matrix::Identity(8, 8) * (2.0 / 3.0) - w * w.adjoint();
    const double err = (d.dense() - expect).cwiseAbs().maxCoeff();
    const auto settings = witness::group_settings(d).size();
    return {err <= 1e-12 && settings == 5,
            fmt::format("max element error {:.3g}, {} settings", err, settings)};
}

Outcome cluster_witness() {
    bool ok = true;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const double v = witness::witness_value_exact(cluster_state(n), witness::cluster_witness(n));
        worst = std::max(worst, std::abs(v + 1.0));
    }
    ok = worst <= 1e-10;
    std::size_t max_settings = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        const auto s = witness::group_settings(witness::cluster_witness(n)).size();
        max_settings = std::max(max_settings, s);
        ok = ok && s == 2;
    }
    const double literal = witness::witness_value_exact(
        cluster_state(4), witness::cluster_witness(4, witness::ClusterForm::Literal));
    ok = ok && literal >= 0.0;
    return {ok, fmt::format("max |value+1| {:.3g} for N=2..6, settings {} for N=2..10, "
                            "literal form on C4 {:.12f}",
                            worst, max_settings, literal)};
}

Outcome separable() {
    std::vector<witness::WitnessOperator> ws = {witness::w_witness_generic(3),
                                                witness::w3_witness_decomposed()};
    for (std::size_t n = 4; n <= 6; ++n) {
        ws.push_back(witness::w_witness_generic(n));
    }
    for (std::size_t n = 3; n <= 6; ++n) {
        ws.push_back(witness::cluster_witness(n));
    }
    const double forms = (ws[0].dense() - ws[1].dense()).cwiseAbs().maxCoeff();
    std::mt19937_64 rng(20260101);
    double lowest = 1e9;
    std::string which;
    for (const auto &w : ws) {
        for (int i = 0; i < 1000; ++i) {
            const double v = witness::witness_value_exact(haar_product(w.num_qubits(), rng), w);
            if (v < lowest) {
                lowest = v;
                which = w.label();
            }
        }
    }
    return {lowest >= -1e-10 && forms <= 1e-12,
            fmt::format("{} witnesses x 1000 product states: minimum {:.6g} ({}); W3 forms "
                        "differ by {:.3g}",
                        ws.size(), lowest, which, forms)};
}

Outcome sampled() {
    const auto c = device10();
    struct Case {
        witness::WitnessOperator w;
        StateVector state;
    };
    const std::vector<Case> cases = {{witness::w3_witness_decomposed(), w_state(3)},
                                     {witness::cluster_witness(4), cluster_state(4)}};
    bool ok = true;
    std::string detail;
    for (const auto &cs : cases) {
        const std::size_t n = cs.w.num_qubits();
        const auto reg = first_tls(n);
        const StateVector full = embed_register(cs.state, reg, c.num_tls());
        const measurement::Preparation prep = [&full] { return full; };
        const auto settings = witness::group_settings(cs.w);
        const double exact = witness::witness_value_exact(cs.state, cs.w);
        int within = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto est = measurement::estimate_witness_sampled(
                prep, reg, cs.w, settings, c, {100000, 1.0, seed, false, {}});
            within += std::abs(est.estimate - exact) <= 4.0 * est.standard_error + 1e-12;
        }
        ok = ok && within >= 19;
        detail += fmt::format("{}: {}/20 within 4 SE; ", cs.w.label(), within);
    }
    const auto &w3 = cases[0];
    const auto reg = first_tls(3);
    const StateVector full = embed_register(w3.state, reg, c.num_tls());
    const measurement::Preparation prep = [&full] { return full; };
    const auto settings = witness::group_settings(w3.w);
    const auto a = measurement::estimate_witness_sampled(prep, reg, w3.w, settings, c,
                                                         {100000, 1.0, 101, false, {}});
    const auto b = measurement::estimate_witness_sampled(prep, reg, w3.w, settings, c,
                                                         {400000, 1.0, 102, false, {}});
    const double ratio = b.standard_error / a.standard_error;
    ok = ok && std::abs(ratio - 0.5) <= 0.1;
    detail += fmt::format("SE ratio at 4x shots {:.4f}", ratio);
    return {ok, detail};
}

Outcome readout() {
    measurement::ReadoutModel r(0.96, 2026);
    const int n = 100000;
    int ones = 0;
    for (int i = 0; i < n; ++i) {
        auto s = init_basis_state("1");
        ones += measurement::measure_bus(s, r).reported;
    }
    const double freq = ones / double(n);
    const double sigma = std::sqrt(0.96 * 0.04 / n);
    return {std::abs(freq - 0.96) <= 3.0 * sigma,
            fmt::format("frequency {:.5f}, 3 sigma = {:.5f}", freq, 3.0 * sigma)};
}

Outcome tomography() {
    const auto c = device3();
    const StateVector bell = protocol::run_bell(c, 1, 2).final_state;
    const measurement::Preparation prep = [&bell] { return bell; };
    measurement::TomographyOptions exact;
    exact.exact = true;
    const auto e = measurement::tomography_two_qubit(prep, 1, 2, bell_state(), c, exact);
    measurement::TomographyOptions shots;
    shots.shots_per_setting = 100000;
    shots.readout_fidelity = 0.96;
    shots.seed = 17;
    const auto s = measurement::tomography_two_qubit(prep, 1, 2, bell_state(), c, shots);
    const bool ok = std::abs(e.fidelity_vs_target - 1.0) <= 1e-10 && e.settings_used == 9 &&
                    e.expectations.size() == 16 && s.fidelity_vs_target > 0.85 &&
                    s.fidelity_vs_target < 1.0;
    return {ok, fmt::format("exact fidelity {:.14f}, {} settings, {} expectations; F=0.96 "
                            "1e5 shots/setting fidelity {:.6f} (baseline)",
                            e.fidelity_vs_target, e.settings_used, e.expectations.size(),
                            s.fidelity_vs_target)};
}

Outcome spectroscopy() {
    const auto c = device10();
    const auto grid = device::uniform_bias_grid(device::bias_for_frequency(c.bias, 7.0e9),
                                                device::bias_for_frequency(c.bias, 4.8e9), 2000);
    const auto ext = device::extract_tls_parameters(device::synth_spectroscopy(c, grid));
    if (ext.crossings.size() != c.num_tls()) {
        return {false, fmt::format("found {} crossings for {} TLSs", ext.crossings.size(),
                                   c.num_tls())};
    }
    const double h = grid[1] - grid[0];
    double worst_split = 0.0, worst_steps = 0.0;
    for (std::size_t i = 0; i < c.num_tls(); ++i) {
        const auto &x = ext.crossings[i];
        const double split = device::splitting_from_coupling(c.tls[i].coupling);
        const double f = c.tls[i].omega_r / device::kTwoPi;
        const double step = std::abs(device::bare_bus_frequency_hz(c.bias, x.center_bias - h) -
                                     device::bare_bus_frequency_hz(c.bias, x.center_bias + h)) /
                            2.0;
        worst_split = std::max(worst_split, std::abs(x.splitting_hz - split) / split);
        worst_steps = std::max(worst_steps, std::abs(x.tls_frequency_hz - f) / step);
    }
    return {worst_split <= 0.05 && worst_steps <= 1.0,
            fmt::format("10/10 crossings; worst splitting error {:.3g}, worst frequency "
                        "error {:.3g} grid steps",
                        worst_split, worst_steps)};
}

Outcome rwa() {
    const double omega = device::kTwoPi * 6e9;
    auto infidelity = [&](double ratio) {
        const auto c = single_tls(omega, ratio * omega);
        return device::rwa_infidelity(c, 1, device::swap_time(c, 1), {},
                                      device::RwaProbe::Process);
    };
    const double hi = infidelity(1e-2);
    const double lo = infidelity(1e-3);
    return {lo < hi, fmt::format("S/omega10 = 1e-2: {:.6g}; 1e-3: {:.6g}", hi, lo)};
}

std::vector<std::vector<std::string>> cli_matrix() {
    const std::string d3 = kConfigDir + "/device3.json";
    const std::string d10 = kConfigDir + "/device10.json";
    return {
        {"w-state", "--config", d10, "--n", "5"},
        {"w-state", "--config", d3, "--mode", "paper-n3"},
        {"bell", "--config", d10, "--tls", "2", "7"},
        {"cluster", "--config", d10, "--n", "4", "--search-corrections"},
        {"witness", "--config", d3, "--target", "w3", "--decomposed", "--shots", "20000",
         "--write-shots", "--seed", "7"},
        {"witness", "--config", d10, "--target", "c", "4", "--shots", "10000", "--seed", "11"},
        {"witness", "--config", d10, "--target", "w4", "--shots", "2000"},
        {"tomo", "--config", d3, "--shots", "20000", "--write-shots", "--seed", "3"},
        {"tomo", "--config", d3, "--exact"},
        {"spectroscopy", "--config", d10},
        {"rwa-check", "--config", d3, "--tls", "2"},
    };
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "tlsent-acceptance";
    fs::remove_all(root);
    const auto matrix = cli_matrix();
    std::size_t files = 0;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::vector<fs::path> dirs;
        for (const char *run : {"a", "b"}) {
            const fs::path dir = root / run / std::to_string(i);
            auto args = matrix[i];
            args.push_back("--out");
            args.push_back(dir.string());
            std::ostringstream out, err;
            const int code = cli::run_cli(args, out, err);
            if (code != 0) {
                return {false, fmt::format("command {} ({}) exited {}: {}", i, matrix[i][0],
                                           code, err.str())};
            }
            dirs.push_back(dir);
        }
        for (const auto &e : fs::directory_iterator(dirs[0])) {
            ++files;
            const fs::path other = dirs[1] / e.path().filename();
            if (!fs::exists(other) || slurp(e.path()) != slurp(other)) {
                return {false, fmt::format("{} differs for command {}",
                                           e.path().filename().string(), i)};
            }
        }
        if (std::distance(fs::directory_iterator(dirs[0]), fs::directory_iterator{}) !=
            std::distance(fs::directory_iterator(dirs[1]), fs::directory_iterator{})) {
            return {false, fmt::format("file sets differ for command {}", i)};
        }
    }
    fs::remove_all(root);
    return {true, fmt::format("{} commands run twice, {} files byte-identical", matrix.size(),
                              files)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"iSWAP truth table", iswap_truth_table},
        {"W-state generation", w_generation},
        {"Bell protocol", bell},
        {"three-TLS literal timing", literal_n3},
        {"cluster protocol and correction search", cluster},
        {"W3 five-setting decomposition", w3_decomposition},
        {"cluster witness", cluster_witness},
        {"separable non-negativity", separable},
        {"sampled estimation", sampled},
        {"readout model", readout},
        {"tomography", tomography},
        {"spectroscopy round trip", spectroscopy},
        {"RWA check", rwa},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << fmt::format("{} {:2d} {}: {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                                 criteria[i].first, o.detail, secs)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures,
                             criteria.size());
    return failures == 0 ? 0 : 1;
}
