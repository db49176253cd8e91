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


#include "tlsent/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <numbers>
#include <variant>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "tlsent/config.hpp"
#include "tlsent/error.hpp"
#include "tlsent/measurement.hpp"
#include "tlsent/protocols.hpp"
#include "tlsent/rng.hpp"
#include "tlsent/spectroscopy.hpp"
#include "tlsent/targets.hpp"
#include "tlsent/tomography.hpp"
#include "tlsent/witness.hpp"

namespace tlsent::cli {

namespace {

const std::string kModule = "cli";

using device::DeviceConfig;
using protocol::PulseSchedule;
using protocol::ResonantWindow;

struct Target {
    enum class Kind { W, Cluster, Bell } kind = Kind::W;
    std::size_t n = 0;
    int j = 0;
    int k = 0;
};

long parse_int(std::string_view text, const std::string &what) {
    long value = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ParseError(kModule,
                         fmt::format("{}: '{}' is not an integer", what, text));
    }
    return value;
}

std::size_t parse_size(std::string_view text, const std::string &what) {
    const long v = parse_int(text, what);
    if (v < 1) {
        throw ParseError(kModule, fmt::format("{} must be positive", what));
    }
    return static_cast<std::size_t>(v);
}

Target parse_target(const std::vector<std::string> &tokens) {
    if (tokens.empty()) {
        throw ParseError(kModule, "--target is required");
    }
    std::string head = tokens[0];
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    Target t;
    if (head == "bell") {
        if (tokens.size() != 3) {
            throw ParseError(kModule, "--target bell needs two TLS indices");
        }
        t.kind = Target::Kind::Bell;
        t.j = static_cast<int>(parse_int(tokens[1], "bell TLS index"));
        t.k = static_cast<int>(parse_int(tokens[2], "bell TLS index"));
        return t;
    }
    if (head.empty() || (head[0] != 'w' && head[0] != 'c')) {
        throw ParseError(kModule,
                         fmt::format("unknown target '{}' (expected wN, c N or "
                                     "bell j k)",
                                     tokens[0]));
    }
    t.kind = head[0] == 'w' ? Target::Kind::W : Target::Kind::Cluster;
    if (head.size() > 1 && tokens.size() == 1) {
        t.n = parse_size(std::string_view(head).substr(1), "target size");
    } else if (head.size() == 1 && tokens.size() == 2) {
        t.n = parse_size(tokens[1], "target size");
    } else {
        throw ParseError(kModule, fmt::format("malformed target '{}'",
                                              fmt::join(tokens, " ")));
    }
    return t;
}

std::pair<int, int> tls_pair(const RunManifest &m) {
    if (!m.target.empty()) {
        const Target t = parse_target(m.target);
        if (t.kind != Target::Kind::Bell) {
            throw ParseError(kModule, "this command takes --target bell j k");
        }
        return {t.j, t.k};
    }
    if (m.tls.empty()) {
        return {1, 2};
    }
    if (m.tls.size() != 2) {
        throw ParseError(kModule, "--tls needs exactly two indices");
    }
    return {m.tls[0], m.tls[1]};
}

protocol::WMode w_mode(const std::string &mode) {
    if (mode == "general") {
        return protocol::WMode::General;
    }
    if (mode == "paper-n3") {
        return protocol::WMode::PaperN3;
    }
    throw ParseError(kModule, fmt::format("unknown mode '{}'", mode));
}

protocol::BusInit bus_init(const std::string &name) {
    if (name == "plus") {
        return protocol::BusInit::Plus;
    }
    if (name == "ground") {
        return protocol::BusInit::Ground;
    }
    throw ParseError(kModule, fmt::format("unknown bus init '{}'", name));
}

double readout_fidelity(const RunManifest &m, const DeviceConfig &config) {
    const double f = m.readout_f.value_or(config.readout_fidelity);
    if (!(f > 0.5 && f <= 1.0)) {
        throw ConfigError(fmt::format("readout fidelity {} outside (0.5, 1]", f),
                          {"readout-f"});
    }
    return f;
}

std::string quarter_turns_label(const std::vector<int> &k) {
    std::string s;
    for (int v : k) {
        s += static_cast<char>('0' + v);
    }
    return s;
}

std::string matrix_csv(const Eigen::MatrixXd &m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out += (c ? "," : "") + format_number(m(r, c));
        }
        out += "\n";
    }
    return out;
}

std::vector<std::size_t> as_keep(const std::vector<int> &reg) {
    return {reg.begin(), reg.end()};
}

void add_protocol_metrics(Report &r, const protocol::ProtocolReport &p) {
    r.add("fidelity", p.target_fidelity);
    r.add_flag("bus_disentangled", p.bus_disentangled);
    r.add("bus_excited_population", p.bus_excited_population);
}

void attach_schedule(Report &r, const PulseSchedule &s) {
    r.add_integer("schedule_steps", s.steps.size());
    r.add_integer("generation_steps", s.steps.size() - s.preparation_steps);
    r.attach("schedule.txt", protocol::to_text(s));
}

void add_window_times(Report &r, const PulseSchedule &s) {
    std::size_t w = 0;
    double total = 0.0;
    for (std::size_t i = s.preparation_steps; i < s.steps.size(); ++i) {
        if (const auto *win = std::get_if<ResonantWindow>(&s.steps[i])) {
            ++w;
            r.add(fmt::format("window{}_tls{}_duration", w, win->tls),
                  win->duration, "s");
            total += win->duration;
        }
    }
    r.add("total_window_time", total, "s");
}

void run_w_state(const RunManifest &m, const DeviceConfig &config, Report &r) {
    const std::size_t n = m.n.value_or(config.num_tls());
    const auto rep = protocol::run_w_protocol(config, n, w_mode(m.mode));
    r.add_integer("n", n, "qubits");
    add_protocol_metrics(r, rep);
    std::string csv = "tls,id,amplitude,re,im\n";
    for (std::size_t i = 0; i < rep.register_tls.size(); ++i) {
        const int j = rep.register_tls[i];
        const Complex a = rep.final_state.amplitude(std::uint64_t{1} << j);
        r.add(fmt::format("amplitude_tls{}", j), rep.amplitude_profile[i]);
        csv += fmt::format("{},{},{},{},{}\n", j, config.tls_at(j).id,
                           format_number(rep.amplitude_profile[i]),
                           format_number(a.real()), format_number(a.imag()));
    }
    add_window_times(r, rep.schedule);
    attach_schedule(r, rep.schedule);
    r.attach("amplitudes.csv", csv);
}

void run_bell_cmd(const RunManifest &m, const DeviceConfig &config, Report &r) {
    const auto [j, k] = tls_pair(m);
    const auto rep = protocol::run_bell(config, j, k);
    r.add_integer("tls_j", static_cast<std::uint64_t>(j), "index");
    r.add_integer("tls_k", static_cast<std::uint64_t>(k), "index");
    add_protocol_metrics(r, rep);
    add_window_times(r, rep.schedule);
    attach_schedule(r, rep.schedule);
}

// Protocol output for the best bus preparation with its best phase
// correction applied.
struct CorrectedCluster {
    protocol::ClusterResult result;
    StateVector state;
};

CorrectedCluster corrected_cluster(const DeviceConfig &config, std::size_t n,
                                   protocol::BusInit requested) {
    auto res = protocol::run_cluster_protocol(config, n, requested);
    const auto best = res.corrections.best_bus_init;
    StateVector state = best == requested
                            ? res.protocol.final_state
                            : protocol::run_cluster_protocol(config, n, best)
                                  .protocol.final_state;
    protocol::apply_phase_correction(state, res.protocol.register_tls,
                                     res.corrections.quarter_turns);
    return {std::move(res), std::move(state)};
}

void run_cluster_cmd(const RunManifest &m, const DeviceConfig &config,
                     Report &r) {
    const std::size_t n = m.n.value_or(config.num_tls());
    const auto init = bus_init(m.bus_init);
    const auto cc = corrected_cluster(config, n, init);
    const auto &res = cc.result;
    r.add_integer("n", n, "qubits");
    r.add_label("bus_init", protocol::to_string(init));
    r.add("uncorrected_fidelity", res.protocol.target_fidelity);
    r.add_flag("bus_disentangled", res.protocol.bus_disentangled);
    attach_schedule(r, res.protocol.schedule);
    if (!m.search_corrections) {
        return;
    }
    const auto &c = res.corrections;
    std::string csv =
        "bus_init,uncorrected_fidelity,literal_form_fidelity,best_fidelity,"
        "quarter_turns\n";
    for (const auto &v : c.variants) {
        const std::string name = protocol::to_string(v.bus_init);
        const std::string turns = quarter_turns_label(v.best.quarter_turns);
        r.add("uncorrected_fidelity_" + name, v.uncorrected_fidelity);
        r.add("literal_form_fidelity_" + name, v.literal_form_fidelity);
        r.add("corrected_fidelity_" + name, v.best.fidelity);
        r.add_label("quarter_turns_" + name, turns);
        csv += fmt::format("{},{},{},{},{}\n", name,
                           format_number(v.uncorrected_fidelity),
                           format_number(v.literal_form_fidelity),
                           format_number(v.best.fidelity), turns);
    }
    r.add("best_fidelity", c.best_fidelity);
    r.add_label("best_bus_init", protocol::to_string(c.best_bus_init));
    r.add_label("best_quarter_turns", quarter_turns_label(c.quarter_turns));
    r.add_flag("exact_up_to_phase_corrections", c.exact_up_to_phase_corrections);
    if (!c.exact_up_to_phase_corrections) {
        r.note("no Z^(k pi/2) correction of either bus preparation reaches the "
               "ideal cluster state; the best fidelity is reported as found");
    }
    const DensityMatrix rho =
        partial_trace(cc.state, as_keep(res.protocol.register_tls));
    const auto stabs = witness::cluster_stabilizers(n);
    for (std::size_t s = 0; s < stabs.generators.size(); ++s) {
        r.add(fmt::format("corrected_stabilizer{}", s + 1),
              expectation(rho, stabs.generators[s]));
    }
    r.attach("corrections.csv", csv);
}

void run_witness_cmd(const RunManifest &m, const DeviceConfig &config,
                     Report &r) {
    const Target t = parse_target(m.target);
    if (t.kind == Target::Kind::Bell) {
        throw ParseError(kModule, "witness targets are wN and c N");
    }
    if (m.decomposed && !(t.kind == Target::Kind::W && t.n == 3)) {
        throw ParseError(kModule, "--decomposed applies to the w3 target only");
    }
    const std::vector<int> reg = first_tls(t.n);
    std::optional<witness::WitnessOperator> w;
    std::optional<StateVector> prepared;
    std::optional<StateVector> ideal;
    double prep_fidelity = 0.0;
    if (t.kind == Target::Kind::W) {
        w = m.decomposed ? witness::w3_witness_decomposed()
                         : witness::w_witness_generic(t.n);
        auto rep = protocol::run_w_protocol(config, t.n, w_mode(m.mode));
        prepared.emplace(std::move(rep.final_state));
        prep_fidelity = rep.target_fidelity;
        ideal.emplace(w_state(t.n));
    } else {
        w = witness::cluster_witness(t.n);
        auto cc = corrected_cluster(config, t.n, protocol::BusInit::Plus);
        prepared.emplace(std::move(cc.state));
        prep_fidelity = cc.result.corrections.best_fidelity;
        ideal.emplace(cluster_state(t.n));
        r.add_label("best_bus_init",
                    protocol::to_string(cc.result.corrections.best_bus_init));
        r.add_label("best_quarter_turns",
                    quarter_turns_label(cc.result.corrections.quarter_turns));
    }
    const auto settings = witness::group_settings(*w);
    const DensityMatrix rho = partial_trace(*prepared, as_keep(reg));

    r.add_label("witness", w->label());
    r.add_integer("n", t.n, "qubits");
    r.add_integer("terms", w->terms().size());
    r.add_integer("settings", settings.size());
    r.add("prepared_fidelity", prep_fidelity);
    r.add("ideal_value", witness::witness_value_exact(*ideal, *w));
    r.add("exact_value", witness::witness_value_exact(rho, *w));

    std::string scsv = "setting,bases,covered_terms\n";
    for (std::size_t s = 0; s < settings.size(); ++s) {
        scsv += fmt::format("{},{},{}\n", s, settings[s].descriptor(),
                            fmt::join(settings[s].covered_terms, ";"));
    }
    r.attach("witness_terms.csv", witness::terms_csv(*w));
    r.attach("settings.csv", scsv);

    if (m.shots == 0) {
        return;
    }
    const double f = readout_fidelity(m, config);
    measurement::SamplingOptions opts{m.shots, f,
                                      derive_stream_seed(m.seed, "witness"),
                                      m.write_shots,
                                      measurement::SamplingMethod::Distribution};
    const StateVector &state = *prepared;
    const auto est = measurement::estimate_witness_sampled(
        [&state] { return state; }, reg, *w, settings, config, opts);
    r.add_integer("shots_per_setting", est.shots_per_setting, "shots");
    r.add("readout_fidelity", f);
    r.add("readout_contrast", est.readout_contrast);
    r.add("estimate", est.estimate, "dimensionless", est.standard_error);
    r.add("mitigated_estimate", est.mitigated_estimate, "dimensionless",
          est.mitigated_standard_error);
    for (std::size_t s = 0; s < est.records.size(); ++s) {
        r.attach(fmt::format("shots_setting{}.csv", s),
                 measurement::shots_csv(est.records[s]));
    }
}

void run_tomo_cmd(const RunManifest &m, const DeviceConfig &config, Report &r) {
    const auto [j, k] = tls_pair(m);
    if (!m.exact && m.shots == 0) {
        throw ParseError(kModule, "tomo needs --shots or --exact");
    }
    const StateVector state = protocol::run_bell(config, j, k).final_state;
    measurement::TomographyOptions opts;
    opts.shots_per_setting = m.shots;
    opts.readout_fidelity = readout_fidelity(m, config);
    opts.seed = derive_stream_seed(m.seed, "tomo");
    opts.exact = m.exact;
    opts.keep_records = m.write_shots;
    const auto res = measurement::tomography_two_qubit(
        [&state] { return state; }, j, k, bell_state(), config, opts);

    r.add_integer("tls_j", static_cast<std::uint64_t>(j), "index");
    r.add_integer("tls_k", static_cast<std::uint64_t>(k), "index");
    r.add_flag("exact", m.exact);
    if (!m.exact) {
        r.add_integer("shots_per_setting", m.shots, "shots");
    }
    r.add("readout_fidelity", opts.readout_fidelity);
    r.add_integer("settings", res.settings_used);
    r.add_integer("expectations", res.expectations.size());
    r.add("fidelity", res.fidelity_vs_target);
    r.add("min_eigenvalue", res.min_eigenvalue);
    r.add_flag("physical", res.physical);
    static constexpr const char *kLabels = "IXYZ";
    std::string ecsv = "observable,value\n";
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const std::string name{kLabels[a], kLabels[b]};
            const double v = res.expectations[4 * a + b];
            r.add("expectation_" + name, v);
            ecsv += name + "," + format_number(v) + "\n";
        }
    }
    if (!res.physical) {
        r.note("reconstructed density matrix has a negative eigenvalue below "
               "-1e-6; positivity is not enforced");
    }
    r.attach("rho_real.csv", matrix_csv(res.rho.matrix().real()));
    r.attach("rho_imag.csv", matrix_csv(res.rho.matrix().imag()));
    r.attach("expectations.csv", ecsv);
    for (std::size_t s = 0; s < res.records.size(); ++s) {
        r.attach(fmt::format("shots_setting{}.csv", s),
                 measurement::shots_csv(res.records[s]));
    }
}

void run_spectroscopy_cmd(const RunManifest &m, const DeviceConfig &config,
                          Report &r) {
    if (m.grid < 3) {
        throw ParseError(kModule, "--grid needs at least 3 points");
    }
    constexpr double kMargin = 300e6;
    const double plasma_hz = config.bias.omega_p0 / device::kTwoPi;
    double f_hi = 0.0;
    double f_lo = plasma_hz;
    for (const auto &t : config.tls) {
        f_hi = std::max(f_hi, t.omega_r / device::kTwoPi);
        f_lo = std::min(f_lo, t.omega_r / device::kTwoPi);
    }
    f_hi = std::min(f_hi + kMargin, plasma_hz * (1.0 - 1e-9));
    f_lo = std::max(f_lo - kMargin, 0.05 * plasma_hz);
    if (!(f_lo < f_hi)) {
        throw Error("device-model",
                    "TLS frequencies lie outside the tunable bus range");
    }
    const auto grid = device::uniform_bias_grid(
        device::bias_for_frequency(config.bias, f_hi),
        device::bias_for_frequency(config.bias, f_lo), m.grid);
    const auto scan = device::synth_spectroscopy(config, grid);
    const auto ext = device::extract_tls_parameters(scan);

    r.add_integer("grid_points", grid.size(), "points");
    r.add("bias_min", grid.front(), "I/I0");
    r.add("bias_max", grid.back(), "I/I0");
    r.add_integer("crossings", ext.crossings.size());
    std::string ccsv = "crossing,center_bias,tls_frequency_hz,splitting_hz\n";
    for (std::size_t i = 0; i < ext.crossings.size(); ++i) {
        const auto &c = ext.crossings[i];
        ccsv += fmt::format("{},{},{},{}\n", i + 1, format_number(c.center_bias),
                            format_number(c.tls_frequency_hz),
                            format_number(c.splitting_hz));
    }
    // Match each configured TLS to the nearest extracted crossing.
    std::size_t recovered = 0;
    for (std::size_t i = 0; i < config.num_tls(); ++i) {
        const auto &t = config.tls[i];
        const double f = t.omega_r / device::kTwoPi;
        const double split = device::splitting_from_coupling(t.coupling);
        const std::string p = "tls_" + t.id;
        if (ext.crossings.empty()) {
            r.add_flag(p + "_recovered", false);
            continue;
        }
        const auto best = std::min_element(
            ext.crossings.begin(), ext.crossings.end(),
            [f](const auto &a, const auto &b) {
                return std::abs(a.tls_frequency_hz - f) <
                       std::abs(b.tls_frequency_hz - f);
            });
        const double step = std::abs(
            device::bare_bus_frequency_hz(config.bias,
                                          best->center_bias - 0.5 * (grid[1] - grid[0])) -
            device::bare_bus_frequency_hz(config.bias,
                                          best->center_bias + 0.5 * (grid[1] - grid[0])));
        const double ferr = best->tls_frequency_hz - f;
        const double serr = (best->splitting_hz - split) / split;
        const bool ok = std::abs(ferr) <= step && std::abs(serr) <= 0.05;
        recovered += ok;
        r.add(p + "_frequency", best->tls_frequency_hz, "Hz");
        r.add(p + "_frequency_error", ferr, "Hz");
        r.add(p + "_grid_step", step, "Hz");
        r.add(p + "_splitting", best->splitting_hz, "Hz");
        r.add(p + "_splitting_relative_error", serr);
        r.add_flag(p + "_recovered", ok);
    }
    r.add_integer("tls_recovered", recovered);
    for (const auto &w : ext.warnings) {
        r.note(w);
    }
    r.attach("scan.csv", device::scan_csv(scan));
    r.attach("crossings.csv", ccsv);
}

void run_rwa_cmd(const RunManifest &m, const DeviceConfig &config, Report &r) {
    if (m.tls.size() > 1) {
        throw ParseError(kModule, "rwa-check takes a single --tls index");
    }
    const int j = m.tls.empty() ? 1 : m.tls[0];
    device::RotatingFrame frame;
    if (m.frame == "bare") {
        frame.reference = device::FrameReference::BareFrequencies;
    } else if (m.frame != "bus") {
        throw ParseError(kModule, fmt::format("unknown frame '{}'", m.frame));
    }
    DeviceConfig resonant = config;
    resonant.omega10 = config.tls_at(j).omega_r;
    const double tau = device::swap_time(resonant, j);
    DeviceConfig isolated = resonant;
    isolated.tls = {resonant.tls_at(j)};

    r.add_integer("tls", static_cast<std::uint64_t>(j), "index");
    r.add_label("frame", m.frame);
    r.add("coupling_ratio", resonant.tls_at(j).coupling / resonant.omega10);
    r.add("swap_time", tau, "s");
    r.add("infidelity_bus_excited",
          device::rwa_infidelity(resonant, j, tau, frame,
                                 device::RwaProbe::BusExcited));
    r.add("infidelity_process", device::rwa_infidelity(resonant, j, tau, frame,
                                                       device::RwaProbe::Process));
    r.add("infidelity_process_isolated",
          device::rwa_infidelity(isolated, 1, tau, frame,
                                 device::RwaProbe::Process));
}

std::string join_ints(const std::vector<int> &v) {
    return fmt::format("{}", fmt::join(v, " "));
}

} // namespace

std::vector<std::pair<std::string, std::string>> RunManifest::echo() const {
    std::vector<std::pair<std::string, std::string>> e = {
        {"command", command}, {"config", config_path},
        {"seed", std::to_string(seed)}};
    if (n) {
        e.emplace_back("n", std::to_string(*n));
    }
    if (command == "w-state" || command == "witness") {
        e.emplace_back("mode", mode);
    }
    if (!target.empty()) {
        e.emplace_back("target", fmt::format("{}", fmt::join(target, " ")));
    }
    if (!tls.empty()) {
        e.emplace_back("tls", join_ints(tls));
    }
    if (command == "cluster") {
        e.emplace_back("bus_init", bus_init);
        e.emplace_back("search_corrections", search_corrections ? "yes" : "no");
    }
    if (command == "witness" || command == "tomo") {
        e.emplace_back("shots", std::to_string(shots));
        if (readout_f) {
            e.emplace_back("readout_f", format_number(*readout_f));
        }
        e.emplace_back("write_shots", write_shots ? "yes" : "no");
    }
    if (command == "witness") {
        e.emplace_back("decomposed", decomposed ? "yes" : "no");
    }
    if (command == "tomo") {
        e.emplace_back("exact", exact ? "yes" : "no");
    }
    if (command == "spectroscopy") {
        e.emplace_back("grid", std::to_string(grid));
    }
    if (command == "rwa-check") {
        e.emplace_back("frame", frame);
    }
    return e;
}

Report run_command(const RunManifest &manifest) {
    std::vector<std::string> warnings;
    const DeviceConfig config = load_config(manifest.config_path, &warnings);
    Report r;
    r.set_manifest(manifest.echo());
    r.add_integer("seed", manifest.seed, "dimensionless");
    r.add_integer("num_tls", config.num_tls());
    const std::string &c = manifest.command;
    if (c == "w-state") {
        run_w_state(manifest, config, r);
    } else if (c == "bell") {
        run_bell_cmd(manifest, config, r);
    } else if (c == "cluster") {
        run_cluster_cmd(manifest, config, r);
    } else if (c == "witness") {
        run_witness_cmd(manifest, config, r);
    } else if (c == "tomo") {
        run_tomo_cmd(manifest, config, r);
    } else if (c == "spectroscopy") {
        run_spectroscopy_cmd(manifest, config, r);
    } else if (c == "rwa-check") {
        run_rwa_cmd(manifest, config, r);
    } else {
        throw ParseError(kModule, fmt::format("unknown command '{}'", c));
    }
    for (const auto &w : warnings) {
        r.note(w);
    }
    return r;
}

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ParseError *>(&e)) {
        return kExitUsage;
    }
    if (dynamic_cast<const ConfigError *>(&e)) {
        return kExitConfig;
    }
    if (dynamic_cast<const IoError *>(&e)) {
        return kExitIo;
    }
    return kExitPhysics;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    RunManifest m;
    CLI::App app{"Entanglement protocols on a phase qubit coupled to TLSs",
                 "tlsent"};
    app.require_subcommand(1, 1);

    auto common = [&m](CLI::App *s) {
        s->add_option("--config", m.config_path, "device configuration (JSON)")
            ->required();
        s->add_option("--seed", m.seed, "master random seed");
        s->add_option("--out", m.out_dir, "output directory");
    };
    auto add_n = [&m](CLI::App *s, const char *help) {
        s->add_option("--n", m.n, help)->check(CLI::Range(1, 10));
    };
    auto add_sampling = [&m](CLI::App *s) {
        s->add_option("--shots", m.shots, "shots per measurement setting");
        s->add_option("--readout-f", m.readout_f,
                      "readout fidelity (overrides the config)");
        s->add_flag("--write-shots", m.write_shots,
                    "attach per-setting shot records");
    };
    auto add_mode = [&m](CLI::App *s) {
        s->add_option("--mode", m.mode, "W-state timing: general or paper-n3")
            ->check(CLI::IsMember({"general", "paper-n3"}));
    };

    auto *w = app.add_subcommand("w-state", "generate an N-qubit W state");
    common(w);
    add_n(w, "number of TLSs (default: all)");
    add_mode(w);

    auto *bell = app.add_subcommand("bell", "generate a Bell pair on two TLSs");
    common(bell);
    bell->add_option("--tls", m.tls, "TLS indices j k")->expected(2);
    bell->add_option("--target", m.target, "bell j k")->expected(1, 3);

    auto *cl = app.add_subcommand("cluster", "generate a linear cluster state");
    common(cl);
    add_n(cl, "number of TLSs (default: all)");
    cl->add_option("--bus-init", m.bus_init, "bus preparation: ground or plus")
        ->check(CLI::IsMember({"ground", "plus"}));
    cl->add_flag("--search-corrections", m.search_corrections,
                 "search per-TLS Z quarter-turn corrections for both bus "
                 "preparations");

    auto *wit = app.add_subcommand("witness", "evaluate an entanglement witness");
    common(wit);
    wit->add_option("--target", m.target, "wN or c N")->expected(1, 3)->required();
    wit->add_flag("--decomposed", m.decomposed,
                  "use the five-setting W3 decomposition");
    add_mode(wit);
    add_sampling(wit);

    auto *tomo = app.add_subcommand("tomo", "two-TLS state tomography of a Bell pair");
    common(tomo);
    tomo->add_option("--tls", m.tls, "TLS indices j k")->expected(2);
    tomo->add_option("--target", m.target, "bell j k")->expected(1, 3);
    tomo->add_flag("--exact", m.exact, "use exact expectations");
    add_sampling(tomo);

    auto *spec = app.add_subcommand("spectroscopy",
                                    "synthetic bus spectroscopy and extraction");
    common(spec);
    spec->add_option("--grid", m.grid, "bias grid points");

    auto *rwa = app.add_subcommand("rwa-check",
                                   "full Hamiltonian versus exchange model");
    common(rwa);
    rwa->add_option("--tls", m.tls, "resonant TLS index")->expected(1);
    rwa->add_option("--frame", m.frame, "rotating frame: bus or bare")
        ->check(CLI::IsMember({"bus", "bare"}));

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("tlsent");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "tlsent: " << e.what() << "\n";
        return kExitUsage;
    }
    m.command = app.get_subcommands().front()->get_name();

    try {
        const Report report = run_command(m);
        emit_report(report, m.out_dir);
        out << report_txt(report);
    } catch (const std::exception &e) {
        err << "tlsent: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}

int main_entry(int argc, char **argv) {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace tlsent::cli
