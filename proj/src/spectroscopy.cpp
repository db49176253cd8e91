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

#include "tlsent/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "tlsent/error.hpp"

namespace tlsent::device {

namespace {

const std::string kModule = "device-model";

constexpr double kMaxBias = 0.999;
constexpr double kWindowSplittings = 4.0;
constexpr double kCurvatureTolerance = 0.25;

struct GapSample {
    std::size_t index; // into the scan
    double gap;        // smallest adjacent branch difference
    double sum;        // sum of the two branches forming that gap
};

std::vector<std::vector<GapSample>> gap_runs(const SpectroscopyScan &scan) {
    std::vector<std::vector<GapSample>> runs;
    std::vector<GapSample> current;
    for (std::size_t i = 0; i < scan.bias.size(); ++i) {
        const auto &br = scan.branches[i];
        if (br.size() < 2) {
            if (!current.empty()) {
                runs.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        GapSample s{i, br[1] - br[0], br[1] + br[0]};
        for (std::size_t b = 1; b + 1 < br.size(); ++b) {
            if (br[b + 1] - br[b] < s.gap) {
                s = {i, br[b + 1] - br[b], br[b + 1] + br[b]};
            }
        }
        current.push_back(s);
    }
    if (!current.empty()) {
        runs.push_back(std::move(current));
    }
    return runs;
}

// gap^2 = a s^2 + b s + c through three samples.
std::optional<AvoidedCrossing> refine(const GapSample &l, const GapSample &m,
                                      const GapSample &r,
                                      const SpectroscopyScan &scan) {
    const double x0 = l.sum, x1 = m.sum, x2 = r.sum;
    const double y0 = l.gap * l.gap, y1 = m.gap * m.gap, y2 = r.gap * r.gap;
    const double d01 = x0 - x1, d02 = x0 - x2, d12 = x1 - x2;
    if (d01 == 0.0 || d02 == 0.0 || d12 == 0.0) {
        return std::nullopt;
    }
    const double a = y0 / (d01 * d02) - y1 / (d01 * d12) + y2 / (d02 * d12);
    if (!(std::abs(a - 1.0) <= kCurvatureTolerance)) {
        return std::nullopt;
    }
    // Newton form: y = y0 + (x - x0) f01 + (x - x0)(x - x1) a.
    const double f01 = (y0 - y1) / d01;
    const double b = f01 - a * (x0 + x1);
    const double c = y0 - f01 * x0 + a * x0 * x1;
    const double vertex = -b / (2.0 * a);
    const double min_sq = c - b * b / (4.0 * a);
    if (!(min_sq > 0.0)) {
        return std::nullopt;
    }
    const double lo = std::min({x0, x1, x2});
    const double hi = std::max({x0, x1, x2});
    if (vertex < lo || vertex > hi) {
        return std::nullopt;
    }
    // Bias at the vertex by piecewise-linear interpolation in s.
    const bool left = (vertex - x0) * (vertex - x1) <= 0.0;
    const GapSample &p = left ? l : m;
    const GapSample &q = left ? m : r;
    const double w = (vertex - p.sum) / (q.sum - p.sum);
    const double bias =
        scan.bias[p.index] + w * (scan.bias[q.index] - scan.bias[p.index]);
    return AvoidedCrossing{bias, std::sqrt(min_sq), 0.5 * vertex};
}

} // namespace

double bare_bus_frequency_hz(const BiasModel &model, double bias) {
    return model.omega_p0 / kTwoPi *
           std::pow(1.0 - bias * bias / (model.critical_current *
                                         model.critical_current),
                    0.25);
}

double bias_for_frequency(const BiasModel &model, double frequency_hz) {
    const double f0 = model.omega_p0 / kTwoPi;
    if (!(frequency_hz > 0.0 && frequency_hz < f0)) {
        throw Error(kModule,
                    fmt::format("{:.6g} Hz is outside the bus tuning range (0, "
                                "{:.6g}) Hz",
                                frequency_hz, f0));
    }
    const double r = frequency_hz / f0;
    return model.critical_current * std::sqrt(1.0 - r * r * r * r);
}

std::vector<double> uniform_bias_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) {
        throw Error(kModule, "bias grid needs n >= 2 and hi > lo");
    }
    std::vector<double> grid(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo + step * static_cast<double>(i);
    }
    grid.back() = hi;
    return grid;
}

SpectroscopyScan synth_spectroscopy(const DeviceConfig &config,
                                    const std::vector<double> &bias_grid) {
    validate(config, false);
    SpectroscopyScan scan;
    scan.bias = bias_grid;
    scan.branches.reserve(bias_grid.size());
    for (double x : bias_grid) {
        if (!(x > 0.0 && x < kMaxBias)) {
            throw Error(kModule,
                        fmt::format("bias {} outside (0, {})", x, kMaxBias));
        }
        const double fq = bare_bus_frequency_hz(config.bias, x);
        const TlsParams *nearest = nullptr;
        double best = 0.0;
        for (const auto &t : config.tls) {
            const double d = std::abs(fq - t.omega_r / kTwoPi);
            if (nearest == nullptr || d < best) {
                nearest = &t;
                best = d;
            }
        }
        std::vector<double> br;
        if (nearest != nullptr) {
            const double fr = nearest->omega_r / kTwoPi;
            const double gap = splitting_from_coupling(nearest->coupling);
            if (best <= kWindowSplittings * gap) {
                const double mean = 0.5 * (fq + fr);
                const double half =
                    0.5 * std::sqrt((fq - fr) * (fq - fr) + gap * gap);
                br = {mean - half, mean + half};
            }
        }
        if (br.empty()) {
            br = {fq};
        }
        scan.branches.push_back(std::move(br));
    }
    return scan;
}

ExtractionResult extract_tls_parameters(const SpectroscopyScan &scan) {
    if (scan.bias.size() != scan.branches.size()) {
        throw Error(kModule, "scan bias and branch lists differ in length");
    }
    ExtractionResult out;
    for (const auto &run : gap_runs(scan)) {
        const double run_bias = scan.bias[run.front().index];
        if (run.size() < 3) {
            out.warnings.push_back(fmt::format(
                "crossing near bias {:.6f}: only {} point(s) with split "
                "branches, omitted",
                run_bias, run.size()));
            continue;
        }
        if (run[0].gap < run[1].gap) {
            out.warnings.push_back(fmt::format(
                "gap minimum at the start of the region at bias {:.6f}, "
                "omitted",
                run_bias));
        }
        const std::size_t last = run.size() - 1;
        if (run[last].gap < run[last - 1].gap) {
            out.warnings.push_back(fmt::format(
                "gap minimum at the end of the region at bias {:.6f}, omitted",
                scan.bias[run[last].index]));
        }
        for (std::size_t i = 1; i < last; ++i) {
            if (!(run[i - 1].gap > run[i].gap && run[i].gap <= run[i + 1].gap)) {
                continue;
            }
            auto crossing = refine(run[i - 1], run[i], run[i + 1], scan);
            if (!crossing) {
                crossing = AvoidedCrossing{scan.bias[run[i].index], run[i].gap,
                                           0.5 * run[i].sum};
                out.warnings.push_back(fmt::format(
                    "crossing near bias {:.6f} does not fit a single avoided "
                    "crossing (unresolved neighbors?); reporting the sampled "
                    "minimum",
                    crossing->center_bias));
            }
            if (crossing->splitting_hz < kMinSplittingHz ||
                crossing->splitting_hz > kMaxSplittingHz) {
                out.warnings.push_back(fmt::format(
                    "splitting {:.6g} Hz at bias {:.6f} outside detection "
                    "band, dropped",
                    crossing->splitting_hz, crossing->center_bias));
                continue;
            }
            out.crossings.push_back(*crossing);
        }
    }
    std::stable_sort(out.crossings.begin(), out.crossings.end(),
                     [](const AvoidedCrossing &a, const AvoidedCrossing &b) {
                         return a.tls_frequency_hz < b.tls_frequency_hz;
                     });
    return out;
}

std::string scan_csv(const SpectroscopyScan &scan) {
    std::string out = "bias,branch_index,frequency_hz\n";
    for (std::size_t i = 0; i < scan.bias.size(); ++i) {
        for (std::size_t b = 0; b < scan.branches[i].size(); ++b) {
            out += fmt::format("{:.17g},{},{:.17g}\n", scan.bias[i], b,
                               scan.branches[i][b]);
        }
    }
    return out;
}

} // namespace tlsent::device
