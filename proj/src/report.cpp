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


#include "tlsent/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <fmt/format.h>

#include "tlsent/error.hpp"

namespace tlsent::cli {

namespace {

const std::string kModule = "report";

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(kModule, fmt::format("cannot open '{}' for writing",
                                           path.string()));
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError(kModule, fmt::format("write to '{}' failed", path.string()));
    }
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void Report::set_manifest(
    std::vector<std::pair<std::string, std::string>> entries) {
    manifest_ = std::move(entries);
}

void Report::add(std::string name, double value, std::string units,
                 std::optional<double> standard_error) {
    metrics_.push_back(
        {std::move(name), format_number(value),
         standard_error ? format_number(*standard_error) : std::string{},
         std::move(units)});
}

void Report::add_integer(std::string name, std::uint64_t value,
                         std::string units) {
    metrics_.push_back(
        {std::move(name), std::to_string(value), {}, std::move(units)});
}

void Report::add_flag(std::string name, bool value) {
    metrics_.push_back({std::move(name), value ? "1" : "0", {}, "boolean"});
}

void Report::add_label(std::string name, std::string value) {
    metrics_.push_back({std::move(name), std::move(value), {}, "label"});
}

const Metric &Report::metric(const std::string &name) const {
    auto it = std::find_if(metrics_.begin(), metrics_.end(),
                           [&](const Metric &m) { return m.name == name; });
    if (it == metrics_.end()) {
        throw Error(kModule, fmt::format("no metric named '{}'", name));
    }
    return *it;
}

void Report::note(std::string text) { notes_.push_back(std::move(text)); }

void Report::attach(std::string filename, std::string content) {
    attachments_.push_back({std::move(filename), std::move(content)});
}

std::string report_csv(const Report &report) {
    std::string out = "metric,value,stderr,units\n";
    for (const auto &m : report.metrics()) {
        out += fmt::format("{},{},{},{}\n", csv_field(m.name), csv_field(m.value),
                           csv_field(m.standard_error), csv_field(m.units));
    }
    return out;
}

std::string report_txt(const Report &report) {
    std::string out = "tlsent report\n\n[manifest]\n";
    std::size_t kw = 0;
    for (const auto &[k, v] : report.manifest()) {
        kw = std::max(kw, k.size());
    }
    for (const auto &[k, v] : report.manifest()) {
        out += fmt::format("  {:<{}}  {}\n", k, kw, v);
    }

    std::size_t nw = 6, vw = 5, ew = 6;
    for (const auto &m : report.metrics()) {
        nw = std::max(nw, m.name.size());
        vw = std::max(vw, m.value.size());
        ew = std::max(ew, m.standard_error.size());
    }
    out += "\n[results]\n";
    out += fmt::format("  {:<{}}  {:>{}}  {:>{}}  {}\n", "metric", nw, "value",
                       vw, "stderr", ew, "units");
    for (const auto &m : report.metrics()) {
        out += fmt::format("  {:<{}}  {:>{}}  {:>{}}  {}\n", m.name, nw, m.value,
                           vw, m.standard_error, ew, m.units);
    }
    if (!report.notes().empty()) {
        out += "\n[notes]\n";
        for (const auto &n : report.notes()) {
            out += "  " + n + "\n";
        }
    }
    if (!report.attachments().empty()) {
        out += "\n[attachments]\n";
        for (const auto &a : report.attachments()) {
            out += "  " + a.filename + "\n";
        }
    }
    return out;
}

void emit_report(const Report &report, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError(kModule, fmt::format("cannot create output directory "
                                           "'{}'",
                                           dir.string()));
    }
    write_file(dir / "report.txt", report_txt(report));
    write_file(dir / "report.csv", report_csv(report));
    for (const auto &a : report.attachments()) {
        write_file(dir / a.filename, a.content);
    }
}

} // namespace tlsent::cli
