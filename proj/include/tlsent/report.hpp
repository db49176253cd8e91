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
 * Run reports: a manifest echo, a table of scalar results and named CSV
 * attachments, written as report.txt and report.csv plus one file per
 * attachment.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tlsent::cli {

struct Metric {
    std::string name;
    std::string value; ///< numbers are formatted with %.17g
    std::string standard_error; ///< empty when not applicable
    std::string units;          ///< "dimensionless" when unitless
};

struct Attachment {
    std::string filename;
    std::string content;
};

class Report {
  public:
    void set_manifest(std::vector<std::pair<std::string, std::string>> entries);
    const std::vector<std::pair<std::string, std::string>> &manifest() const {
        return manifest_;
    }

    void add(std::string name, double value, std::string units = "dimensionless",
             std::optional<double> standard_error = std::nullopt);
    void add_integer(std::string name, std::uint64_t value,
                     std::string units = "count");
    void add_flag(std::string name, bool value);
    void add_label(std::string name, std::string value);
    const std::vector<Metric> &metrics() const { return metrics_; }
    /// Value of the named metric; throws Error when absent.
    const Metric &metric(const std::string &name) const;

    void note(std::string text);
    const std::vector<std::string> &notes() const { return notes_; }

    void attach(std::string filename, std::string content);
    const std::vector<Attachment> &attachments() const { return attachments_; }

  private:
    std::vector<std::pair<std::string, std::string>> manifest_;
    std::vector<Metric> metrics_;
    std::vector<std::string> notes_;
    std::vector<Attachment> attachments_;
};

std::string format_number(double value);

/// metric,value,stderr,units; fields containing commas or quotes are quoted.
std::string report_csv(const Report &report);
std::string report_txt(const Report &report);

/// Creates `dir` if needed and writes report.txt, report.csv and every
/// attachment. Throws IoError on failure.
void emit_report(const Report &report, const std::filesystem::path &dir);

} // namespace tlsent::cli
