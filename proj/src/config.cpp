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


#include "tlsent/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "tlsent/error.hpp"

namespace tlsent::cli {

namespace {

using nlohmann::json;

const std::string kModule = "config";

void reject_unknown(const json &obj, const std::set<std::string> &allowed,
                    const std::string &where) {
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ParseError(kModule,
                             fmt::format("unknown key '{}' in {}", key, where));
        }
    }
}

const json &require(const json &obj, const std::string &key,
                    const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(kModule,
                         fmt::format("missing key '{}' in {}", key, where));
    }
    return *it;
}

double number(const json &obj, const std::string &key,
              const std::string &where) {
    const json &v = require(obj, key, where);
    if (!v.is_number()) {
        throw ParseError(kModule,
                         fmt::format("{}.{} must be a number", where, key));
    }
    return v.get<double>();
}

} // namespace

device::DeviceConfig parse_config(std::string_view text,
                                  std::vector<std::string> *warnings) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(kModule, fmt::format("malformed JSON: {}", e.what()));
    }
    if (!root.is_object()) {
        throw ParseError(kModule, "top level must be an object");
    }
    reject_unknown(root, {"device", "tls"}, "top level");

    const json &dev = require(root, "device", "top level");
    if (!dev.is_object()) {
        throw ParseError(kModule, "device must be an object");
    }
    reject_unknown(dev, {"omega10_ghz", "readout_fidelity", "plasma_ghz"},
                   "device");

    device::DeviceConfig config;
    config.omega10 = device::kTwoPi * 1e9 * number(dev, "omega10_ghz", "device");
    config.readout_fidelity = number(dev, "readout_fidelity", "device");
    if (dev.contains("plasma_ghz")) {
        config.bias.omega_p0 =
            device::kTwoPi * 1e9 * number(dev, "plasma_ghz", "device");
    }

    const json &list = require(root, "tls", "top level");
    if (!list.is_array()) {
        throw ParseError(kModule, "tls must be a list");
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json &entry = list[i];
        const std::string where = fmt::format("tls[{}]", i);
        if (!entry.is_object()) {
            throw ParseError(kModule, where + " must be an object");
        }
        reject_unknown(entry, {"id", "omega_r_ghz", "splitting_mhz"}, where);
        const json &id = require(entry, "id", where);
        if (!id.is_string() || id.get<std::string>().empty()) {
            throw ParseError(kModule, where + ".id must be a non-empty string");
        }
        device::TlsParams t;
        t.id = id.get<std::string>();
        if (!ids.insert(t.id).second) {
            throw ConfigError(fmt::format("duplicate TLS id '{}'", t.id),
                              {t.id});
        }
        t.omega_r = device::kTwoPi * 1e9 * number(entry, "omega_r_ghz", where);
        t.coupling = device::coupling_from_splitting(
            1e6 * number(entry, "splitting_mhz", where));
        config.tls.push_back(std::move(t));
    }

    device::sort_tls(config);
    auto w = device::validate(config, true);
    if (warnings) {
        warnings->insert(warnings->end(), w.begin(), w.end());
    }
    return config;
}

device::DeviceConfig load_config(const std::filesystem::path &path,
                                 std::vector<std::string> *warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(kModule,
                         fmt::format("cannot read config '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), warnings);
}

} // namespace tlsent::cli
