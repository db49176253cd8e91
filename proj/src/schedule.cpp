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

#include "tlsent/schedule.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "tlsent/error.hpp"

namespace tlsent::protocol {

namespace {

const std::string kModule = "protocols";

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

class LineParser {
  public:
    LineParser(std::string_view line, std::size_t number)
        : number_(number) {
        std::istringstream in{std::string(line)};
        std::string tok;
        while (in >> tok) {
            tokens_.push_back(tok);
        }
    }

    bool empty() const { return tokens_.empty(); }
    const std::string &keyword() const { return tokens_.front(); }

    void expect_args(std::size_t n) const {
        if (tokens_.size() != n + 1) {
            fail(fmt::format("{} takes {} argument(s)", keyword(), n));
        }
    }

    const std::string &arg(std::size_t i) const { return tokens_.at(i + 1); }

    std::string value(std::size_t arg, std::string_view key) const {
        const std::string &tok = tokens_.at(arg + 1);
        const std::string prefix = std::string(key) + "=";
        if (tok.rfind(prefix, 0) != 0) {
            fail(fmt::format("expected {}<value>, got '{}'", prefix, tok));
        }
        return tok.substr(prefix.size());
    }

    double number(std::string_view text, std::string_view suffix = {}) const {
        if (text.size() < suffix.size() ||
            text.substr(text.size() - suffix.size()) != suffix) {
            fail(fmt::format("'{}' lacks unit suffix '{}'", text, suffix));
        }
        text.remove_suffix(suffix.size());
        double v = 0.0;
        const auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            fail(fmt::format("'{}' is not a number", text));
        }
        return v;
    }

    int integer(std::string_view text) const {
        int v = 0;
        const auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            fail(fmt::format("'{}' is not an integer", text));
        }
        return v;
    }

    [[noreturn]] void fail(const std::string &why) const {
        throw ParseError(kModule,
                         fmt::format("schedule line {}: {}", number_, why));
    }

  private:
    std::size_t number_;
    std::vector<std::string> tokens_;
};

} // namespace

char to_char(Axis axis) {
    switch (axis) {
    case Axis::X:
        return 'x';
    case Axis::Y:
        return 'y';
    case Axis::Z:
        return 'z';
    }
    return '?';
}

void validate(const PulseSchedule &schedule, std::size_t num_tls,
              bool allow_measure) {
    if (schedule.preparation_steps > schedule.steps.size()) {
        throw Error(kModule, "preparation length exceeds schedule length");
    }
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto where = fmt::format("step {}", i);
        std::visit(
            Overloaded{
                [&](const ResonantWindow &w) {
                    if (w.tls < 1 || static_cast<std::size_t>(w.tls) > num_tls) {
                        throw Error(kModule,
                                    fmt::format("{}: TLS index {} outside 1..{}",
                                                where, w.tls, num_tls));
                    }
                    if (!(w.duration >= 0.0) || !std::isfinite(w.duration)) {
                        throw Error(kModule,
                                    fmt::format("{}: invalid duration {}", where,
                                                w.duration));
                    }
                },
                [&](const BusRotation &r) {
                    if (!std::isfinite(r.angle)) {
                        throw Error(kModule,
                                    fmt::format("{}: non-finite angle", where));
                    }
                },
                [](const BusReset &) {},
                [](const BusExcite &) {},
                [&](const Measure &m) {
                    if (!allow_measure) {
                        throw Error(kModule,
                                    fmt::format("{}: measurement inside a "
                                                "generation schedule",
                                                where));
                    }
                    if (m.target < 0 ||
                        static_cast<std::size_t>(m.target) > num_tls) {
                        throw Error(kModule,
                                    fmt::format("{}: qubit {} outside 0..{}",
                                                where, m.target, num_tls));
                    }
                },
            },
            schedule.steps[i]);
    }
}

std::string to_text(const Instruction &step) {
    return std::visit(
        Overloaded{
            [](const ResonantWindow &w) {
                return fmt::format("WINDOW j={} t={:.17g}ns", w.tls,
                                   w.duration * 1e9);
            },
            [](const BusRotation &r) {
                return fmt::format("ROT axis={} angle={:.17g}", to_char(r.axis),
                                   r.angle);
            },
            [](const BusReset &) { return std::string("RESET"); },
            [](const BusExcite &) { return std::string("EXCITE"); },
            [](const Measure &m) { return fmt::format("MEASURE q={}", m.target); },
        },
        step);
}

std::string to_text(const PulseSchedule &schedule) {
    std::string out;
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        if (i == schedule.preparation_steps && i > 0) {
            out += "PHASE generation\n";
        }
        out += to_text(schedule.steps[i]);
        out += '\n';
    }
    if (schedule.preparation_steps == schedule.steps.size() &&
        schedule.preparation_steps > 0) {
        out += "PHASE generation\n";
    }
    return out;
}

PulseSchedule parse_schedule(std::string_view text) {
    PulseSchedule schedule;
    bool phase_seen = false;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const LineParser p(line, number);
        if (p.empty()) {
            continue;
        }
        const std::string &kw = p.keyword();
        if (kw == "WINDOW") {
            p.expect_args(2);
            schedule.steps.emplace_back(ResonantWindow{
                p.integer(p.value(0, "j")), p.number(p.value(1, "t"), "ns") * 1e-9});
        } else if (kw == "ROT") {
            p.expect_args(2);
            const std::string axis = p.value(0, "axis");
            Axis a{};
            if (axis == "x") {
                a = Axis::X;
            } else if (axis == "y") {
                a = Axis::Y;
            } else if (axis == "z") {
                a = Axis::Z;
            } else {
                p.fail(fmt::format("unknown axis '{}'", axis));
            }
            schedule.steps.emplace_back(
                BusRotation{a, p.number(p.value(1, "angle"))});
        } else if (kw == "RESET") {
            p.expect_args(0);
            schedule.steps.emplace_back(BusReset{});
        } else if (kw == "EXCITE") {
            p.expect_args(0);
            schedule.steps.emplace_back(BusExcite{});
        } else if (kw == "MEASURE") {
            p.expect_args(1);
            schedule.steps.emplace_back(Measure{p.integer(p.value(0, "q"))});
        } else if (kw == "PHASE") {
            p.expect_args(1);
            if (phase_seen) {
                p.fail("PHASE given twice");
            }
            if (p.arg(0) != "generation") {
                p.fail("only 'PHASE generation' is recognised");
            }
            phase_seen = true;
            schedule.preparation_steps = schedule.steps.size();
        } else {
            p.fail(fmt::format("unknown instruction '{}'", kw));
        }
    }
    return schedule;
}

} // namespace tlsent::protocol
