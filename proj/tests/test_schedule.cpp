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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "tlsent/error.hpp"
#include "tlsent/schedule.hpp"

using namespace tlsent;
using namespace tlsent::protocol;

TEST_CASE("text form of each instruction", "[protocols][schedule]") {
    CHECK(to_text(Instruction{ResonantWindow{3, 12.5e-9}}) == "WINDOW j=3 t=12.5ns");
    CHECK(to_text(Instruction{BusRotation{Axis::Z, 1.5}}) == "ROT axis=z angle=1.5");
    CHECK(to_text(Instruction{BusReset{}}) == "RESET");
    CHECK(to_text(Instruction{BusExcite{}}) == "EXCITE");
    CHECK(to_text(Instruction{Measure{2}}) == "MEASURE q=2");
}

TEST_CASE("parsing the documented grammar", "[protocols][schedule]") {
    const auto s = parse_schedule("# prepare\n"
                                  "RESET\n"
                                  "ROT axis=x angle=-1.5707963267948966\n"
                                  "\n"
                                  "PHASE generation\n"
                                  "WINDOW j=3 t=12.5ns   # first window\n"
                                  "EXCITE\n");
    REQUIRE(s.steps.size() == 4);
    CHECK(s.preparation_steps == 2);
    CHECK(std::get<BusRotation>(s.steps[1]).axis == Axis::X);
    CHECK(std::get<BusRotation>(s.steps[1]).angle == -1.5707963267948966);
    const auto w = std::get<ResonantWindow>(s.steps[2]);
    CHECK(w.tls == 3);
    CHECK(w.duration == Catch::Approx(12.5e-9).epsilon(1e-15));
    CHECK(std::holds_alternative<BusExcite>(s.steps[3]));
}

TEST_CASE("schedules round-trip through text", "[protocols][schedule][property]") {
    oracle::Gen g(77);
    for (int trial = 0; trial < 200; ++trial) {
        PulseSchedule s;
        const std::size_t len = 1 + g.index(12);
        for (std::size_t i = 0; i < len; ++i) {
            switch (g.index(5)) {
            case 0:
                s.steps.emplace_back(ResonantWindow{1 + static_cast<int>(g.index(10)),
                                                    g.uniform(0.0, 1e-7)});
                break;
            case 1:
                s.steps.emplace_back(BusRotation{static_cast<Axis>(g.index(3)),
                                                 g.uniform(-7.0, 7.0)});
                break;
            case 2: s.steps.emplace_back(BusReset{}); break;
            case 3: s.steps.emplace_back(BusExcite{}); break;
            default: s.steps.emplace_back(Measure{static_cast<int>(g.index(11))});
            }
        }
        s.preparation_steps = g.index(len + 1);
        const auto back = parse_schedule(to_text(s));
        REQUIRE(back.steps.size() == s.steps.size());
        CHECK(back.preparation_steps == s.preparation_steps);
        for (std::size_t i = 0; i < len; ++i) {
            if (const auto *w = std::get_if<ResonantWindow>(&s.steps[i])) {
                const auto &b = std::get<ResonantWindow>(back.steps[i]);
                CHECK(b.tls == w->tls);
                CHECK(std::abs(b.duration - w->duration) <= 1e-15 * std::max(w->duration, 1e-9));
            } else {
                CHECK(back.steps[i] == s.steps[i]);
            }
        }
    }
}

TEST_CASE("parse errors carry the line number", "[protocols][schedule]") {
    auto line_of = [](std::string_view text) -> std::string {
        try {
            parse_schedule(text);
        } catch (const ParseError &e) {
            return e.what();
        }
        return "no error";
    };
    CHECK_THAT(line_of("RESET\nJUMP\n"), Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THAT(line_of("WINDOW j=1 t=3\n"), Catch::Matchers::ContainsSubstring("line 1"));
    CHECK_THAT(line_of("RESET\n\nROT axis=w angle=1\n"), Catch::Matchers::ContainsSubstring("line 3"));
    CHECK_THROWS_AS(parse_schedule("WINDOW j=x t=1ns"), ParseError);
    CHECK_THROWS_AS(parse_schedule("RESET now"), ParseError);
    CHECK_THROWS_AS(parse_schedule("PHASE generation\nPHASE generation"), ParseError);
    CHECK_THROWS_AS(parse_schedule("PHASE setup"), ParseError);
    CHECK_THROWS_AS(parse_schedule("ROT axis=z angle=abc"), ParseError);
}

TEST_CASE("schedule validation", "[protocols][schedule]") {
    PulseSchedule ok{{BusExcite{}, ResonantWindow{2, 1e-9}, BusRotation{Axis::Z, 1.0}}, 0};
    CHECK_NOTHROW(validate(ok, 2));
    CHECK_THROWS_AS(validate(ok, 1), Error);

    PulseSchedule negative{{ResonantWindow{1, -1e-9}}, 0};
    CHECK_THROWS_AS(validate(negative, 3), Error);
    PulseSchedule nan{{BusRotation{Axis::X, std::numeric_limits<double>::quiet_NaN()}}, 0};
    CHECK_THROWS_AS(validate(nan, 3), Error);

    PulseSchedule measured{{BusExcite{}, Measure{1}}, 0};
    CHECK_THROWS_AS(validate(measured, 3), Error);
    CHECK_NOTHROW(validate(measured, 3, true));
    PulseSchedule far{{Measure{4}}, 0};
    CHECK_THROWS_AS(validate(far, 3, true), Error);

    PulseSchedule overlong{{BusReset{}}, 2};
    CHECK_THROWS_AS(validate(overlong, 3), Error);
}
