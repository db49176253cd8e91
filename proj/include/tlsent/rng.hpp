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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tlsent {

/// Seed for the stream named `purpose` under a run seed. Streams with
/// different labels are statistically independent; the mapping is stable
/// across platforms.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view purpose);

inline std::mt19937_64 make_stream(std::uint64_t seed,
                                   std::string_view purpose) {
    return std::mt19937_64(derive_stream_seed(seed, purpose));
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
/// Unlike std::uniform_real_distribution the result is fixed by the engine.
inline double uniform01(std::mt19937_64 &engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

} // namespace tlsent
