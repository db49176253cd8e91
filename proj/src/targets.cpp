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

#include "tlsent/targets.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "tlsent/error.hpp"

namespace tlsent {

namespace {

const std::string kModule = "core-state";

std::uint64_t register_mask(std::span<const int> tls_indices,
                            std::size_t num_qubits) {
    std::uint64_t mask = 0;
    for (int j : tls_indices) {
        if (j < 1 || static_cast<std::size_t>(j) >= num_qubits) {
            throw Error(kModule, "TLS index " + std::to_string(j) +
                                     " out of range");
        }
        const std::uint64_t bit = std::uint64_t{1} << j;
        if (mask & bit) {
            throw Error(kModule, "duplicate TLS index " + std::to_string(j));
        }
        mask |= bit;
    }
    return mask;
}

} // namespace

StateVector w_state(std::size_t n) {
    if (n == 0) {
        throw Error(kModule, "W state needs at least one qubit");
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t l = 0; l < n; ++l) {
        amps[std::size_t{1} << l] = a;
    }
    return StateVector(n, std::move(amps));
}

StateVector cluster_state(std::size_t n) {
    if (n < 2) {
        throw Error(kModule, "cluster state needs at least two qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Complex> amps(dim);
    const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
    for (std::uint64_t b = 0; b < dim; ++b) {
        const int links = std::popcount(b & (b >> 1));
        amps[b] = (links % 2 == 0) ? a : -a;
    }
    return StateVector(n, std::move(amps));
}

StateVector cluster_state_literal(std::size_t n) {
    if (n < 2) {
        throw Error(kModule, "cluster state needs at least two qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::uint64_t all = dim - 1;
    std::vector<Complex> amps(dim);
    const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
    for (std::uint64_t b = 0; b < dim; ++b) {
        // Factor j contributes Z_{j+1} exactly when qubit j is |g>.
        const int signs = std::popcount((~b & all) & (b >> 1));
        amps[b] = (signs % 2 == 0) ? a : -a;
    }
    return StateVector(n, std::move(amps));
}

StateVector bell_state() {
    std::vector<Complex> amps(4);
    amps[1] = amps[2] = 1.0 / std::sqrt(2.0);
    return StateVector(2, std::move(amps));
}

StateVector embed_register(const StateVector &tls_state,
                           std::span<const int> tls_indices,
                           std::size_t num_tls) {
    if (tls_indices.size() != tls_state.num_qubits()) {
        throw Error(kModule, "register index list does not match state size");
    }
    const std::size_t n = num_tls + 1;
    register_mask(tls_indices, n);
    std::vector<Complex> amps(std::size_t{1} << n);
    const auto src = tls_state.amplitudes();
    for (std::uint64_t b = 0; b < src.size(); ++b) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < tls_indices.size(); ++i) {
            if (b & (std::uint64_t{1} << i)) {
                idx |= std::uint64_t{1} << tls_indices[i];
            }
        }
        amps[idx] = src[b];
    }
    return StateVector(n, std::move(amps));
}

StateVector extract_register(const StateVector &full,
                             std::span<const int> tls_indices) {
    const std::uint64_t mask = register_mask(tls_indices, full.num_qubits());
    const std::size_t m = tls_indices.size();
    std::vector<Complex> amps(std::size_t{1} << m);
    const auto src = full.amplitudes();
    double weight = 0.0;
    for (std::uint64_t idx = 0; idx < src.size(); ++idx) {
        if (idx & ~mask) {
            continue;
        }
        std::uint64_t b = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (idx & (std::uint64_t{1} << tls_indices[i])) {
                b |= std::uint64_t{1} << i;
            }
        }
        amps[b] = src[idx];
        weight += std::norm(src[idx]);
    }
    if (weight < 1.0 - 1e-9) {
        throw Error(kModule, "register is entangled with the bus or spectators "
                             "(retained weight " +
                                 std::to_string(weight) + ")");
    }
    const double s = 1.0 / std::sqrt(weight);
    for (Complex &a : amps) {
        a *= s;
    }
    return StateVector(m, std::move(amps));
}

std::vector<int> first_tls(std::size_t n) {
    std::vector<int> out(n);
    std::iota(out.begin(), out.end(), 1);
    return out;
}

} // namespace tlsent
