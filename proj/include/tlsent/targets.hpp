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

#include <span>

#include "tlsent/state_vector.hpp"

namespace tlsent {

/// (1/sqrt(n)) sum_l |g..e_l..g>, all amplitudes real and positive.
StateVector w_state(std::size_t n);

/// Linear cluster state in the stabilizer convention: the joint +1
/// eigenstate of X_1 Z_2, Z_{j-1} X_j Z_{j+1}, Z_{n-1} X_n. Amplitudes are
/// 2^{-n/2} (-1)^{sum_j b_j b_{j+1}} with b_j = 1 for |e>.
StateVector cluster_state(std::size_t n);

/// The product-form cluster ket 2^{-n/2} (x)_j (|g>_j Z_{j+1} + |e>_j)
/// evaluated literally with Z|g> = +|g>. Equals Z_2...Z_n |cluster_state(n)>.
StateVector cluster_state_literal(std::size_t n);

/// (|ge> + |eg>)/sqrt(2) on two qubits.
StateVector bell_state();

/// Places an m-qubit TLS state into a register of `num_tls` TLSs plus the
/// bus: bus in |0>, tls_state qubit i on TLS tls_indices[i] (1-based), every
/// other TLS in |g>.
StateVector embed_register(const StateVector &tls_state,
                           std::span<const int> tls_indices,
                           std::size_t num_tls);

/// Inverse of embed_register: the amplitudes of the listed TLSs with the bus
/// and all other TLSs in the ground state, renormalized. Throws if that
/// component carries less than 1 - 1e-9 of the weight.
StateVector extract_register(const StateVector &full,
                             std::span<const int> tls_indices);

/// Consecutive TLS indices 1..n.
std::vector<int> first_tls(std::size_t n);

} // namespace tlsent
