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
 * Dense state vector of the bus + TLS register.
 *
 * Qubit 0 is the phase qubit (bus); qubits 1..N are the TLSs. Bit k of a
 * basis index is the state of qubit k, with 0 meaning |0>/|g> and 1 meaning
 * |1>/|e>. Global phase is kept as computed and never normalized away.
 */

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tlsent/pauli.hpp"

namespace tlsent {

inline constexpr std::size_t kMaxQubits = 16;
inline constexpr double kNormTolerance = 1e-12;

enum class Level : std::uint8_t { Ground = 0, Excited = 1 };

/// Two complex amplitudes (|0>, |1>) of a single-qubit factor.
using QubitState = std::array<Complex, 2>;

class StateVector {
  public:
    /// Takes ownership of `amplitudes`; length must be 2^num_qubits and the
    /// vector must be normalized to within `norm_tolerance`.
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes,
                double norm_tolerance = 1e-10);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex amplitude(std::uint64_t index) const {
        return amplitudes_.at(index);
    }

    /// Squared norm, sum of |amplitude|^2.
    double norm_squared() const;

    /// Probability that `qubit` is found in |1>.
    double excited_probability(std::size_t qubit) const;

    /// In-place application of a 2^k x 2^k unitary to `targets`. Local index
    /// bit i of the gate corresponds to targets[i].
    void apply(const Eigen::Ref<const Eigen::MatrixXcd> &gate,
               std::span<const std::size_t> targets);

    /// In-place single-qubit unitary without validation; used by hot loops
    /// that construct their gates from closed forms.
    void apply_single(const std::array<Complex, 4> &m, std::size_t qubit);

    /// Multiplies every amplitude by `phase`.
    void scale(Complex phase);

    /// Rescales to unit norm; callers are responsible for the branch having
    /// non-negligible weight.
    void renormalize();

    /// Raw mutable access for kernels that preserve the norm.
    std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }

    bool operator==(const StateVector &) const = default;

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Basis state from per-qubit labels; qubit 0 first.
StateVector init_basis_state(std::span<const Level> labels);

/// Basis state from text labels, e.g. "0ge" or "0,g,e". Accepts 0/g and
/// 1/e; commas and spaces are ignored.
StateVector init_basis_state(std::string_view labels);

/// Tensor product of single-qubit states; factors[k] is qubit k. Each factor
/// is normalized.
StateVector product_state(std::span<const QubitState> factors);

/// Applies `gate` to a copy of `state`. Validates target range, duplicates,
/// dimensions, and unitarity (max |U^dag U - I| <= 1e-12).
StateVector apply_unitary(StateVector state,
                          const Eigen::Ref<const Eigen::MatrixXcd> &gate,
                          std::span<const std::size_t> targets);

/// <a|b>
Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2
double fidelity(const StateVector &a, const StateVector &b);

/// <psi|P|psi>
double expectation(const StateVector &state, const PauliString &p);

/// <psi|H|psi> for a weighted sum; the imaginary part is discarded after
/// checking it is below 1e-10 relative to the coefficient scale.
double expectation(const StateVector &state, const PauliSum &sum);

/// P|psi> as a raw (possibly unnormalized, in general) amplitude vector.
std::vector<Complex> apply_pauli(const StateVector &state,
                                 const PauliString &p);

} // namespace tlsent
