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
 * Entanglement witnesses for W and linear cluster states.
 *
 * A witness is held twice: as terms over local measurement directions,
 * which is what the measurement layer samples, and as the equivalent Pauli
 * sum used for exact evaluation and export.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tlsent/operators.hpp"
#include "tlsent/pauli.hpp"
#include "tlsent/state_vector.hpp"

namespace tlsent::witness {

/// Single-qubit observable with eigenvalues +-1 (or the identity). The
/// composite directions are (Z +- X)/sqrt(2) and (Z +- Y)/sqrt(2).
enum class Direction { I, X, Y, Z, ZpX, ZmX, ZpY, ZmY };

/// "i", "x", "y", "z", "z+x", "z-x", "z+y", "z-y".
std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view text);
Direction direction_from_pauli(Pauli p);
PauliSum direction_operator(Direction d);

struct WitnessTerm {
    double coefficient = 0.0;
    std::vector<Direction> factors; ///< one per qubit
};

class WitnessOperator {
  public:
    /// Terms with identical factor lists are merged; zero terms dropped.
    WitnessOperator(std::string label, std::size_t num_qubits,
                    std::vector<WitnessTerm> terms);

    /// One term per Pauli string. Coefficients must be real within 1e-12.
    static WitnessOperator from_pauli_sum(std::string label,
                                          const PauliSum &sum);

    const std::string &label() const noexcept { return label_; }
    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<WitnessTerm> &terms() const noexcept { return terms_; }
    const PauliSum &pauli_form() const noexcept { return pauli_; }
    Matrix dense() const { return dense_matrix(pauli_); }

  private:
    std::string label_;
    std::size_t num_qubits_;
    std::vector<WitnessTerm> terms_;
    PauliSum pauli_;
};

struct MeasurementSetting {
    std::vector<Direction> bases; ///< one non-identity direction per qubit
    std::vector<std::size_t> covered_terms;

    /// Bases joined by spaces, e.g. "x z x".
    std::string descriptor() const;
};

struct StabilizerSet {
    std::vector<PauliString> generators;
};

/// (n-1)/n I - |W_n><W_n| as a dense matrix.
Matrix w_witness_matrix(std::size_t n);

/// The dense W witness expanded into Pauli terms; 2 <= n <= 10.
WitnessOperator w_witness_generic(std::size_t n);

/// The five-setting decomposition of the three-qubit W witness,
/// (1/24)[17 III + 7 ZZZ + 3 (ZII + IZI + IIZ) + 5 (ZZI + ZIZ + IZZ)
///        - sum_{eta = +-x, +-y} (I + Z + eta)^{(x)3}],
/// with (I + Z +- eta) = I + sqrt(2) (Z +- eta)/sqrt(2) expanded per qubit.
WitnessOperator w3_witness_decomposed();

/// X1 Z2, Z_{j-1} X_j Z_{j+1}, Z_{n-1} X_n.
StabilizerSet cluster_stabilizers(std::size_t n);

enum class ClusterForm {
    Projector, ///< 3I - 2[prod_even (S_k + I)/2 + prod_odd (S_k + I)/2]
    Literal,   ///< 3I - 2[prod_even S_k/2 + prod_odd S_k/2]
};

WitnessOperator cluster_witness(std::size_t n,
                                ClusterForm form = ClusterForm::Projector);

/// Greedy grouping: terms in order of decreasing weight each join the
/// first setting that agrees with them on every qubit they act on, fixing
/// any still-open qubits; qubits left open at the end are measured in z.
/// Identity terms are attached to the first setting.
std::vector<MeasurementSetting> group_settings(const WitnessOperator &w);

double witness_value_exact(const StateVector &state, const WitnessOperator &w);
double witness_value_exact(const DensityMatrix &rho, const WitnessOperator &w);

/// CSV of the Pauli form with header coefficient,pauli_string.
std::string terms_csv(const WitnessOperator &w);

} // namespace tlsent::witness
