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
 * Dense operators: Hermitian generators, their exact propagators, density
 * matrices and the reductions between them. Units are angular frequency
 * (rad/s) with hbar = 1.
 */

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tlsent/pauli.hpp"
#include "tlsent/state_vector.hpp"

namespace tlsent {

using Matrix = Eigen::MatrixXcd;

/// Dense matrix of a Pauli string.
Matrix pauli_matrix(const PauliString &p);

/// Dense matrix of a weighted Pauli sum.
Matrix dense_matrix(const PauliSum &sum);

/// Pauli expansion M = sum_P c_P P with c_P = tr(P M) / 2^n, computed with a
/// Walsh-Hadamard transform per X-mask. Coefficients with magnitude at or
/// below `drop_below` are omitted.
PauliSum pauli_decompose(const Matrix &m, double drop_below = 1e-12);

class HermitianOperator {
  public:
    /// Validates shape and Hermiticity: max |H - H^dag| <= tol * max(1, |H|max).
    explicit HermitianOperator(Matrix entries, double tol = 1e-12);
    static HermitianOperator from_pauli_sum(const PauliSum &sum);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const Matrix &matrix() const noexcept { return entries_; }

  private:
    std::size_t num_qubits_;
    Matrix entries_;
};

/// Eigendecomposition of a Hermitian generator, reusable across times.
/// exp(-i H t) = V diag(exp(-i w t)) V^dag.
class Propagator {
  public:
    explicit Propagator(const HermitianOperator &generator);

    StateVector evolve(const StateVector &state, double t) const;
    Matrix unitary(double t) const;

    const Eigen::VectorXd &eigenvalues() const noexcept { return values_; }
    const Matrix &eigenvectors() const noexcept { return vectors_; }

  private:
    std::size_t num_qubits_;
    Eigen::VectorXd values_;
    Matrix vectors_;
};

/// exp(-i generator t) |state>, via exact diagonalization.
StateVector evolve(const StateVector &state, const HermitianOperator &generator,
                   double t);

class DensityMatrix {
  public:
    /// Validates Hermiticity and unit trace within `tol`.
    explicit DensityMatrix(Matrix rho, double tol = 1e-10);
    static DensityMatrix from_pure(const StateVector &state);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const Matrix &matrix() const noexcept { return rho_; }

    Complex trace() const { return rho_.trace(); }
    double purity() const;
    /// Eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const;
    /// Number of eigenvalues above `tol`.
    std::size_t rank(double tol = 1e-10) const;

  private:
    std::size_t num_qubits_;
    Matrix rho_;
};

/// Reduced density matrix over `keep`; keep[i] becomes qubit i of the result.
DensityMatrix partial_trace(const StateVector &state,
                            std::span<const std::size_t> keep);

/// <psi|rho|psi>
double fidelity(const DensityMatrix &rho, const StateVector &target);

double expectation(const DensityMatrix &rho, const PauliString &p);
double expectation(const DensityMatrix &rho, const PauliSum &sum);

} // namespace tlsent
