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
 * Pauli strings and weighted sums of Pauli strings.
 *
 * Convention: factor k acts on qubit k, and Z|0> = +|0> (Z|g> = +|g>).
 * Text form lists factors left to right starting at qubit 0, so "XZI" is
 * X on qubit 0 and Z on qubit 1.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tlsent {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits)
        : factors_(num_qubits, Pauli::I) {}
    explicit PauliString(std::vector<Pauli> factors)
        : factors_(std::move(factors)) {}

    static PauliString parse(std::string_view text);
    static PauliString single(std::size_t num_qubits, std::size_t qubit,
                              Pauli p);

    std::size_t num_qubits() const noexcept { return factors_.size(); }
    Pauli operator[](std::size_t q) const { return factors_.at(q); }
    void set(std::size_t q, Pauli p) { factors_.at(q) = p; }
    const std::vector<Pauli> &factors() const noexcept { return factors_; }

    std::size_t weight() const;
    bool is_identity() const { return weight() == 0; }

    /// Bit q set where the factor flips the computational basis (X or Y).
    std::uint64_t x_mask() const;
    /// Bit q set where the factor carries a Z sign (Z or Y).
    std::uint64_t z_mask() const;
    int y_count() const;

    bool commutes_with(const PauliString &other) const;

    /// Action on a basis index: P|b> = phase * |b ^ x_mask>.
    std::pair<Complex, std::uint64_t> apply_to_basis(std::uint64_t b) const;

    std::string to_string() const;

    auto operator<=>(const PauliString &) const = default;

  private:
    std::vector<Pauli> factors_;
};

/// a * b = phase * result.
std::pair<Complex, PauliString> multiply(const PauliString &a,
                                         const PauliString &b);

/// Tensor product with `a` on the low qubits and `b` above it.
PauliString tensor(const PauliString &a, const PauliString &b);

/// Complex-weighted sum of Pauli strings on a fixed number of qubits.
/// Terms are kept in a sorted map, so iteration order is deterministic.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}

    static PauliSum identity(std::size_t num_qubits, Complex scale = 1.0);
    static PauliSum from(const PauliString &p, Complex coefficient = 1.0);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::map<PauliString, Complex> &terms() const noexcept {
        return terms_;
    }
    std::size_t size() const noexcept { return terms_.size(); }

    void add(const PauliString &p, Complex coefficient);

    /// Drops terms whose coefficient magnitude is at most `threshold`.
    PauliSum pruned(double threshold) const;
    Complex coefficient(const PauliString &p) const;

    PauliSum &operator+=(const PauliSum &other);
    PauliSum &operator-=(const PauliSum &other);
    PauliSum &operator*=(Complex scale);

    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum &b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
    friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
    friend PauliSum operator*(const PauliSum &a, const PauliSum &b);

    /// Largest |imag| over all coefficients.
    double max_imaginary() const;

  private:
    std::size_t num_qubits_ = 0;
    std::map<PauliString, Complex> terms_;
};

PauliSum tensor(const PauliSum &a, const PauliSum &b);

} // namespace tlsent
