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

#include "tlsent/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tlsent/error.hpp"

namespace tlsent {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_power(int k) {
    switch (((k % 4) + 4) % 4) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

// Single-qubit product table: a*b = i^phase * result.
std::pair<int, Pauli> multiply_single(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {0, b};
    }
    if (b == Pauli::I) {
        return {0, a};
    }
    if (a == b) {
        return {0, Pauli::I};
    }
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    const auto result = static_cast<Pauli>(6 - ia - ib);
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    return {cyclic ? 1 : 3, result};
}

void check_same_size(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error("core-state", "Pauli operands act on " + std::to_string(a) +
                                      " and " + std::to_string(b) +
                                      " qubits");
    }
}

} // namespace

char to_char(Pauli p) {
    constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
    return kChars[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I':
    case 'i':
    case '_':
        return Pauli::I;
    case 'X':
    case 'x':
        return Pauli::X;
    case 'Y':
    case 'y':
        return Pauli::Y;
    case 'Z':
    case 'z':
        return Pauli::Z;
    default:
        throw ParseError("core-state",
                         std::string("unknown Pauli label '") + c + "'");
    }
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<Pauli> factors;
    factors.reserve(text.size());
    for (char c : text) {
        factors.push_back(pauli_from_char(c));
    }
    if (factors.empty()) {
        throw ParseError("core-state", "empty Pauli string");
    }
    return PauliString(std::move(factors));
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit,
                                Pauli p) {
    PauliString s(num_qubits);
    s.set(qubit, p);
    return s;
}

std::size_t PauliString::weight() const {
    return static_cast<std::size_t>(
        std::count_if(factors_.begin(), factors_.end(),
                      [](Pauli p) { return p != Pauli::I; }));
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < factors_.size(); ++q) {
        if (factors_[q] == Pauli::X || factors_[q] == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < factors_.size(); ++q) {
        if (factors_[q] == Pauli::Z || factors_[q] == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

int PauliString::y_count() const {
    return static_cast<int>(std::count(factors_.begin(), factors_.end(),
                                       Pauli::Y));
}

bool PauliString::commutes_with(const PauliString &other) const {
    check_same_size(num_qubits(), other.num_qubits());
    const int anti = std::popcount(x_mask() & other.z_mask()) +
                     std::popcount(z_mask() & other.x_mask());
    return anti % 2 == 0;
}

std::pair<Complex, std::uint64_t>
PauliString::apply_to_basis(std::uint64_t b) const {
    // Y = iXZ, so P|b> = i^{#Y} (-1)^{|b & z|} |b ^ x>.
    Complex phase = i_power(y_count());
    if (std::popcount(b & z_mask()) % 2 == 1) {
        phase = -phase;
    }
    return {phase, b ^ x_mask()};
}

std::string PauliString::to_string() const {
    std::string s;
    s.reserve(factors_.size());
    for (Pauli p : factors_) {
        s.push_back(to_char(p));
    }
    return s;
}

std::pair<Complex, PauliString> multiply(const PauliString &a,
                                         const PauliString &b) {
    check_same_size(a.num_qubits(), b.num_qubits());
    int phase = 0;
    std::vector<Pauli> out(a.num_qubits());
    for (std::size_t q = 0; q < a.num_qubits(); ++q) {
        auto [ph, p] = multiply_single(a[q], b[q]);
        phase += ph;
        out[q] = p;
    }
    return {i_power(phase), PauliString(std::move(out))};
}

PauliString tensor(const PauliString &a, const PauliString &b) {
    std::vector<Pauli> out = a.factors();
    out.insert(out.end(), b.factors().begin(), b.factors().end());
    return PauliString(std::move(out));
}

PauliSum PauliSum::identity(std::size_t num_qubits, Complex scale) {
    PauliSum s(num_qubits);
    s.add(PauliString(num_qubits), scale);
    return s;
}

PauliSum PauliSum::from(const PauliString &p, Complex coefficient) {
    PauliSum s(p.num_qubits());
    s.add(p, coefficient);
    return s;
}

void PauliSum::add(const PauliString &p, Complex coefficient) {
    check_same_size(num_qubits_, p.num_qubits());
    terms_[p] += coefficient;
}

PauliSum PauliSum::pruned(double threshold) const {
    PauliSum out(num_qubits_);
    for (const auto &[p, c] : terms_) {
        if (std::abs(c) > threshold) {
            out.terms_.emplace(p, c);
        }
    }
    return out;
}

Complex PauliSum::coefficient(const PauliString &p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex{} : it->second;
}

PauliSum &PauliSum::operator+=(const PauliSum &other) {
    check_same_size(num_qubits_, other.num_qubits_);
    for (const auto &[p, c] : other.terms_) {
        terms_[p] += c;
    }
    return *this;
}

PauliSum &PauliSum::operator-=(const PauliSum &other) {
    check_same_size(num_qubits_, other.num_qubits_);
    for (const auto &[p, c] : other.terms_) {
        terms_[p] -= c;
    }
    return *this;
}

PauliSum &PauliSum::operator*=(Complex scale) {
    for (auto &[p, c] : terms_) {
        c *= scale;
    }
    return *this;
}

PauliSum operator*(const PauliSum &a, const PauliSum &b) {
    check_same_size(a.num_qubits_, b.num_qubits_);
    PauliSum out(a.num_qubits_);
    for (const auto &[pa, ca] : a.terms_) {
        for (const auto &[pb, cb] : b.terms_) {
            auto [phase, p] = multiply(pa, pb);
            out.terms_[p] += phase * ca * cb;
        }
    }
    return out;
}

double PauliSum::max_imaginary() const {
    double m = 0.0;
    for (const auto &[p, c] : terms_) {
        m = std::max(m, std::abs(c.imag()));
    }
    return m;
}

PauliSum tensor(const PauliSum &a, const PauliSum &b) {
    PauliSum out(a.num_qubits() + b.num_qubits());
    for (const auto &[pa, ca] : a.terms()) {
        for (const auto &[pb, cb] : b.terms()) {
            out.add(tensor(pa, pb), ca * cb);
        }
    }
    return out;
}

} // namespace tlsent
