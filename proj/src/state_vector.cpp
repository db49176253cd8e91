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

#include "tlsent/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlsent/error.hpp"

namespace tlsent {

namespace {

const std::string kModule = "core-state";

void check_qubit_count(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw Error(kModule, "qubit count " + std::to_string(n) +
                                 " outside [1, " + std::to_string(kMaxQubits) +
                                 "]");
    }
}

void check_targets(std::span<const std::size_t> targets,
                   std::size_t num_qubits) {
    if (targets.empty()) {
        throw Error(kModule, "empty target list");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= num_qubits) {
            throw Error(kModule, "target qubit " + std::to_string(targets[i]) +
                                     " out of range for " +
                                     std::to_string(num_qubits) + " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw Error(kModule, "duplicate target qubit " +
                                         std::to_string(targets[i]));
            }
        }
    }
}

} // namespace

StateVector::StateVector(std::size_t num_qubits,
                         std::vector<Complex> amplitudes,
                         double norm_tolerance)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits);
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw Error(kModule, "amplitude array of length " +
                                 std::to_string(amplitudes_.size()) +
                                 " does not match " +
                                 std::to_string(num_qubits) + " qubits");
    }
    const double n2 = norm_squared();
    if (std::abs(n2 - 1.0) > norm_tolerance) {
        throw Error(kModule,
                    "state is not normalized (norm^2 = " + std::to_string(n2) +
                        ")");
    }
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const Complex &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::excited_probability(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw Error(kModule, "qubit " + std::to_string(qubit) + " out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if (i & bit) {
            p += std::norm(amplitudes_[i]);
        }
    }
    return p;
}

void StateVector::apply(const Eigen::Ref<const Eigen::MatrixXcd> &gate,
                        std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t local_dim = std::size_t{1} << k;
    std::vector<std::uint64_t> offsets(local_dim, 0);
    for (std::size_t l = 0; l < local_dim; ++l) {
        for (std::size_t i = 0; i < k; ++i) {
            if (l & (std::size_t{1} << i)) {
                offsets[l] |= std::uint64_t{1} << targets[i];
            }
        }
    }
    std::uint64_t target_mask = 0;
    for (std::size_t t : targets) {
        target_mask |= std::uint64_t{1} << t;
    }

    std::vector<Complex> in(local_dim);
    for (std::uint64_t base = 0; base < amplitudes_.size(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t l = 0; l < local_dim; ++l) {
            in[l] = amplitudes_[base | offsets[l]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < local_dim; ++c) {
                acc += gate(static_cast<Eigen::Index>(r),
                            static_cast<Eigen::Index>(c)) *
                       in[c];
            }
            amplitudes_[base | offsets[r]] = acc;
        }
    }
}

void StateVector::apply_single(const std::array<Complex, 4> &m,
                               std::size_t qubit) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = amplitudes_[i];
        const Complex a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::scale(Complex phase) {
    for (Complex &a : amplitudes_) {
        a *= phase;
    }
}

void StateVector::renormalize() {
    const double n = std::sqrt(norm_squared());
    for (Complex &a : amplitudes_) {
        a /= n;
    }
}

StateVector init_basis_state(std::span<const Level> labels) {
    if (labels.empty()) {
        throw Error(kModule, "empty label list");
    }
    check_qubit_count(labels.size());
    std::vector<Complex> amps(std::size_t{1} << labels.size());
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < labels.size(); ++q) {
        if (labels[q] == Level::Excited) {
            index |= std::uint64_t{1} << q;
        }
    }
    amps[index] = 1.0;
    return StateVector(labels.size(), std::move(amps));
}

StateVector init_basis_state(std::string_view labels) {
    std::vector<Level> levels;
    for (char c : labels) {
        switch (c) {
        case '0':
        case 'g':
        case 'G':
            levels.push_back(Level::Ground);
            break;
        case '1':
        case 'e':
        case 'E':
            levels.push_back(Level::Excited);
            break;
        case ',':
        case ' ':
        case '|':
        case '>':
            break;
        default:
            throw ParseError(kModule,
                             std::string("unknown level label '") + c + "'");
        }
    }
    return init_basis_state(levels);
}

StateVector product_state(std::span<const QubitState> factors) {
    if (factors.empty()) {
        throw Error(kModule, "empty factor list");
    }
    check_qubit_count(factors.size());
    std::vector<Complex> amps{1.0};
    amps.reserve(std::size_t{1} << factors.size());
    for (const QubitState &f : factors) {
        const double n = std::sqrt(std::norm(f[0]) + std::norm(f[1]));
        if (n == 0.0) {
            throw Error(kModule, "zero-norm qubit factor");
        }
        const Complex f0 = f[0] / n;
        const Complex f1 = f[1] / n;
        const std::size_t old = amps.size();
        amps.resize(2 * old);
        // New qubit is the highest bit.
        for (std::size_t i = 0; i < old; ++i) {
            amps[old + i] = amps[i] * f1;
            amps[i] *= f0;
        }
    }
    return StateVector(factors.size(), std::move(amps));
}

StateVector apply_unitary(StateVector state,
                          const Eigen::Ref<const Eigen::MatrixXcd> &gate,
                          std::span<const std::size_t> targets) {
    check_targets(targets, state.num_qubits());
    const auto local_dim = static_cast<Eigen::Index>(1) << targets.size();
    if (gate.rows() != local_dim || gate.cols() != local_dim) {
        throw Error(kModule, "gate dimension " + std::to_string(gate.rows()) +
                                 "x" + std::to_string(gate.cols()) +
                                 " does not match " +
                                 std::to_string(targets.size()) + " targets");
    }
    const Eigen::MatrixXcd defect =
        gate.adjoint() * gate -
        Eigen::MatrixXcd::Identity(local_dim, local_dim);
    const double deviation = defect.cwiseAbs().maxCoeff();
    if (deviation > 1e-12) {
        throw Error(kModule, "gate is not unitary (max |U^dag U - I| = " +
                                 std::to_string(deviation) + ")");
    }
    state.apply(gate, targets);
    return state;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw Error(kModule, "dimension mismatch in inner product");
    }
    Complex s{};
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t i = 0; i < aa.size(); ++i) {
        s += std::conj(aa[i]) * bb[i];
    }
    return s;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

std::vector<Complex> apply_pauli(const StateVector &state,
                                 const PauliString &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw Error(kModule, "Pauli string on " +
                                 std::to_string(p.num_qubits()) +
                                 " qubits applied to " +
                                 std::to_string(state.num_qubits()) +
                                 "-qubit state");
    }
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.size());
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        auto [phase, target] = p.apply_to_basis(b);
        out[target] = phase * amps[b];
    }
    return out;
}

double expectation(const StateVector &state, const PauliString &p) {
    const auto amps = state.amplitudes();
    const auto moved = apply_pauli(state, p);
    Complex s{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        s += std::conj(amps[i]) * moved[i];
    }
    return s.real();
}

double expectation(const StateVector &state, const PauliSum &sum) {
    if (sum.num_qubits() != state.num_qubits()) {
        throw Error(kModule, "operator on " + std::to_string(sum.num_qubits()) +
                                 " qubits evaluated on " +
                                 std::to_string(state.num_qubits()) +
                                 "-qubit state");
    }
    Complex total{};
    double scale = 0.0;
    const auto amps = state.amplitudes();
    for (const auto &[p, c] : sum.terms()) {
        scale += std::abs(c);
        const auto moved = apply_pauli(state, p);
        Complex s{};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            s += std::conj(amps[i]) * moved[i];
        }
        total += c * s;
    }
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, scale)) {
        throw Error(kModule, "operator is not Hermitian (imaginary expectation " +
                                 std::to_string(total.imag()) + ")");
    }
    return total.real();
}

} // namespace tlsent
