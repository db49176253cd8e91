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

#include "tlsent/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "tlsent/error.hpp"
#include "tlsent/targets.hpp"

namespace tlsent::witness {

namespace {

const std::string kModule = "witness-ops";
constexpr double kDrop = 1e-12;

std::size_t weight(const std::vector<Direction> &f) {
    return static_cast<std::size_t>(
        std::count_if(f.begin(), f.end(),
                      [](Direction d) { return d != Direction::I; }));
}

PauliSum expand(const WitnessTerm &term) {
    PauliSum out = PauliSum::identity(0, term.coefficient);
    for (Direction d : term.factors) {
        out = tensor(out, direction_operator(d));
    }
    return out;
}

void check_range(std::size_t n, std::size_t lo, std::size_t hi,
                 std::string_view what) {
    if (n < lo || n > hi) {
        throw Error(kModule, fmt::format("{} needs {} <= N <= {}, got {}", what,
                                         lo, hi, n));
    }
}

} // namespace

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::I:
        return "i";
    case Direction::X:
        return "x";
    case Direction::Y:
        return "y";
    case Direction::Z:
        return "z";
    case Direction::ZpX:
        return "z+x";
    case Direction::ZmX:
        return "z-x";
    case Direction::ZpY:
        return "z+y";
    case Direction::ZmY:
        return "z-y";
    }
    return "?";
}

Direction direction_from_string(std::string_view text) {
    for (Direction d : {Direction::I, Direction::X, Direction::Y, Direction::Z,
                         Direction::ZpX, Direction::ZmX, Direction::ZpY,
                         Direction::ZmY}) {
        if (to_string(d) == text) {
            return d;
        }
    }
    throw ParseError(kModule, fmt::format("unknown basis label '{}'", text));
}

Direction direction_from_pauli(Pauli p) {
    switch (p) {
    case Pauli::I:
        return Direction::I;
    case Pauli::X:
        return Direction::X;
    case Pauli::Y:
        return Direction::Y;
    case Pauli::Z:
        return Direction::Z;
    }
    return Direction::I;
}

PauliSum direction_operator(Direction d) {
    const double r = 1.0 / std::sqrt(2.0);
    PauliSum out(1);
    auto put = [&](Pauli p, double c) { out.add(PauliString({p}), c); };
    switch (d) {
    case Direction::I:
        put(Pauli::I, 1.0);
        break;
    case Direction::X:
        put(Pauli::X, 1.0);
        break;
    case Direction::Y:
        put(Pauli::Y, 1.0);
        break;
    case Direction::Z:
        put(Pauli::Z, 1.0);
        break;
    case Direction::ZpX:
    case Direction::ZmX:
        put(Pauli::Z, r);
        put(Pauli::X, d == Direction::ZpX ? r : -r);
        break;
    case Direction::ZpY:
    case Direction::ZmY:
        put(Pauli::Z, r);
        put(Pauli::Y, d == Direction::ZpY ? r : -r);
        break;
    }
    return out;
}

WitnessOperator::WitnessOperator(std::string label, std::size_t num_qubits,
                                 std::vector<WitnessTerm> terms)
    : label_(std::move(label)), num_qubits_(num_qubits), pauli_(num_qubits) {
    std::map<std::vector<Direction>, double> merged;
    std::vector<std::vector<Direction>> order;
    for (auto &t : terms) {
        if (t.factors.size() != num_qubits) {
            throw Error(kModule, "witness term has the wrong number of factors");
        }
        auto [it, inserted] = merged.try_emplace(t.factors, 0.0);
        if (inserted) {
            order.push_back(t.factors);
        }
        it->second += t.coefficient;
    }
    for (auto &f : order) {
        const double c = merged[f];
        if (std::abs(c) > kDrop) {
            terms_.push_back({c, std::move(f)});
        }
    }
    for (const auto &t : terms_) {
        pauli_ += expand(t);
    }
    pauli_ = pauli_.pruned(kDrop);
}

WitnessOperator WitnessOperator::from_pauli_sum(std::string label,
                                                const PauliSum &sum) {
    if (sum.max_imaginary() > kDrop) {
        throw Error(kModule, "witness coefficients must be real");
    }
    std::vector<WitnessTerm> terms;
    terms.reserve(sum.size());
    for (const auto &[p, c] : sum.terms()) {
        WitnessTerm t{c.real(), {}};
        for (Pauli f : p.factors()) {
            t.factors.push_back(direction_from_pauli(f));
        }
        terms.push_back(std::move(t));
    }
    return WitnessOperator(std::move(label), sum.num_qubits(), std::move(terms));
}

std::string MeasurementSetting::descriptor() const {
    std::string out;
    for (std::size_t q = 0; q < bases.size(); ++q) {
        if (q > 0) {
            out += ' ';
        }
        out += to_string(bases[q]);
    }
    return out;
}

Matrix w_witness_matrix(std::size_t n) {
    check_range(n, 2, 10, "W witness");
    const auto w = w_state(n);
    Eigen::Map<const Eigen::VectorXcd> v(w.amplitudes().data(),
                                          static_cast<Eigen::Index>(w.dimension()));
    const auto dim = static_cast<Eigen::Index>(w.dimension());
    Matrix m = Matrix::Identity(dim, dim) *
               (static_cast<double>(n - 1) / static_cast<double>(n));
    m -= v * v.adjoint();
    return m;
}

WitnessOperator w_witness_generic(std::size_t n) {
    return WitnessOperator::from_pauli_sum(
        fmt::format("W_{}", n), pauli_decompose(w_witness_matrix(n), kDrop));
}

WitnessOperator w3_witness_decomposed() {
    using D = Direction;
    std::vector<WitnessTerm> terms;
    const double s = 1.0 / 24.0;
    terms.push_back({17 * s, {D::I, D::I, D::I}});
    terms.push_back({7 * s, {D::Z, D::Z, D::Z}});
    for (std::size_t q = 0; q < 3; ++q) {
        std::vector<D> f(3, D::I);
        f[q] = D::Z;
        terms.push_back({3 * s, f});
        std::vector<D> g(3, D::Z);
        g[q] = D::I;
        terms.push_back({5 * s, g});
    }
    for (D eta : {D::ZpX, D::ZmX, D::ZpY, D::ZmY}) {
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<D> f(3, D::I);
            double c = -s;
            for (std::size_t q = 0; q < 3; ++q) {
                if (mask & (1U << q)) {
                    f[q] = eta;
                    c *= std::sqrt(2.0);
                }
            }
            terms.push_back({c, f});
        }
    }
    return WitnessOperator("W_3", 3, std::move(terms));
}

StabilizerSet cluster_stabilizers(std::size_t n) {
    check_range(n, 2, kMaxQubits, "cluster stabilizers");
    StabilizerSet set;
    for (std::size_t k = 0; k < n; ++k) {
        PauliString s(n);
        s.set(k, Pauli::X);
        if (k > 0) {
            s.set(k - 1, Pauli::Z);
        }
        if (k + 1 < n) {
            s.set(k + 1, Pauli::Z);
        }
        set.generators.push_back(std::move(s));
    }
    return set;
}

WitnessOperator cluster_witness(std::size_t n, ClusterForm form) {
    check_range(n, 2, 10, "cluster witness");
    const auto stabilizers = cluster_stabilizers(n);
    const PauliSum id = PauliSum::identity(n);
    // Generator index k is 0-based; "odd" k in 1-based counting is even here.
    auto product = [&](std::size_t parity) {
        PauliSum p = id;
        for (std::size_t k = parity; k < n; k += 2) {
            PauliSum factor = PauliSum::from(stabilizers.generators[k]);
            if (form == ClusterForm::Projector) {
                factor += id;
            }
            p = p * (factor * 0.5);
        }
        return p;
    };
    PauliSum w = id * 3.0;
    w -= (product(1) + product(0)) * 2.0;
    return WitnessOperator::from_pauli_sum(
        fmt::format("C_{}{}", n, form == ClusterForm::Projector ? "" : "_literal"),
        w.pruned(kDrop));
}

std::vector<MeasurementSetting> group_settings(const WitnessOperator &w) {
    const auto &terms = w.terms();
    const std::size_t n = w.num_qubits();
    std::vector<std::size_t> order(terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return weight(terms[a].factors) > weight(terms[b].factors);
    });

    using Partial = std::vector<std::optional<Direction>>;
    std::vector<Partial> partial;
    std::vector<std::vector<std::size_t>> covered;
    std::vector<std::size_t> identity_terms;
    for (std::size_t idx : order) {
        const auto &f = terms[idx].factors;
        if (weight(f) == 0) {
            identity_terms.push_back(idx);
            continue;
        }
        std::size_t s = 0;
        for (; s < partial.size(); ++s) {
            bool ok = true;
            for (std::size_t q = 0; q < n && ok; ++q) {
                ok = f[q] == Direction::I || !partial[s][q] ||
                     *partial[s][q] == f[q];
            }
            if (ok) {
                break;
            }
        }
        if (s == partial.size()) {
            partial.emplace_back(n);
            covered.emplace_back();
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (f[q] != Direction::I) {
                partial[s][q] = f[q];
            }
        }
        covered[s].push_back(idx);
    }
    if (partial.empty() && !identity_terms.empty()) {
        partial.emplace_back(n);
        covered.emplace_back();
    }
    std::vector<MeasurementSetting> out;
    for (std::size_t s = 0; s < partial.size(); ++s) {
        MeasurementSetting setting;
        for (const auto &b : partial[s]) {
            setting.bases.push_back(b.value_or(Direction::Z));
        }
        setting.covered_terms = std::move(covered[s]);
        if (s == 0) {
            setting.covered_terms.insert(setting.covered_terms.end(),
                                         identity_terms.begin(),
                                         identity_terms.end());
        }
        std::sort(setting.covered_terms.begin(), setting.covered_terms.end());
        out.push_back(std::move(setting));
    }
    return out;
}

double witness_value_exact(const StateVector &state, const WitnessOperator &w) {
    if (state.num_qubits() != w.num_qubits()) {
        throw Error(kModule, fmt::format("state has {} qubits, witness {}",
                                         state.num_qubits(), w.num_qubits()));
    }
    return expectation(state, w.pauli_form());
}

double witness_value_exact(const DensityMatrix &rho, const WitnessOperator &w) {
    if (rho.num_qubits() != w.num_qubits()) {
        throw Error(kModule, fmt::format("state has {} qubits, witness {}",
                                         rho.num_qubits(), w.num_qubits()));
    }
    return expectation(rho, w.pauli_form());
}

std::string terms_csv(const WitnessOperator &w) {
    std::string out = "coefficient,pauli_string\n";
    for (const auto &[p, c] : w.pauli_form().terms()) {
        out += fmt::format("{:.17g},{}\n", c.real(), p.to_string());
    }
    return out;
}

} // namespace tlsent::witness
