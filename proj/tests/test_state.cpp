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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tlsent/error.hpp"
#include "tlsent/operators.hpp"
#include "tlsent/pauli.hpp"
#include "tlsent/state_vector.hpp"
#include "tlsent/targets.hpp"

using namespace tlsent;
using Catch::Approx;

namespace {

double max_diff(const oracle::V &a, const oracle::V &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

PauliString random_string(oracle::Gen &g, std::size_t n) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) {
        p.set(q, static_cast<Pauli>(g.index(4)));
    }
    return p;
}

} // namespace

TEST_CASE("basis states encode bit k as qubit k", "[core-state]") {
    const auto a = init_basis_state("0gg");
    CHECK(a.amplitude(0) == Complex{1.0, 0.0});
    const auto b = init_basis_state("1g");
    CHECK(b.amplitude(1) == Complex{1.0, 0.0});
    const auto c = init_basis_state("0geg");
    REQUIRE(c.num_qubits() == 4);
    CHECK(c.amplitude(4) == Complex{1.0, 0.0});
    CHECK(c.norm_squared() == 1.0);
    CHECK_THROWS_AS(init_basis_state(""), Error);
    CHECK_THROWS_AS(init_basis_state("0x"), ParseError);
}

TEST_CASE("state vectors reject bad lengths and norms", "[core-state]") {
    CHECK_THROWS_AS(StateVector(2, std::vector<Complex>(3, 0.5)), Error);
    CHECK_THROWS_AS(StateVector(1, {Complex{1.0, 0.0}, Complex{1.0, 0.0}}),
                    Error);
}

TEST_CASE("apply_unitary on small examples", "[core-state]") {
    const auto s = init_basis_state("0g");
    const std::array<std::size_t, 1> q1 = {1};
    const auto same = apply_unitary(s, oracle::M::Identity(2, 2), q1);
    CHECK(same == s);
    const auto flipped = apply_unitary(s, oracle::pauli('X'), q1);
    CHECK(std::abs(flipped.amplitude(2) - Complex{1.0, 0.0}) < 1e-15);

    // Exchange map at S t = pi/2 on (bus, TLS): |1g> -> -i |0e>.
    oracle::M gate = oracle::M::Identity(4, 4);
    gate(1, 1) = 0.0;
    gate(2, 2) = 0.0;
    gate(1, 2) = -oracle::kI;
    gate(2, 1) = -oracle::kI;
    const std::array<std::size_t, 2> pair = {0, 1};
    const auto out = apply_unitary(init_basis_state("1g"), gate, pair);
    CHECK(std::abs(out.amplitude(2) - Complex{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(out.amplitude(1)) < 1e-15);
}

TEST_CASE("apply_unitary validates its inputs", "[core-state]") {
    const auto s = init_basis_state("000");
    oracle::M bad = oracle::M::Identity(2, 2);
    bad(0, 0) = 2.0;
    const std::array<std::size_t, 1> q0 = {0};
    CHECK_THROWS_AS(apply_unitary(s, bad, q0), Error);
    const std::array<std::size_t, 2> dup = {1, 1};
    CHECK_THROWS_AS(apply_unitary(s, oracle::M::Identity(4, 4), dup), Error);
    const std::array<std::size_t, 1> out = {3};
    CHECK_THROWS_AS(apply_unitary(s, oracle::M::Identity(2, 2), out), Error);
    CHECK_THROWS_AS(apply_unitary(s, oracle::M::Identity(4, 4), q0), Error);
}

TEST_CASE("apply_unitary matches dense Kronecker products", "[core-state][property]") {
    oracle::Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + g.index(4);
        const oracle::V psi = g.state(Eigen::Index{1} << n);
        std::size_t a = g.index(n);
        std::size_t b = g.index(n - 1);
        if (b >= a) {
            ++b;
        }
        const oracle::M u = g.unitary(4);
        // Local bit 0 of the gate is target a, bit 1 is target b.
        oracle::M full = oracle::M::Zero(psi.size(), psi.size());
        for (Eigen::Index col = 0; col < psi.size(); ++col) {
            const int la = (col >> a) & 1;
            const int lb = (col >> b) & 1;
            const Eigen::Index rest = col & ~((Eigen::Index{1} << a) | (Eigen::Index{1} << b));
            for (int r = 0; r < 4; ++r) {
                const Eigen::Index row = rest | (Eigen::Index(r & 1) << a) |
                                         (Eigen::Index((r >> 1) & 1) << b);
                full(row, col) = u(r, la | (lb << 1));
            }
        }
        const std::array<std::size_t, 2> targets = {a, b};
        const auto out = apply_unitary(oracle::from_vec(n, psi), u, targets);
        CHECK(max_diff(oracle::to_vec(out), full * psi) < 1e-12);
    }
}

TEST_CASE("norm is preserved by random unitaries and generators", "[core-state][property]") {
    oracle::Gen g(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 3;
        auto s = oracle::from_vec(n, g.state(8));
        const std::array<std::size_t, 2> t = {g.index(2), 2};
        s = apply_unitary(std::move(s), g.unitary(4), t);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    }
    for (int trial = 0; trial < 1000; ++trial) {
        const auto s = oracle::from_vec(2, g.state(4));
        const HermitianOperator h(g.hermitian(4));
        const auto out = evolve(s, h, g.uniform(0.0, 5.0));
        CHECK(std::abs(out.norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("evolve on closed-form generators", "[core-state]") {
    const auto s = oracle::from_vec(2, oracle::V::Ones(4) / 2.0);
    const HermitianOperator h(oracle::string_op("ZX"));
    CHECK(evolve(s, h, 0.0) == s);

    const double omega = 3.7;
    const double t = 0.9;
    PauliSum z(1);
    z.add(PauliString::parse("Z"), -0.5 * omega);
    const auto out = evolve(init_basis_state("1"), HermitianOperator::from_pauli_sum(z), t);
    CHECK(std::abs(out.amplitude(1) - std::polar(1.0, -0.5 * omega * t)) < 1e-12);

    // +(S/2)(XX + YY) on |1g>: cos(S t)|1g> - i sin(S t)|0e>.
    const double coupling = 1.3;
    PauliSum xy(2);
    xy.add(PauliString::parse("XX"), 0.5 * coupling);
    xy.add(PauliString::parse("YY"), 0.5 * coupling);
    const auto ex = evolve(init_basis_state("1g"), HermitianOperator::from_pauli_sum(xy), t);
    CHECK(std::abs(ex.amplitude(1) - Complex{std::cos(coupling * t), 0.0}) < 1e-12);
    CHECK(std::abs(ex.amplitude(2) - Complex{0.0, -std::sin(coupling * t)}) < 1e-12);
}

TEST_CASE("evolve agrees with a Taylor-series exponential", "[core-state][property]") {
    oracle::Gen g(7);
    for (int trial = 0; trial < 50; ++trial) {
        const oracle::M h = g.hermitian(8);
        const oracle::V psi = g.state(8);
        const double t = g.uniform(0.0, 3.0);
        const auto out = evolve(oracle::from_vec(3, psi), HermitianOperator(h), t);
        const oracle::V ref = oracle::expm(-oracle::kI * t * h) * psi;
        CHECK(max_diff(oracle::to_vec(out), ref) < 1e-10);
    }
}

TEST_CASE("evolution composes over consecutive intervals", "[core-state][property]") {
    oracle::Gen g(8);
    for (int trial = 0; trial < 100; ++trial) {
        const HermitianOperator h(g.hermitian(8));
        const auto psi = oracle::from_vec(3, g.state(8));
        const double t1 = g.uniform(0.0, 2.0);
        const double t2 = g.uniform(0.0, 2.0);
        const auto once = evolve(psi, h, t1 + t2);
        const auto twice = evolve(evolve(psi, h, t1), h, t2);
        CHECK(max_diff(oracle::to_vec(once), oracle::to_vec(twice)) < 1e-10);
    }
}

TEST_CASE("evolve rejects non-Hermitian generators", "[core-state]") {
    oracle::M m = oracle::M::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator(m), Error);
    const HermitianOperator h(oracle::M::Identity(4, 4));
    CHECK_THROWS_AS(evolve(init_basis_state("0"), h, 1.0), Error);
}

TEST_CASE("expectation values", "[core-state]") {
    CHECK(expectation(init_basis_state("0"), PauliString::parse("Z")) == 1.0);
    const auto w3 = oracle::from_vec(3, oracle::w_vec(3));
    CHECK(expectation(w3, PauliString::parse("ZZZ")) == Approx(-1.0).margin(1e-12));
    const auto plus = product_state(std::vector<QubitState>{
        {Complex{M_SQRT1_2, 0}, Complex{M_SQRT1_2, 0}}});
    CHECK(std::abs(expectation(plus, PauliString::parse("Z"))) < 1e-15);
    CHECK_THROWS_AS(expectation(w3, PauliString::parse("ZZ")), Error);
}

TEST_CASE("Pauli expectations match dense matrices and stay in [-1, 1]", "[core-state][property]") {
    oracle::Gen g(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + g.index(5);
        const oracle::V psi = g.state(Eigen::Index{1} << n);
        const PauliString p = random_string(g, n);
        const double e = expectation(oracle::from_vec(n, psi), p);
        const Complex ref = psi.dot(oracle::string_op(p.to_string()) * psi);
        CHECK(std::abs(e - ref.real()) < 1e-12);
        CHECK(e >= -1.0 - 1e-10);
        CHECK(e <= 1.0 + 1e-10);
    }
}

TEST_CASE("Pauli string algebra matches matrix products", "[core-state][property]") {
    oracle::Gen g(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + g.index(4);
        const PauliString a = random_string(g, n);
        const PauliString b = random_string(g, n);
        const auto [phase, prod] = multiply(a, b);
        const oracle::M lhs = oracle::string_op(a.to_string()) * oracle::string_op(b.to_string());
        const oracle::M rhs = phase * oracle::string_op(prod.to_string());
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
        const oracle::M ab = oracle::string_op(a.to_string()) * oracle::string_op(b.to_string());
        const oracle::M ba = oracle::string_op(b.to_string()) * oracle::string_op(a.to_string());
        CHECK(a.commutes_with(b) == ((ab - ba).cwiseAbs().maxCoeff() < 1e-12));
        CHECK((pauli_matrix(a) - oracle::string_op(a.to_string())).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("Pauli decomposition reproduces dense operators", "[core-state][property]") {
    oracle::Gen g(6);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::M h = g.hermitian(8);
        const PauliSum sum = pauli_decompose(h);
        CHECK(sum.max_imaginary() < 1e-12);
        CHECK((dense_matrix(sum) - h).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("fidelity", "[core-state]") {
    const auto a = init_basis_state("01");
    CHECK(fidelity(a, a) == 1.0);
    CHECK(fidelity(a, init_basis_state("10")) == 0.0);
    const auto plus = product_state(std::vector<QubitState>{
        {Complex{M_SQRT1_2, 0}, Complex{M_SQRT1_2, 0}}});
    CHECK(fidelity(plus, init_basis_state("0")) == Approx(0.5).margin(1e-15));
    CHECK_THROWS_AS(fidelity(a, init_basis_state("0")), Error);
}

TEST_CASE("partial traces", "[core-state]") {
    oracle::Gen g(3);
    const auto prod = oracle::from_vec(3, g.product(3));
    const std::array<std::size_t, 2> k01 = {0, 1};
    CHECK(partial_trace(prod, k01).rank() == 1);

    const auto bell = bell_state();
    const std::array<std::size_t, 1> k0 = {0};
    const auto half = partial_trace(bell, k0).matrix();
    CHECK((half - 0.5 * oracle::M::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

    const auto w3 = oracle::from_vec(3, oracle::w_vec(3));
    for (std::size_t q = 0; q < 3; ++q) {
        const std::array<std::size_t, 1> keep = {q};
        const auto rho = partial_trace(w3, keep);
        CHECK(rho.rank() == 2);
        const auto ev = rho.eigenvalues();
        CHECK(ev(0) == Approx(1.0 / 3.0).margin(1e-12));
        CHECK(ev(1) == Approx(2.0 / 3.0).margin(1e-12));
    }
    CHECK_THROWS_AS(partial_trace(w3, std::span<const std::size_t>{}), Error);
}

TEST_CASE("partial traces match an explicit sum over traced indices", "[core-state][property]") {
    oracle::Gen g(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + g.index(3);
        const oracle::V psi = g.state(Eigen::Index{1} << n);
        std::vector<std::size_t> keep;
        for (std::size_t q = 0; q < n; ++q) {
            if (g.uniform() < 0.5) {
                keep.push_back(q);
            }
        }
        if (keep.empty()) {
            keep.push_back(g.index(n));
        }
        const std::size_t m = keep.size();
        oracle::M ref = oracle::M::Zero(Eigen::Index{1} << m, Eigen::Index{1} << m);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            for (Eigen::Index j = 0; j < psi.size(); ++j) {
                bool same_rest = true;
                Eigen::Index li = 0, lj = 0;
                for (std::size_t q = 0; q < n; ++q) {
                    const auto pos = std::find(keep.begin(), keep.end(), q);
                    const Eigen::Index bi = (i >> q) & 1, bj = (j >> q) & 1;
                    if (pos == keep.end()) {
                        same_rest = same_rest && bi == bj;
                    } else {
                        const auto k = pos - keep.begin();
                        li |= bi << k;
                        lj |= bj << k;
                    }
                }
                if (same_rest) {
                    ref(li, lj) += psi(i) * std::conj(psi(j));
                }
            }
        }
        const auto rho = partial_trace(oracle::from_vec(n, psi), keep);
        CHECK((rho.matrix() - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(rho.trace() - Complex{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("keeping every qubit of a pure state gives a rank-one matrix", "[core-state][property]") {
    oracle::Gen g(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = oracle::from_vec(3, g.state(8));
        const std::array<std::size_t, 3> all = {0, 1, 2};
        const auto rho = partial_trace(psi, all);
        CHECK(rho.rank() == 1);
        CHECK(rho.eigenvalues()(7) == Approx(1.0).margin(1e-10));
    }
}
