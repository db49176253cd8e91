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

#include "oracles.hpp"
#include "tlsent/error.hpp"
#include "tlsent/measurement.hpp"
#include "tlsent/protocols.hpp"
#include "tlsent/targets.hpp"
#include "tlsent/tomography.hpp"

using namespace tlsent;
using namespace tlsent::measurement;
using Catch::Approx;

namespace {

DeviceConfig device_n(std::size_t n, double readout = 1.0) {
    DeviceConfig c;
    c.omega10 = device::kTwoPi * 7e9;
    c.readout_fidelity = readout;
    for (std::size_t i = 0; i < n; ++i) {
        c.tls.push_back({"T" + std::to_string(i + 1),
                         device::kTwoPi * (5e9 + 2e8 * static_cast<double>(i)),
                         device::coupling_from_splitting(30e6 + 10e6 * static_cast<double>(i))});
    }
    return c;
}

Preparation embedded(const StateVector &reg_state, std::size_t num_tls) {
    const auto reg = first_tls(reg_state.num_qubits());
    const StateVector full = embed_register(reg_state, reg, num_tls);
    return [full] { return full; };
}

// Expected raw estimate: each term shrinks by the contrast per measured qubit.
double biased_value(const WitnessOperator &w, const StateVector &s, double contrast) {
    double v = 0.0;
    for (const auto &[p, c] : w.pauli_form().terms()) {
        v += c.real() * expectation(s, p) * std::pow(contrast, double(p.weight()));
    }
    return v;
}

double mitigated_value(const WitnessOperator &w, const StateVector &s) {
    return witness::witness_value_exact(s, w);
}

WitnessEstimate estimate(const WitnessOperator &w, const StateVector &reg_state,
                         std::size_t shots, double readout, std::uint64_t seed,
                         SamplingMethod method = SamplingMethod::Distribution) {
    const auto c = device_n(reg_state.num_qubits(), readout);
    const auto reg = first_tls(reg_state.num_qubits());
    return estimate_witness_sampled(embedded(reg_state, c.num_tls()), reg, w,
                                    witness::group_settings(w), c,
                                    {shots, readout, seed, false, method});
}

} // namespace

TEST_CASE("readout model", "[measurement]") {
    ReadoutModel perfect(1.0, 1);
    for (int i = 0; i < 100; ++i) {
        CHECK(perfect.sample(1.0) == std::pair{1, 1});
        CHECK(perfect.sample(0.0) == std::pair{0, 0});
    }
    ReadoutModel noisy(0.96, 2);
    CHECK(noisy.contrast() == Approx(0.92));
    const int n = 100000;
    int flips = 0;
    for (int i = 0; i < n; ++i) {
        const auto [t, r] = noisy.sample(0.0);
        CHECK(t == 0);
        flips += r;
    }
    const double sigma = std::sqrt(0.04 * 0.96 / n);
    CHECK(std::abs(flips / double(n) - 0.04) < 3.0 * sigma);

    ReadoutModel fair(1.0, 3);
    int ones = 0;
    for (int i = 0; i < n; ++i) {
        auto s = oracle::from_vec(1, oracle::V::Ones(2) / std::sqrt(2.0));
        const auto out = measure_bus(s, fair);
        ones += out.reported;
        CHECK(s.excited_probability(0) == Approx(double(out.true_outcome)));
    }
    CHECK(std::abs(ones / double(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("TLS readout through the bus", "[measurement]") {
    const auto c = device_n(2);
    ReadoutModel r(1.0, 4);
    auto e = init_basis_state("0eg");
    const auto out = read_tls(e, 1, c, r);
    CHECK(out.reported == 1);
    CHECK(out.true_outcome == 1);
    CHECK(out.correctable_z_angle == Approx(-0.5 * std::numbers::pi));
    auto g = init_basis_state("0ge");
    CHECK(read_tls(g, 1, c, r).reported == 0);
    auto busy = init_basis_state("1gg");
    CHECK_THROWS_AS(read_tls(busy, 1, c, r), Error);
}

TEST_CASE("W-state shots have exactly one excitation", "[measurement]") {
    const auto c = device_n(3);
    const auto reg = first_tls(3);
    const witness::MeasurementSetting zzz{{Direction::Z, Direction::Z, Direction::Z}, {}};
    for (auto method : {SamplingMethod::Distribution, SamplingMethod::PerShot}) {
        const auto rec = sample_setting(embedded(w_state(3), 3), reg, zzz, 0, c,
                                        {2000, 1.0, 9, false, method});
        std::array<int, 3> counts{};
        for (std::size_t s = 0; s < rec.shots; ++s) {
            int excited = 0;
            for (std::size_t q = 0; q < 3; ++q) {
                if (rec.outcomes[3 * s + q] < 0) {
                    ++excited;
                    ++counts[q];
                }
            }
            CHECK(excited == 1);
        }
        for (int k : counts) {
            CHECK(std::abs(k / 2000.0 - 1.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / 2000.0));
        }
    }
}

TEST_CASE("basis rotations map each direction onto Z", "[measurement]") {
    using D = Direction;
    for (D d : {D::X, D::Y, D::Z, D::ZpX, D::ZmX, D::ZpY, D::ZmY}) {
        const auto r = basis_rotation(d);
        oracle::M m(2, 2);
        m << r[0], r[1], r[2], r[3];
        const oracle::M op = dense_matrix(witness::direction_operator(d));
        CHECK((m * m.adjoint() - oracle::M::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((m * op * m.adjoint() - oracle::pauli('Z')).cwiseAbs().maxCoeff() < 1e-14);

        // The +1 eigenvector reads as |0>.
        Eigen::SelfAdjointEigenSolver<oracle::M> es(op);
        const oracle::V plus = es.eigenvectors().col(1);
        const auto rotated = rotate_for_basis(oracle::from_vec(1, plus), 0, d);
        CHECK(rotated.excited_probability(0) < 1e-14);
    }
    CHECK_THROWS_AS(basis_rotation(D::I), Error);
    CHECK_THROWS_AS(rotate_for_basis(init_basis_state("0"), 1, D::X), Error);
}

TEST_CASE("sampled witness estimates", "[measurement]") {
    const auto w3 = witness::w3_witness_decomposed();
    const auto w3g = witness::w_witness_generic(3);
    const auto c4 = witness::cluster_witness(4);
    struct Case {
        const WitnessOperator *w;
        StateVector state;
    };
    const std::vector<Case> cases = {{&w3, w_state(3)}, {&w3g, w_state(3)}, {&c4, cluster_state(4)}};
    for (const auto &cs : cases) {
        INFO(cs.w->label());
        for (double f : {1.0, 0.96}) {
            const auto est = estimate(*cs.w, cs.state, 20000, f, 31);
            const double raw = biased_value(*cs.w, cs.state, 2.0 * f - 1.0);
            CHECK(std::abs(est.estimate - raw) <= 4.0 * est.standard_error + 1e-12);
            CHECK(std::abs(est.mitigated_estimate - mitigated_value(*cs.w, cs.state)) <=
                  4.0 * est.mitigated_standard_error + 1e-12);
            CHECK(est.readout_contrast == Approx(2.0 * f - 1.0));
        }
    }
    const auto perfect_c4 = estimate(c4, cluster_state(4), 5000, 1.0, 5);
    CHECK(perfect_c4.standard_error == 0.0);
    CHECK(perfect_c4.estimate == Approx(-1.0).margin(1e-12));
}

TEST_CASE("standard error shrinks with the square root of the shots", "[measurement]") {
    const auto w3 = witness::w3_witness_decomposed();
    const auto a = estimate(w3, w_state(3), 10000, 0.96, 7);
    const auto b = estimate(w3, w_state(3), 40000, 0.96, 8);
    CHECK(b.standard_error / a.standard_error == Approx(0.5).epsilon(0.2));
    CHECK(a.settings == 5);
    CHECK(a.shots_per_setting == 10000);
}

TEST_CASE("raw estimates carry the readout bias", "[measurement][property]") {
    oracle::Gen g(404);
    const auto w = witness::w_witness_generic(2);
    for (int trial = 0; trial < 20; ++trial) {
        const double f = g.uniform(0.8, 1.0);
        const auto s = oracle::from_vec(2, g.state(4));
        const auto est = estimate(w, s, 20000, f, 100 + trial);
        CHECK(std::abs(est.estimate - biased_value(w, s, 2.0 * f - 1.0)) <=
              4.0 * est.standard_error + 1e-12);
    }
}

TEST_CASE("per-shot and distribution sampling agree", "[measurement]") {
    const auto c = device_n(4, 0.96);
    const auto reg = first_tls(4);
    const auto w = witness::cluster_witness(4);
    const auto settings = witness::group_settings(w);
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const auto a = sample_setting(embedded(cluster_state(4), 4), reg, settings[s], s, c,
                                      {3000, 0.96, 13, false, SamplingMethod::Distribution});
        const auto b = sample_setting(embedded(cluster_state(4), 4), reg, settings[s], s, c,
                                      {3000, 0.96, 13, false, SamplingMethod::PerShot});
        CHECK(a.outcomes == b.outcomes);
    }
}

TEST_CASE("sampling is deterministic per seed", "[measurement]") {
    const auto w3 = witness::w3_witness_decomposed();
    const auto a = estimate(w3, w_state(3), 3000, 0.96, 42);
    const auto b = estimate(w3, w_state(3), 3000, 0.96, 42);
    const auto c = estimate(w3, w_state(3), 3000, 0.96, 43);
    CHECK(a.estimate == b.estimate);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.estimate != c.estimate);
    CHECK_THROWS_AS(estimate(w3, w_state(3), 0, 0.96, 42), Error);
}

TEST_CASE("shot records as CSV", "[measurement]") {
    const auto c = device_n(2);
    const auto reg = first_tls(2);
    const witness::MeasurementSetting xz{{Direction::X, Direction::Z}, {}};
    const auto rec = sample_setting(embedded(bell_state(), 2), reg, xz, 0, c,
                                    {3, 1.0, 1, true, SamplingMethod::Distribution});
    const auto csv = shots_csv(rec);
    CHECK(csv.rfind("x@1,z@2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("two-qubit tomography", "[measurement][tomography]") {
    const auto c = device_n(3);
    const auto bell = protocol::run_bell(c, 1, 2).final_state;
    const Preparation prep = [bell] { return bell; };
    TomographyOptions exact;
    exact.exact = true;
    const auto r = tomography_two_qubit(prep, 1, 2, bell_state(), c, exact);
    CHECK(r.fidelity_vs_target == Approx(1.0).margin(1e-10));
    CHECK(r.settings_used == 9);
    CHECK(r.expectations.size() == 16);
    CHECK(std::abs(r.rho.trace() - Complex{1, 0}) < 1e-12);
    CHECK(r.physical);

    TomographyOptions sampled;
    sampled.shots_per_setting = 100000;
    sampled.readout_fidelity = 0.96;
    sampled.seed = 17;
    const auto s = tomography_two_qubit(prep, 1, 2, bell_state(), c, sampled);
    CHECK(s.fidelity_vs_target > 0.85);
    CHECK(s.fidelity_vs_target < 1.0);
    CHECK(std::abs(s.rho.trace() - Complex{1, 0}) < 1e-12);
    // Regression baseline.
    CHECK(s.fidelity_vs_target == Approx(0.88454).margin(1e-9));
    CHECK_THROWS_AS(tomography_two_qubit(prep, 2, 2, bell_state(), c, exact), Error);
}

TEST_CASE("exact tomography reconstructs random pure states", "[measurement][tomography][property]") {
    oracle::Gen g(88);
    const auto c = device_n(2);
    TomographyOptions exact;
    exact.exact = true;
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = oracle::from_vec(2, g.state(4));
        const auto r = tomography_two_qubit(embedded(psi, 2), 1, 2, psi, c, exact);
        CHECK(r.fidelity_vs_target == Approx(1.0).margin(1e-10));
        const oracle::V v = oracle::to_vec(psi);
        CHECK((r.rho.matrix() - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}
