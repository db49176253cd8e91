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

#include "tlsent/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tlsent/error.hpp"

namespace tlsent {

namespace {

const std::string kModule = "core-state";

std::size_t qubits_for_dimension(Eigen::Index dim) {
    if (dim <= 0 || (dim & (dim - 1)) != 0) {
        throw Error(kModule, "operator dimension " + std::to_string(dim) +
                                 " is not a power of two");
    }
    const auto n = static_cast<std::size_t>(
        std::countr_zero(static_cast<std::uint64_t>(dim)));
    if (n == 0 || n > kMaxQubits) {
        throw Error(kModule, "operator acts on an unsupported qubit count");
    }
    return n;
}

Complex i_power(int k) {
    constexpr Complex table[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

// In-place Walsh-Hadamard transform: out[z] = sum_r (-1)^{|r & z|} in[r].
void walsh_hadamard(std::vector<Complex> &v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const Complex a = v[j];
                const Complex b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

} // namespace

Matrix pauli_matrix(const PauliString &p) {
    const auto dim = static_cast<Eigen::Index>(1) << p.num_qubits();
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        auto [phase, r] = p.apply_to_basis(static_cast<std::uint64_t>(c));
        m(static_cast<Eigen::Index>(r), c) = phase;
    }
    return m;
}

Matrix dense_matrix(const PauliSum &sum) {
    const auto dim = static_cast<Eigen::Index>(1) << sum.num_qubits();
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &[p, coeff] : sum.terms()) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            auto [phase, r] = p.apply_to_basis(static_cast<std::uint64_t>(c));
            m(static_cast<Eigen::Index>(r), c) += coeff * phase;
        }
    }
    return m;
}

PauliSum pauli_decompose(const Matrix &m, double drop_below) {
    if (m.rows() != m.cols()) {
        throw Error(kModule, "cannot decompose a non-square matrix");
    }
    const std::size_t n = qubits_for_dimension(m.rows());
    const std::uint64_t dim = std::uint64_t{1} << n;
    PauliSum out(n);
    std::vector<Complex> f(dim);
    // tr(P M) = i^{#Y} sum_r (-1)^{|r & z|} M(r, r ^ x).
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (std::uint64_t r = 0; r < dim; ++r) {
            f[r] = m(static_cast<Eigen::Index>(r),
                     static_cast<Eigen::Index>(r ^ x));
        }
        walsh_hadamard(f);
        for (std::uint64_t z = 0; z < dim; ++z) {
            const Complex c = i_power(std::popcount(x & z)) * f[z] /
                              static_cast<double>(dim);
            if (std::abs(c) <= drop_below) {
                continue;
            }
            std::vector<Pauli> factors(n);
            for (std::size_t q = 0; q < n; ++q) {
                const bool xb = (x >> q) & 1U;
                const bool zb = (z >> q) & 1U;
                factors[q] = xb ? (zb ? Pauli::Y : Pauli::X)
                                : (zb ? Pauli::Z : Pauli::I);
            }
            out.add(PauliString(std::move(factors)), c);
        }
    }
    return out;
}

HermitianOperator::HermitianOperator(Matrix entries, double tol)
    : num_qubits_(0), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(kModule, "Hermitian operator must be square");
    }
    num_qubits_ = qubits_for_dimension(entries_.rows());
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol * scale) {
        throw Error(kModule, "generator is not Hermitian (max |H - H^dag| = " +
                                 std::to_string(defect) + ")");
    }
}

HermitianOperator HermitianOperator::from_pauli_sum(const PauliSum &sum) {
    return HermitianOperator(dense_matrix(sum));
}

Propagator::Propagator(const HermitianOperator &generator)
    : num_qubits_(generator.num_qubits()) {
    const Matrix &h = generator.matrix();
    if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
        // Real symmetric generators (the device Hamiltonian in the
        // computational basis) take the cheaper real solver.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
        if (solver.info() != Eigen::Success) {
            throw Error(kModule, "eigendecomposition failed");
        }
        values_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw Error(kModule, "eigendecomposition failed");
        }
        values_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }
}

StateVector Propagator::evolve(const StateVector &state, double t) const {
    if (state.num_qubits() != num_qubits_) {
        throw Error(kModule, "generator on " + std::to_string(num_qubits_) +
                                 " qubits applied to " +
                                 std::to_string(state.num_qubits()) +
                                 "-qubit state");
    }
    const auto amps = state.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi(
        amps.data(), static_cast<Eigen::Index>(amps.size()));
    Eigen::VectorXcd coeffs = vectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -values_(k) * t);
    }
    const Eigen::VectorXcd out = vectors_ * coeffs;
    return StateVector(num_qubits_,
                       std::vector<Complex>(out.data(), out.data() + out.size()),
                       1e-9);
}

Matrix Propagator::unitary(double t) const {
    Eigen::VectorXcd phases(values_.size());
    for (Eigen::Index k = 0; k < values_.size(); ++k) {
        phases(k) = std::polar(1.0, -values_(k) * t);
    }
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

StateVector evolve(const StateVector &state, const HermitianOperator &generator,
                   double t) {
    if (t == 0.0) {
        if (state.num_qubits() != generator.num_qubits()) {
            throw Error(kModule, "generator dimension does not match state");
        }
        return state;
    }
    return Propagator(generator).evolve(state, t);
}

DensityMatrix::DensityMatrix(Matrix rho, double tol)
    : num_qubits_(0), rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) {
        throw Error(kModule, "density matrix must be square");
    }
    num_qubits_ = qubits_for_dimension(rho_.rows());
    const double defect = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw Error(kModule, "density matrix is not Hermitian (defect " +
                                 std::to_string(defect) + ")");
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > tol) {
        throw Error(kModule, "density matrix trace " + std::to_string(tr.real()) +
                                 " differs from 1");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state) {
    const auto amps = state.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi(
        amps.data(), static_cast<Eigen::Index>(amps.size()));
    return DensityMatrix(psi * psi.adjoint());
}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

std::size_t DensityMatrix::rank(double tol) const {
    const Eigen::VectorXd ev = eigenvalues();
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > tol) {
            ++r;
        }
    }
    return r;
}

DensityMatrix partial_trace(const StateVector &state,
                            std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw Error(kModule, "partial trace needs at least one kept qubit");
    }
    const std::size_t n = state.num_qubits();
    std::uint64_t keep_mask = 0;
    for (std::size_t q : keep) {
        if (q >= n) {
            throw Error(kModule, "kept qubit " + std::to_string(q) +
                                     " out of range");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (keep_mask & bit) {
            throw Error(kModule, "duplicate kept qubit " + std::to_string(q));
        }
        keep_mask |= bit;
    }
    const std::size_t k = keep.size();
    const auto kdim = static_cast<Eigen::Index>(1) << k;
    // Group amplitudes by environment index: column e holds psi(a, e).
    std::vector<std::uint64_t> env_bits;
    for (std::size_t q = 0; q < n; ++q) {
        if (!(keep_mask & (std::uint64_t{1} << q))) {
            env_bits.push_back(q);
        }
    }
    const auto edim = static_cast<Eigen::Index>(1) << env_bits.size();
    Matrix psi(kdim, edim);
    const auto amps = state.amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        Eigen::Index a = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (idx & (std::uint64_t{1} << keep[i])) {
                a |= Eigen::Index{1} << i;
            }
        }
        Eigen::Index e = 0;
        for (std::size_t i = 0; i < env_bits.size(); ++i) {
            if (idx & (std::uint64_t{1} << env_bits[i])) {
                e |= Eigen::Index{1} << i;
            }
        }
        psi(a, e) = amps[idx];
    }
    Matrix rho = psi * psi.adjoint();
    // Symmetrize away roundoff so downstream eigen-solvers see exact Hermiticity.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

double fidelity(const DensityMatrix &rho, const StateVector &target) {
    if (static_cast<std::size_t>(rho.matrix().rows()) != target.dimension()) {
        throw Error(kModule, "dimension mismatch in fidelity");
    }
    const auto amps = target.amplitudes();
    const Eigen::Map<const Eigen::VectorXcd> psi(
        amps.data(), static_cast<Eigen::Index>(amps.size()));
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

double expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.num_qubits() != rho.num_qubits()) {
        throw Error(kModule, "dimension mismatch in expectation");
    }
    // tr(P rho) = sum_c phase(c) rho(c, c ^ x) where P|c> = phase(c)|c ^ x>.
    Complex s{};
    const auto dim = rho.matrix().rows();
    for (Eigen::Index c = 0; c < dim; ++c) {
        auto [phase, r] = p.apply_to_basis(static_cast<std::uint64_t>(c));
        s += phase * rho.matrix()(c, static_cast<Eigen::Index>(r));
    }
    return s.real();
}

double expectation(const DensityMatrix &rho, const PauliSum &sum) {
    if (sum.num_qubits() != rho.num_qubits()) {
        throw Error(kModule, "dimension mismatch in expectation");
    }
    Complex total{};
    for (const auto &[p, c] : sum.terms()) {
        total += c * expectation(rho, p);
    }
    return total.real();
}

} // namespace tlsent
