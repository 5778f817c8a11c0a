// Copyright 2026 The phaseflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phaseflip/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

constexpr double kUnitarityTolerance = 1e-10;

void check_targets(std::size_t n_qubits, std::span<const std::size_t> targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n_qubits) {
      throw IndexError("target qubit " + std::to_string(targets[i]) + " out of range for " +
                       std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw IndexError("duplicate target qubit " + std::to_string(targets[i]));
      }
    }
  }
}

void check_qubit(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.n_qubits()) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                     std::to_string(state.n_qubits()) + " qubits");
  }
}

}  // namespace

Unitary::Unitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  const auto rows = static_cast<std::size_t>(matrix_.rows());
  if (rows != static_cast<std::size_t>(matrix_.cols()) || rows < 2 || !std::has_single_bit(rows)) {
    throw Error("unitary must be square with power-of-two dimension >= 2");
  }
  n_qubits_ = static_cast<std::size_t>(std::countr_zero(rows));
  const double err = unitarity_error();
  if (!(err <= kUnitarityTolerance)) {
    throw Error("matrix is not unitary (deviation " + std::to_string(err) + ")");
  }
}

Unitary Unitary::identity(std::size_t n_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return Unitary(Eigen::MatrixXcd::Identity(dim, dim));
}

Unitary Unitary::diagonal(std::span<const Complex> entries) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(entries.size()),
                                              static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  }
  return Unitary(std::move(m));
}

Unitary Unitary::adjoint() const { return Unitary(matrix_.adjoint()); }

double Unitary::unitarity_error() const {
  const Eigen::MatrixXcd product = matrix_ * matrix_.adjoint();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  return (product - id).cwiseAbs().maxCoeff();
}

Unitary operator*(const Unitary& lhs, const Unitary& rhs) {
  if (lhs.dimension() != rhs.dimension()) throw Error("unitary dimension mismatch");
  return Unitary(lhs.matrix_ * rhs.matrix_);
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw SizeError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                    std::to_string(n_qubits));
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

void StateVector::renormalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw Error("cannot renormalise a zero state");
  for (auto& a : amplitudes_) a /= n;
}

void StateVector::assign(std::span<const Complex> amplitudes) {
  if (amplitudes.size() != amplitudes_.size()) throw SizeError("amplitude count mismatch");
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  if (std::abs(total - 1.0) > 1e-10) throw Error("assigned amplitudes are not normalised");
  std::copy(amplitudes.begin(), amplitudes.end(), amplitudes_.begin());
}

StateVector new_state(std::size_t n_qubits) { return StateVector(n_qubits); }

void apply_unitary(std::span<Complex> amplitudes, std::size_t n_qubits, const Unitary& u,
                   std::span<const std::size_t> targets) {
  if (amplitudes.size() != (std::size_t{1} << n_qubits)) throw SizeError("amplitude count mismatch");
  check_targets(n_qubits, targets);
  const std::size_t k = targets.size();
  if (k != u.n_qubits()) {
    throw IndexError("unitary acts on " + std::to_string(u.n_qubits()) + " qubits but " +
                     std::to_string(k) + " targets were given");
  }
  const std::size_t local_dim = std::size_t{1} << k;

  // offsets[l]: global index bits contributed by local index l.
  std::vector<std::size_t> offsets(local_dim, 0);
  std::size_t mask = 0;
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1u) offsets[l] |= std::size_t{1} << targets[j];
    }
  }
  for (auto t : targets) mask |= std::size_t{1} << t;

  const auto& m = u.matrix();
  std::vector<Complex> in(local_dim);
  for (std::size_t base = 0; base < amplitudes.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < local_dim; ++l) in[l] = amplitudes[base | offsets[l]];
    for (std::size_t r = 0; r < local_dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < local_dim; ++c) {
        acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      amplitudes[base | offsets[r]] = acc;
    }
  }
}

void apply_unitary(StateVector& state, const Unitary& u, std::span<const std::size_t> targets) {
  apply_unitary(state.mutable_amplitudes(), state.n_qubits(), u, targets);
}

void apply_unitary(StateVector& state, const Unitary& u, std::initializer_list<std::size_t> targets) {
  apply_unitary(state, u, std::span<const std::size_t>(targets.begin(), targets.size()));
}

double clamp_probability(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

double qubit_up_probability(const StateVector& state, std::size_t qubit) {
  check_qubit(state, qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) p += std::norm(amps[i]);
  }
  return clamp_probability(p);
}

const char* to_string(Parity parity) noexcept { return parity == Parity::even ? "even" : "odd"; }

namespace {

bool in_odd_class(std::size_t index, std::size_t a, std::size_t b, const PairClassMap& classes) {
  const std::size_t joint = (((index >> a) & 1u) << 1) | ((index >> b) & 1u);
  return classes[joint];
}

void check_pair(const StateVector& state, std::pair<std::size_t, std::size_t> pair) {
  check_qubit(state, pair.first);
  check_qubit(state, pair.second);
  if (pair.first == pair.second) throw IndexError("pair qubits must be distinct");
}

}  // namespace

double pair_odd_probability(const StateVector& state, std::pair<std::size_t, std::size_t> pair,
                            const PairClassMap& classes) {
  check_pair(state, pair);
  const auto amps = state.amplitudes();
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (in_odd_class(i, pair.first, pair.second, classes)) p += std::norm(amps[i]);
  }
  return clamp_probability(p);
}

PairMeasurement measure_pair(StateVector& state, std::pair<std::size_t, std::size_t> pair, Rng& rng,
                             const PairClassMap& classes) {
  const double p_odd = pair_odd_probability(state, pair, classes);
  const Parity outcome = uniform01(rng) < p_odd ? Parity::odd : Parity::even;
  const bool keep_odd = outcome == Parity::odd;
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (in_odd_class(i, pair.first, pair.second, classes) != keep_odd) amps[i] = 0.0;
  }
  state.renormalize();
  return {outcome, p_odd};
}

}  // namespace phaseflip
