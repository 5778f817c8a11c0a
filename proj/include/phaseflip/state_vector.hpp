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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "phaseflip/rng.hpp"

namespace phaseflip {

using Complex = std::complex<double>;

// Dense unitary on k qubits (dimension 2^k).
//
// Local basis ordering follows the Kronecker convention: for targets
// (t0, t1, ..., t_{k-1}) passed to apply_unitary, t0 is the most significant
// bit of the row/column index. For a two-qubit gate the basis order is
// (|00>, |01>, |10>, |11>) = (down-down, down-up, up-down, up-up).
class Unitary {
 public:
  // Throws Error when the matrix is not square, not a power-of-two size, or
  // violates U U^dagger = I by more than 1e-10 entrywise.
  explicit Unitary(Eigen::MatrixXcd matrix);

  static Unitary identity(std::size_t n_qubits);
  static Unitary diagonal(std::span<const Complex> entries);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

  Unitary adjoint() const;
  // Largest entrywise deviation of U U^dagger from the identity.
  double unitarity_error() const;

  // Matrix product (this * other): "other" acts first.
  friend Unitary operator*(const Unitary& lhs, const Unitary& rhs);

 private:
  Eigen::MatrixXcd matrix_;
  std::size_t n_qubits_ = 0;
};

inline constexpr std::size_t kMaxQubits = 12;

// Pure state over n qubits. Qubit k is bit k of the basis index
// (least significant bit = qubit 0); bit value 0 = spin down.
class StateVector {
 public:
  // All qubits down. Throws SizeError unless 1 <= n_qubits <= 12.
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

  double norm_squared() const;
  void renormalize();

  // Replaces the amplitudes; the new vector must have the same length and unit norm (1e-10).
  void assign(std::span<const Complex> amplitudes);

 private:
  std::size_t n_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector new_state(std::size_t n_qubits);

// Core kernel over a raw amplitude array (need not be normalised).
void apply_unitary(std::span<Complex> amplitudes, std::size_t n_qubits, const Unitary& u,
                   std::span<const std::size_t> targets);

// In place. Throws IndexError for duplicate/out-of-range targets or a size mismatch.
void apply_unitary(StateVector& state, const Unitary& u, std::span<const std::size_t> targets);
void apply_unitary(StateVector& state, const Unitary& u, std::initializer_list<std::size_t> targets);

double qubit_up_probability(const StateVector& state, std::size_t qubit);

enum class Parity { even, odd };

const char* to_string(Parity parity) noexcept;

// Which joint configurations of an ordered pair (a, b) fall in the "odd"
// (blocked) outcome class, indexed by 2*bit(a) + bit(b).
using PairClassMap = std::array<bool, 4>;
inline constexpr PairClassMap kParityClasses{false, true, true, false};

// Probability of the odd class; roundoff in [-1e-12, 0) is clamped to 0.
double pair_odd_probability(const StateVector& state, std::pair<std::size_t, std::size_t> pair,
                            const PairClassMap& classes = kParityClasses);

struct PairMeasurement {
  Parity outcome;
  double odd_probability;
};

// Projective pair-class measurement; collapses and renormalises the state.
PairMeasurement measure_pair(StateVector& state, std::pair<std::size_t, std::size_t> pair, Rng& rng,
                             const PairClassMap& classes = kParityClasses);

// Clamp roundoff negatives and values a hair above one.
double clamp_probability(double p);

}  // namespace phaseflip
