// Copyright 2026 The qcell Authors
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

#ifndef QCELL_CIRCUIT_HPP
#define QCELL_CIRCUIT_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcell/linalg.hpp"

namespace qcell {

// Conventions shared by every module:
//   * wires are 1-based; wire 1 is the leftmost tensor factor and the most
//     significant bit, so |b1 ... bn> has basis index sum_k b_k 2^{n-k};
//   * gate lists are in temporal order (first element acts first).

struct SingleGate {
  int wire;
  SingleQubitParams params;
};

struct CnotGate {
  int control;
  int target;
};

using Gate = std::variant<SingleGate, CnotGate>;

class Circuit {
 public:
  explicit Circuit(int qubits);

  int qubits() const { return qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  /// Throws ValidationError on out-of-range wires or control == target.
  Circuit& add(const Gate& gate);
  Circuit& single(int wire, const SingleQubitParams& params);
  Circuit& cnot(int control, int target);

  /// Appends every gate of `other`, which must have the same width.
  Circuit& append(const Circuit& other);

  std::size_t cnot_count() const;
  std::size_t single_count() const;

 private:
  void validate(const Gate& gate) const;

  int qubits_;
  std::vector<Gate> gates_;
};

class StateVector {
 public:
  /// Takes ownership of `amps`; size must be 2^qubits and the norm 1 within
  /// 1e-10.
  StateVector(int qubits, Vector amps);

  static StateVector basis(int qubits, std::size_t index);
  /// Parses a bit string such as "101" (wire 1 first).
  static StateVector from_bits(std::string_view bits);

  int qubits() const { return qubits_; }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }
  std::vector<double> probabilities() const;

 private:
  int qubits_;
  Vector amps_;
};

/// Bit string of a basis index, wire 1 first.
std::string basis_label(int qubits, std::size_t index);

/// 2^n permutation matrix of CNOT(control -> target).
Matrix cnot_matrix(int qubits, int control, int target);

/// I (x) ... (x) u (x) ... (x) I with u on `wire`.
Matrix embed_single(int qubits, int wire, const Matrix& u);

/// Product of embedded gate matrices; later gates multiply on the left.
Matrix circuit_to_unitary(const Circuit& circuit);

/// Gate-by-gate application that never materializes the full unitary.
StateVector apply_to_state(const Circuit& circuit, const StateVector& state);

// In-place kernels acting on every column of `m` (a state is a one-column
// matrix). Rows are indexed by basis state.
void apply_single_inplace(Matrix& m, int qubits, int wire, const Matrix& u);
void apply_cnot_inplace(Matrix& m, int qubits, int control, int target);

/// Text format, one item per line:
///   qubits N
///   sq <wire> <theta1> <theta2> <theta3> [<theta0>]
///   cnot <control> <target>
/// '#' starts a comment.
std::string to_text(const Circuit& circuit);
Circuit parse_circuit_text(std::string_view text);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace qcell

#endif  // QCELL_CIRCUIT_HPP
