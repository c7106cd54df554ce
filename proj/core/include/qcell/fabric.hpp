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

#ifndef QCELL_FABRIC_HPP
#define QCELL_FABRIC_HPP

#include <vector>

#include "qcell/circuit.hpp"
#include "qcell/linalg.hpp"

namespace qcell {

// A cell on n wires, in temporal order:
//
//   L0, G1, L1, G2, L2, ..., Gn, Ln
//
// Each layer L_g holds one single-qubit slot per wire. Gap G_g holds the
// CNOTs with control g, one per target j != g in ascending order, each of
// which can be switched off (it then acts as the identity). Slots store only
// (theta1, theta2, theta3); theta0 is kept at zero and every phase is
// accounted for by CellProgram::global_phase.

struct CnotSlot {
  int control = 0;
  int target = 0;
  bool enabled = false;

  friend bool operator==(const CnotSlot&, const CnotSlot&) = default;
};

int single_slot_count(int n);
int cnot_slot_count(int n);
/// 3 n (n + 1) rotation angles plus n (n - 1) switches.
int free_parameter_count(int n);

class Cell {
 public:
  /// Identity cell with all CNOTs disabled. Throws ValidationError if n < 1.
  explicit Cell(int n);

  int n() const { return n_; }

  /// layer in 0..n, wire in 1..n.
  SingleQubitParams& slot(int layer, int wire);
  const SingleQubitParams& slot(int layer, int wire) const;

  /// Canonical order: control ascending, then target ascending.
  const std::vector<CnotSlot>& cnots() const { return cnots_; }
  bool cnot_enabled(int control, int target) const;
  void set_cnot(int control, int target, bool enabled);

  std::size_t enabled_cnot_count() const;

  friend bool operator==(const Cell&, const Cell&) = default;

 private:
  std::size_t layer_index(int layer, int wire) const;
  std::size_t cnot_index(int control, int target) const;

  int n_;
  std::vector<SingleQubitParams> layers_;  // (n + 1) * n, layer-major
  std::vector<CnotSlot> cnots_;
};

Cell new_cell(int n);

struct CellProgram {
  int n = 1;
  double global_phase = 0.0;
  std::vector<Cell> cells;
};

/// Checks that every cell has width n, every slot has theta0 == 0 and all
/// angles are finite. Throws ValidationError.
void validate_program(const CellProgram& program);

Matrix cell_to_unitary(const Cell& cell);
/// e^{i global_phase} times the product of the cells; the identity for an
/// empty program.
Matrix program_to_unitary(const CellProgram& program);

/// Greedy packing of a circuit into cells. A cursor walks forward through
/// the slot positions of the current cell: single-qubit gates are fused into
/// the first layer at or after the cursor, a CNOT takes its own slot if that
/// slot lies strictly after the cursor, otherwise a new cell is opened.
CellProgram compile_circuit(const Circuit& circuit);

/// Non-identity slots and enabled CNOTs as a gate list. The global phase is
/// attached to the first single-qubit gate (one is added on wire 1 if
/// needed).
Circuit flatten(const CellProgram& program);

/// kak_decompose, then the three-CNOT circuit, then compile_circuit.
CellProgram compile_unitary2q(const Matrix& u);

/// Toffoli on three wires as a two-cell program. Level 1 flips wire 3 when
/// wires 1 and 2 are |11>; level 0 when they are |00>. Throws
/// ValidationError for any other level.
CellProgram toffoli_program(int level);

/// The 8x8 matrix toffoli_program(level) is built against.
Matrix toffoli_matrix(int level);

/// Number of (cell, layer, wire) slots whose parameters differ.
/// Throws ValidationError if the programs have different shapes.
std::size_t count_slot_differences(const CellProgram& a, const CellProgram& b, double tol = 1e-12);
/// Number of CNOT switches that differ.
std::size_t count_cnot_differences(const CellProgram& a, const CellProgram& b);

}  // namespace qcell

#endif  // QCELL_FABRIC_HPP
