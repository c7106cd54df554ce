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

#include "qcell/fabric.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "qcell/decomposer.hpp"

namespace qcell {

namespace {

void check_width(int n) {
  if (n < 1) {
    throw ValidationError("cell width must be at least 1, got " + std::to_string(n));
  }
}

// Slot positions inside a cell: layer g sits at g * n, the j-th CNOT of gap g
// (j counted among targets != g) at (g - 1) * n + 1 + j.
int layer_position(int n, int layer) { return layer * n; }

int cnot_position(int control, int target, int n) {
  const int j = target < control ? target - 1 : target - 2;
  return (control - 1) * n + 1 + j;
}

bool is_identity_slot(const SingleQubitParams& p) {
  return p.theta1 == 0.0 && p.theta2 == 0.0 && p.theta3 == 0.0;
}

Matrix slot_matrix(const SingleQubitParams& p) {
  SingleQubitParams q = p;
  q.theta0 = 0.0;
  return zyz_compose(q);
}

// Stores u in a slot, moving its phase to the program.
void store_slot(CellProgram& program, SingleQubitParams& slot, const Matrix& u) {
  SingleQubitParams p = zyz_decompose(u);
  program.global_phase += p.theta0;
  p.theta0 = 0.0;
  slot = p;
}

double angle_distance(double a, double b) { return std::abs(wrap_pi(a - b)); }

}  // namespace

int single_slot_count(int n) {
  check_width(n);
  return n * (n + 1);
}

int cnot_slot_count(int n) {
  check_width(n);
  return n * (n - 1);
}

int free_parameter_count(int n) { return 3 * single_slot_count(n) + cnot_slot_count(n); }

Cell::Cell(int n) : n_(n) {
  check_width(n);
  layers_.resize(static_cast<std::size_t>(single_slot_count(n)));
  cnots_.reserve(static_cast<std::size_t>(cnot_slot_count(n)));
  for (int c = 1; c <= n; ++c) {
    for (int t = 1; t <= n; ++t) {
      if (t != c) {
        cnots_.push_back({c, t, false});
      }
    }
  }
}

std::size_t Cell::layer_index(int layer, int wire) const {
  if (layer < 0 || layer > n_ || wire < 1 || wire > n_) {
    throw ValidationError("slot (" + std::to_string(layer) + ", " + std::to_string(wire) +
                          ") outside a cell of width " + std::to_string(n_));
  }
  return static_cast<std::size_t>(layer * n_ + wire - 1);
}

std::size_t Cell::cnot_index(int control, int target) const {
  if (control < 1 || control > n_ || target < 1 || target > n_ || control == target) {
    throw ValidationError("no CNOT slot " + std::to_string(control) + "->" +
                          std::to_string(target) + " in a cell of width " + std::to_string(n_));
  }
  const int j = target < control ? target - 1 : target - 2;
  return static_cast<std::size_t>((control - 1) * (n_ - 1) + j);
}

SingleQubitParams& Cell::slot(int layer, int wire) { return layers_[layer_index(layer, wire)]; }

const SingleQubitParams& Cell::slot(int layer, int wire) const {
  return layers_[layer_index(layer, wire)];
}

bool Cell::cnot_enabled(int control, int target) const {
  return cnots_[cnot_index(control, target)].enabled;
}

void Cell::set_cnot(int control, int target, bool enabled) {
  cnots_[cnot_index(control, target)].enabled = enabled;
}

std::size_t Cell::enabled_cnot_count() const {
  std::size_t count = 0;
  for (const CnotSlot& s : cnots_) {
    count += s.enabled ? 1 : 0;
  }
  return count;
}

Cell new_cell(int n) { return Cell(n); }

void validate_program(const CellProgram& program) {
  check_width(program.n);
  if (!std::isfinite(program.global_phase)) {
    throw ValidationError("global_phase is not finite");
  }
  for (std::size_t i = 0; i < program.cells.size(); ++i) {
    const Cell& cell = program.cells[i];
    if (cell.n() != program.n) {
      throw ValidationError("cell " + std::to_string(i) + " has width " + std::to_string(cell.n()) +
                            ", program width is " + std::to_string(program.n));
    }
    for (int layer = 0; layer <= cell.n(); ++layer) {
      for (int wire = 1; wire <= cell.n(); ++wire) {
        const SingleQubitParams& p = cell.slot(layer, wire);
        if (p.theta0 != 0.0) {
          throw ValidationError("cell slots carry no phase; theta0 must be 0");
        }
        if (!std::isfinite(p.theta1) || !std::isfinite(p.theta2) || !std::isfinite(p.theta3)) {
          throw ValidationError("slot angle is not finite");
        }
      }
    }
  }
}

Matrix cell_to_unitary(const Cell& cell) {
  const int n = cell.n();
  Matrix u = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  auto apply_layer = [&](int layer) {
    for (int wire = 1; wire <= n; ++wire) {
      const SingleQubitParams& p = cell.slot(layer, wire);
      if (!is_identity_slot(p)) {
        apply_single_inplace(u, n, wire, slot_matrix(p));
      }
    }
  };
  apply_layer(0);
  for (int g = 1; g <= n; ++g) {
    for (const CnotSlot& s : cell.cnots()) {
      if (s.control == g && s.enabled) {
        apply_cnot_inplace(u, n, s.control, s.target);
      }
    }
    apply_layer(g);
  }
  return u;
}

Matrix program_to_unitary(const CellProgram& program) {
  validate_program(program);
  const Eigen::Index dim = Eigen::Index{1} << program.n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const Cell& cell : program.cells) {
    u = cell_to_unitary(cell) * u;
  }
  return std::polar(1.0, program.global_phase) * u;
}

CellProgram compile_circuit(const Circuit& circuit) {
  const int n = circuit.qubits();
  CellProgram program;
  program.n = n;
  if (circuit.gates().empty()) {
    return program;
  }
  program.cells.emplace_back(n);
  int cursor = 0;
  for (const Gate& gate : circuit.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&gate)) {
      const int layer = (cursor + n - 1) / n;
      SingleQubitParams& slot = program.cells.back().slot(layer, s->wire);
      store_slot(program, slot, zyz_compose(s->params) * slot_matrix(slot));
      cursor = layer_position(n, layer);
    } else {
      const auto& c = std::get<CnotGate>(gate);
      const int pos = cnot_position(c.control, c.target, n);
      if (pos <= cursor || program.cells.back().cnot_enabled(c.control, c.target)) {
        program.cells.emplace_back(n);
      }
      program.cells.back().set_cnot(c.control, c.target, true);
      cursor = pos;
    }
  }
  program.global_phase = wrap_two_pi(program.global_phase);
  return program;
}

Circuit flatten(const CellProgram& program) {
  validate_program(program);
  std::vector<Gate> gates;
  for (const Cell& cell : program.cells) {
    const int n = cell.n();
    for (int layer = 0; layer <= n; ++layer) {
      if (layer > 0) {
        for (const CnotSlot& s : cell.cnots()) {
          if (s.control == layer && s.enabled) {
            gates.emplace_back(CnotGate{s.control, s.target});
          }
        }
      }
      for (int wire = 1; wire <= n; ++wire) {
        const SingleQubitParams& p = cell.slot(layer, wire);
        if (!is_identity_slot(p)) {
          gates.emplace_back(SingleGate{wire, p});
        }
      }
    }
  }

  const double phase = wrap_two_pi(program.global_phase);
  Circuit out(program.n);
  bool placed = phase == 0.0;
  for (Gate& g : gates) {
    if (!placed) {
      if (auto* s = std::get_if<SingleGate>(&g)) {
        s->params.theta0 = phase;
        placed = true;
      }
    }
  }
  if (!placed) {
    out.single(1, SingleQubitParams{phase, 0.0, 0.0, 0.0});
  }
  for (const Gate& g : gates) {
    out.add(g);
  }
  return out;
}

CellProgram compile_unitary2q(const Matrix& u) {
  const KakResult kak = kak_decompose(u);
  return compile_circuit(vidal_dawson_circuit(kak.decomposition));
}

Matrix toffoli_matrix(int level) {
  if (level != 0 && level != 1) {
    throw ValidationError("Toffoli level must be 0 or 1, got " + std::to_string(level));
  }
  const std::size_t controls = level == 1 ? 0b110 : 0b000;
  Matrix t = Matrix::Zero(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    const std::size_t j = (i & 0b110) == controls ? i ^ 1 : i;
    t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return t;
}

CellProgram toffoli_program(int level) {
  const Matrix target = toffoli_matrix(level);

  // H(3) CCZ H(3), with CCZ written as a phase polynomial over the seven
  // nonzero parities of (x1, x2, x3):
  //   pi x1 x2 x3 = pi/4 (sum of odd-weight parities - sum of even-weight ones).
  // The CNOT switches below walk the wires through all seven parities and
  // back to (x1, x2, x3); each parity's phase goes into the first layer where
  // some wire carries it.
  constexpr int n = 3;
  const std::array<std::vector<std::pair<int, int>>, 2> enabled = {{
      {{1, 2}, {1, 3}, {2, 3}, {3, 1}, {3, 2}},
      {{1, 2}, {2, 1}, {2, 3}, {3, 1}},
  }};

  std::array<std::array<std::array<Matrix, n>, n + 1>, 2> slots;
  for (auto& cell : slots) {
    for (auto& layer : cell) {
      layer.fill(Matrix::Identity(2, 2));
    }
  }
  const Matrix h = gates::hadamard();
  const Matrix x = gates::pauli_x();
  slots[0][0][2] = h;

  std::array<unsigned, n> parity = {0b001, 0b010, 0b100};
  std::set<unsigned> phased;
  for (std::size_t c = 0; c < 2; ++c) {
    for (int layer = 0; layer <= n; ++layer) {
      if (layer > 0) {
        for (const auto& [ctl, tgt] : enabled[c]) {
          if (ctl == layer) {
            parity[static_cast<std::size_t>(tgt - 1)] ^= parity[static_cast<std::size_t>(ctl - 1)];
          }
        }
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (phased.insert(parity[w]).second) {
          const double sign = std::popcount(parity[w]) % 2 == 1 ? 1.0 : -1.0;
          Matrix& s = slots[c][static_cast<std::size_t>(layer)][w];
          s = gates::phase(sign * kPi / 4) * s;
        }
      }
    }
  }
  if (phased.size() != 7 || parity != std::array<unsigned, n>{0b001, 0b010, 0b100}) {
    throw std::logic_error("toffoli_program: parity network is incomplete");
  }
  slots[1][n][2] = h * slots[1][n][2];

  if (level == 0) {
    for (std::size_t w = 0; w < 2; ++w) {
      slots[0][0][w] = slots[0][0][w] * x;
      slots[1][n][w] = x * slots[1][n][w];
    }
  }

  CellProgram program;
  program.n = n;
  for (std::size_t c = 0; c < 2; ++c) {
    Cell cell(n);
    for (const auto& [ctl, tgt] : enabled[c]) {
      cell.set_cnot(ctl, tgt, true);
    }
    for (int layer = 0; layer <= n; ++layer) {
      for (int wire = 1; wire <= n; ++wire) {
        store_slot(program, cell.slot(layer, wire),
                   slots[c][static_cast<std::size_t>(layer)][static_cast<std::size_t>(wire - 1)]);
      }
    }
    program.cells.push_back(std::move(cell));
  }
  program.global_phase = wrap_two_pi(
      program.global_phase + relative_phase(program_to_unitary(program), target));
  return program;
}

std::size_t count_slot_differences(const CellProgram& a, const CellProgram& b, double tol) {
  if (a.n != b.n || a.cells.size() != b.cells.size()) {
    throw ValidationError("programs have different shapes");
  }
  std::size_t count = 0;
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    for (int layer = 0; layer <= a.n; ++layer) {
      for (int wire = 1; wire <= a.n; ++wire) {
        const SingleQubitParams& p = a.cells[c].slot(layer, wire);
        const SingleQubitParams& q = b.cells[c].slot(layer, wire);
        if (angle_distance(p.theta1, q.theta1) > tol || angle_distance(p.theta2, q.theta2) > tol ||
            angle_distance(p.theta3, q.theta3) > tol) {
          ++count;
        }
      }
    }
  }
  return count;
}

std::size_t count_cnot_differences(const CellProgram& a, const CellProgram& b) {
  if (a.n != b.n || a.cells.size() != b.cells.size()) {
    throw ValidationError("programs have different shapes");
  }
  std::size_t count = 0;
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    for (std::size_t k = 0; k < a.cells[c].cnots().size(); ++k) {
      count += a.cells[c].cnots()[k].enabled != b.cells[c].cnots()[k].enabled ? 1 : 0;
    }
  }
  return count;
}

}  // namespace qcell
