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

#include <gtest/gtest.h>

#include <random>

#include "qcell/decomposer.hpp"
#include "qcell/fabric.hpp"
#include "qcell/json_io.hpp"
#include "test_util.hpp"

namespace qcell {
namespace {

Matrix toffoli_oracle(int level) {
  // Built from the 8 basis states directly.
  Matrix t = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    const int b1 = (i >> 2) & 1;
    const int b2 = (i >> 1) & 1;
    const bool fire = level == 1 ? (b1 == 1 && b2 == 1) : (b1 == 0 && b2 == 0);
    t(fire ? i ^ 1 : i, i) = 1.0;
  }
  return t;
}

TEST(Cell, Census) {
  for (int n = 1; n <= 6; ++n) {
    const Cell c = new_cell(n);
    EXPECT_EQ(single_slot_count(n), n * (n + 1));
    EXPECT_EQ(cnot_slot_count(n), n * (n - 1));
    EXPECT_EQ(free_parameter_count(n), 3 * n * (n + 1) + n * (n - 1));
    EXPECT_EQ(static_cast<int>(c.cnots().size()), n * (n - 1));
    EXPECT_EQ(c.enabled_cnot_count(), 0u);
  }
  EXPECT_EQ(single_slot_count(2), 6);
  EXPECT_EQ(cnot_slot_count(2), 2);
  EXPECT_EQ(single_slot_count(3), 12);
  EXPECT_EQ(cnot_slot_count(3), 6);
  EXPECT_EQ(free_parameter_count(5), 110);
  EXPECT_THROW(new_cell(0), ValidationError);
}

TEST(Cell, CanonicalCnotOrder) {
  const Cell c(3);
  const std::vector<std::pair<int, int>> expected = {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
  ASSERT_EQ(c.cnots().size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(c.cnots()[k].control, expected[k].first);
    EXPECT_EQ(c.cnots()[k].target, expected[k].second);
  }
}

TEST(Cell, SlotAccessChecksBounds) {
  Cell c(2);
  EXPECT_THROW(c.slot(3, 1), ValidationError);
  EXPECT_THROW(c.slot(0, 3), ValidationError);
  EXPECT_THROW(c.set_cnot(1, 1, true), ValidationError);
}

TEST(CellToUnitary, Examples) {
  EXPECT_LE(max_abs_diff(cell_to_unitary(Cell(2)), gates::identity(4)), 0.0);
  Cell c(2);
  c.set_cnot(1, 2, true);
  EXPECT_EQ(max_abs_diff(cell_to_unitary(c), cnot_matrix(2, 1, 2)), 0.0);

  Cell h(2);
  h.slot(0, 1) = {0.0, 0.0, kPi / 2, kPi};
  CellProgram p{2, kPi / 2, {h}};
  EXPECT_LE(max_abs_diff(program_to_unitary(p), kron(gates::hadamard(), gates::identity(2))), 1e-15);
}

TEST(CellToUnitary, TemporalOrderInsideCell) {
  // L0 on wire 2, CNOT(1,2) in G1, then L1 on wire 2.
  std::mt19937_64 rng(30);
  Cell c(2);
  const SingleQubitParams a = testing::random_params(rng);
  const SingleQubitParams b = testing::random_params(rng);
  c.slot(0, 2) = a;
  c.set_cnot(1, 2, true);
  c.set_cnot(2, 1, true);
  c.slot(1, 2) = b;
  const Matrix expected = cnot_matrix(2, 2, 1) * embed_single(2, 2, zyz_compose(b)) *
                          cnot_matrix(2, 1, 2) * embed_single(2, 2, zyz_compose(a));
  EXPECT_LE(max_abs_diff(cell_to_unitary(c), expected), 1e-14);
}

TEST(Universality, SingleSlotAndSingleCnot) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      const Matrix v = haar_random_unitary(2, rng);
      SingleQubitParams p = zyz_decompose(v);
      p.theta0 = 0.0;
      Cell c(n);
      c.slot(0, k) = p;
      EXPECT_LE(phase_invariant_error(cell_to_unitary(c), embed_single(n, k, v)), 1e-10);
    }
    for (int ctl = 1; ctl <= n; ++ctl) {
      for (int tgt = 1; tgt <= n; ++tgt) {
        if (ctl != tgt) {
          Cell c(n);
          c.set_cnot(ctl, tgt, true);
          EXPECT_EQ(max_abs_diff(cell_to_unitary(c), cnot_matrix(n, ctl, tgt)), 0.0);
        }
      }
    }
  }
}

TEST(ProgramToUnitary, Examples) {
  EXPECT_EQ(max_abs_diff(program_to_unitary(CellProgram{2, 0.0, {}}), gates::identity(4)), 0.0);
  Cell c(2);
  c.set_cnot(1, 2, true);
  EXPECT_EQ(max_abs_diff(program_to_unitary(CellProgram{2, 0.0, {c, c}}), gates::identity(4)), 0.0);
  CellProgram bad{3, 0.0, {c}};
  EXPECT_THROW(program_to_unitary(bad), ValidationError);
  Cell phased(2);
  phased.slot(1, 1).theta0 = 0.5;
  EXPECT_THROW(program_to_unitary(CellProgram{2, 0.0, {phased}}), ValidationError);
}

TEST(CompileCircuit, SingleCnotIsOneCell) {
  Circuit c(2);
  c.cnot(1, 2);
  const CellProgram p = compile_circuit(c);
  EXPECT_EQ(p.cells.size(), 1u);
  EXPECT_EQ(max_abs_diff(program_to_unitary(p), cnot_matrix(2, 1, 2)), 0.0);
  EXPECT_TRUE(compile_circuit(Circuit(3)).cells.empty());
}

TEST(CompileCircuit, NeverMoreCellsThanGatesAndExact) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    std::uniform_int_distribution<int> wire(1, n);
    Circuit c(n);
    for (int g = 0; g < 25; ++g) {
      if (n > 1 && kind(rng) == 0) {
        const int a = wire(rng);
        int b = wire(rng);
        while (b == a) {
          b = wire(rng);
        }
        c.cnot(a, b);
      } else {
        SingleQubitParams p = testing::random_params(rng);
        p.theta0 = 2 * kPi * (g % 7) / 7.0;
        c.single(wire(rng), p);
      }
    }
    const CellProgram p = compile_circuit(c);
    EXPECT_LE(p.cells.size(), c.size());
    EXPECT_LE(phase_invariant_error(program_to_unitary(p), circuit_to_unitary(c)), 1e-9);
    EXPECT_LE(max_abs_diff(program_to_unitary(p), circuit_to_unitary(c)), 1e-10);
    // Deterministic.
    EXPECT_EQ(json_io::canonical_dump(json_io::program_to_json(p)),
              json_io::canonical_dump(json_io::program_to_json(compile_circuit(c))));
  }
}

TEST(CompileCircuit, FlattenThenRecompile) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix u = haar_random_unitary(4, rng);
    const CellProgram p = compile_unitary2q(u);
    const Circuit flat = flatten(p);
    EXPECT_LE(max_abs_diff(circuit_to_unitary(flat), program_to_unitary(p)), 1e-12);
    const CellProgram again = compile_circuit(flat);
    EXPECT_LE(phase_invariant_error(program_to_unitary(again), program_to_unitary(p)), 1e-9);
    EXPECT_LE(again.cells.size(), p.cells.size());
  }
}

TEST(CompileCircuit, FlattenCarriesPhaseWithoutSingles) {
  Cell c(2);
  c.set_cnot(1, 2, true);
  const CellProgram p{2, 1.25, {c}};
  const Circuit flat = flatten(p);
  EXPECT_EQ(flat.single_count(), 1u);
  EXPECT_LE(max_abs_diff(circuit_to_unitary(flat), program_to_unitary(p)), 1e-15);
}

TEST(CompileCircuit, StandardToffoliFitsInSixCells) {
  const auto h = zyz_decompose(gates::hadamard());
  const auto t = zyz_decompose(gates::phase(kPi / 4));
  const auto tdg = zyz_decompose(gates::phase(-kPi / 4));
  Circuit c(3);
  c.single(3, h).cnot(2, 3).single(3, tdg).cnot(1, 3).single(3, t).cnot(2, 3).single(3, tdg);
  c.cnot(1, 3).single(2, t).single(3, t).single(3, h).cnot(1, 2).single(1, t).single(2, tdg);
  c.cnot(1, 2);
  ASSERT_EQ(c.cnot_count(), 6u);
  EXPECT_LE(phase_invariant_error(circuit_to_unitary(c), toffoli_oracle(1)), 1e-9);
  const CellProgram p = compile_circuit(c);
  EXPECT_LE(p.cells.size(), 6u);
  EXPECT_LE(phase_invariant_error(program_to_unitary(p), toffoli_oracle(1)), 1e-9);
}

TEST(CompileUnitary2q, Examples) {
  const CellProgram id = compile_unitary2q(gates::identity(4));
  EXPECT_EQ(id.cells.size(), 2u);
  EXPECT_LE(max_abs_diff(program_to_unitary(id), gates::identity(4)), 1e-10);
  const CellProgram swap = compile_unitary2q(gates::swap());
  EXPECT_LE(max_abs_diff(program_to_unitary(swap), gates::swap()), 1e-9);
  std::mt19937_64 rng(34);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix u = haar_random_unitary(4, rng);
    const CellProgram p = compile_unitary2q(u);
    EXPECT_EQ(p.cells.size(), 2u);
    worst = std::max(worst, max_abs_diff(program_to_unitary(p), u));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Toffoli, BothLevelsMatchOracle) {
  EXPECT_EQ(max_abs_diff(toffoli_matrix(1), toffoli_oracle(1)), 0.0);
  EXPECT_EQ(max_abs_diff(toffoli_matrix(0), toffoli_oracle(0)), 0.0);
  const Matrix xx = kron(kron(gates::pauli_x(), gates::pauli_x()), gates::identity(2));
  EXPECT_EQ(max_abs_diff(toffoli_oracle(0), xx * toffoli_oracle(1) * xx), 0.0);
  for (int level : {0, 1}) {
    const CellProgram p = toffoli_program(level);
    EXPECT_EQ(p.n, 3);
    EXPECT_EQ(p.cells.size(), 2u);
    const Matrix u = program_to_unitary(p);
    EXPECT_LE(phase_invariant_error(u, toffoli_oracle(level)), 1e-10);
    EXPECT_LE(max_abs_diff(u, toffoli_oracle(level)), 1e-12);
    // Every basis state.
    for (int i = 0; i < 8; ++i) {
      const Vector out = u.col(i);
      Eigen::Index peak = 0;
      out.cwiseAbs().maxCoeff(&peak);
      EXPECT_NEAR(std::abs(out(peak)), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(toffoli_oracle(level)(peak, i)), 1.0, 0.0);
    }
  }
  EXPECT_THROW(toffoli_program(2), ValidationError);
}

TEST(Toffoli, LevelsDifferOnlyInFourSlots) {
  const CellProgram one = toffoli_program(1);
  const CellProgram zero = toffoli_program(0);
  EXPECT_LE(count_slot_differences(one, zero), 4u);
  EXPECT_GT(count_slot_differences(one, zero), 0u);
  EXPECT_EQ(count_cnot_differences(one, zero), 0u);
}

TEST(Toffoli, Input110GivesOutput111) {
  const Matrix u = program_to_unitary(toffoli_program(1));
  const Vector out = u * StateVector::from_bits("110").amplitudes();
  EXPECT_NEAR(std::norm(out(7)), 1.0, 1e-12);
}

}  // namespace
}  // namespace qcell
