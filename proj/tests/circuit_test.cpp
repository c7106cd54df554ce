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

#include "qcell/circuit.hpp"
#include "test_util.hpp"

namespace qcell {
namespace {

Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_int_distribution<int> wire(1, n);
  std::bernoulli_distribution pick_cnot(0.4);
  for (int k = 0; k < gates; ++k) {
    if (n > 1 && pick_cnot(rng)) {
      const int a = wire(rng);
      int b = wire(rng);
      while (b == a) {
        b = wire(rng);
      }
      c.cnot(a, b);
    } else {
      c.single(wire(rng), testing::random_params(rng));
    }
  }
  return c;
}

TEST(CnotMatrix, Examples) {
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = expected(2, 3) = expected(3, 2) = 1.0;
  EXPECT_EQ(max_abs_diff(cnot_matrix(2, 1, 2), expected), 0.0);

  const Matrix c21 = cnot_matrix(2, 2, 1);
  EXPECT_EQ(c21(3, 1), Complex(1.0));
  EXPECT_EQ(c21(1, 3), Complex(1.0));
  EXPECT_EQ(c21(0, 0), Complex(1.0));
  EXPECT_EQ(c21(2, 2), Complex(1.0));

  const Matrix c13 = cnot_matrix(3, 1, 3);
  int off = 0;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (r != c && c13(r, c) != Complex(0.0)) {
        ++off;
      }
    }
  }
  EXPECT_EQ(off, 4);
  EXPECT_THROW(cnot_matrix(2, 1, 1), ValidationError);
  EXPECT_THROW(cnot_matrix(2, 0, 1), ValidationError);
  EXPECT_THROW(cnot_matrix(2, 1, 3), ValidationError);
}

TEST(Circuit, Validation) {
  Circuit c(2);
  EXPECT_THROW(c.cnot(1, 1), ValidationError);
  EXPECT_THROW(c.cnot(1, 3), ValidationError);
  EXPECT_THROW(c.single(0, {}), ValidationError);
  EXPECT_THROW(Circuit(0), ValidationError);
  c.cnot(1, 2).single(2, {});
  EXPECT_EQ(c.cnot_count(), 1u);
  EXPECT_EQ(c.single_count(), 1u);
  Circuit other(3);
  EXPECT_THROW(c.append(other), DimensionError);
}

TEST(CircuitToUnitary, Examples) {
  EXPECT_EQ(max_abs_diff(circuit_to_unitary(Circuit(2)), gates::identity(4)), 0.0);
  Circuit c(2);
  c.cnot(1, 2);
  EXPECT_EQ(max_abs_diff(circuit_to_unitary(c), cnot_matrix(2, 1, 2)), 0.0);
}

TEST(CircuitToUnitary, BellState) {
  Circuit c(2);
  c.single(1, zyz_decompose(gates::hadamard())).cnot(1, 2);
  const StateVector out = apply_to_state(c, StateVector::basis(2, 0));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(out[0] - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[3] - r), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out[2]), 0.0, 1e-12);
}

TEST(CircuitToUnitary, EmbeddingMatchesKronChain) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 4; ++n) {
    for (int w = 1; w <= n; ++w) {
      const SingleQubitParams p = testing::random_params(rng);
      Circuit c(n);
      c.single(w, p);
      std::vector<Matrix> factors(static_cast<std::size_t>(n), gates::identity(2));
      factors[static_cast<std::size_t>(w - 1)] = zyz_compose(p);
      EXPECT_LE(max_abs_diff(circuit_to_unitary(c), kron_all(factors)), 1e-12);
      EXPECT_LE(max_abs_diff(embed_single(n, w, zyz_compose(p)), kron_all(factors)), 1e-12);
    }
  }
}

TEST(CircuitToUnitary, Composition) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const Circuit a = random_circuit(3, 12, rng);
    const Circuit b = random_circuit(3, 12, rng);
    Circuit ab = a;
    ab.append(b);
    EXPECT_LE(max_abs_diff(circuit_to_unitary(ab), circuit_to_unitary(b) * circuit_to_unitary(a)),
              1e-10);
    EXPECT_TRUE(is_unitary(circuit_to_unitary(ab), 1e-12));
  }
}

TEST(ApplyToState, Examples) {
  const StateVector s = StateVector::from_bits("10");
  EXPECT_EQ(max_abs_diff(apply_to_state(Circuit(2), s).amplitudes(), s.amplitudes()), 0.0);
  Circuit c(2);
  c.cnot(1, 2);
  const StateVector out = apply_to_state(c, s);
  EXPECT_EQ(out[3], Complex(1.0));
  EXPECT_THROW(apply_to_state(Circuit(3), s), DimensionError);
}

TEST(ApplyToState, MatchesFullMatrixAndPreservesNorm) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const Circuit c = random_circuit(4, 20, rng);
    const Matrix u = circuit_to_unitary(c);
    const Matrix psi_m = haar_random_unitary(16, rng).col(0);
    const StateVector psi(4, psi_m);
    const StateVector out = apply_to_state(c, psi);
    EXPECT_LE(max_abs_diff(out.amplitudes(), u * psi.amplitudes()), 1e-10);
    EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-10);
  }
}

TEST(StateVector, Validation) {
  EXPECT_THROW(StateVector(2, Vector::Zero(4)), ValidationError);
  EXPECT_THROW(StateVector(2, Vector::Ones(3)), DimensionError);
  EXPECT_THROW(StateVector::from_bits("102"), ValidationError);
  EXPECT_EQ(StateVector::from_bits("011")[3], Complex(1.0));
  EXPECT_EQ(basis_label(3, 3), "011");
  const std::vector<double> p = StateVector::from_bits("1").probabilities();
  EXPECT_EQ(p[1], 1.0);
}

TEST(TextFormat, RoundTrip) {
  std::mt19937_64 rng(8);
  const Circuit c = random_circuit(3, 15, rng);
  const Circuit back = parse_circuit_text(to_text(c));
  ASSERT_EQ(back.size(), c.size());
  EXPECT_EQ(max_abs_diff(circuit_to_unitary(back), circuit_to_unitary(c)), 0.0);
}

TEST(TextFormat, ParsesCommentsAndPhase) {
  const Circuit c = parse_circuit_text(
      "# Bell pair\nqubits 2\n\nsq 1 0 1.5707963267948966 3.141592653589793 1.5707963267948966\n"
      "cnot 1 2  # entangle\n");
  EXPECT_EQ(c.qubits(), 2);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_LE(max_abs_diff(zyz_compose(std::get<SingleGate>(c.gates()[0]).params), gates::hadamard()),
            1e-15);
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_circuit_text("sq 1 0 0 0\n"), ValidationError);
  EXPECT_THROW(parse_circuit_text("qubits 2\nfoo 1 2\n"), ValidationError);
  EXPECT_THROW(parse_circuit_text("qubits 2\ncnot 1\n"), ValidationError);
  EXPECT_THROW(parse_circuit_text("qubits 2\nsq 1 a 0 0\n"), ValidationError);
  EXPECT_THROW(parse_circuit_text("qubits 2\ncnot 1 3\n"), ValidationError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(format_double(kPi)), kPi);
  EXPECT_EQ(format_double(0.0), "0");
}

}  // namespace
}  // namespace qcell
