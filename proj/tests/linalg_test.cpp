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

#include <array>
#include <random>

#include "qcell/linalg.hpp"
#include "test_util.hpp"

namespace qcell {
namespace {

using testing::expm_i;

TEST(Kron, IdentityAndPauliEntries) {
  EXPECT_EQ(max_abs_diff(kron(gates::identity(2), gates::identity(2)), gates::identity(4)), 0.0);
  const Matrix xz = kron(gates::pauli_x(), gates::pauli_z());
  EXPECT_EQ(xz(0, 2), Complex(1.0));
  EXPECT_EQ(xz(1, 3), Complex(-1.0));
  EXPECT_EQ(xz(0, 0), Complex(0.0));
}

TEST(Kron, MatchesQuadrupleLoop) {
  const Matrix a = haar_random_unitary(2, 1);
  const Matrix b = haar_random_unitary(3, 2);
  const Matrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < 3; ++s) {
          EXPECT_EQ(k(3 * i + r, 3 * j + s), a(i, j) * b(r, s));
        }
      }
    }
  }
}

TEST(Kron, Associative) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = haar_random_unitary(2, rng);
    const Matrix b = haar_random_unitary(2, rng);
    const Matrix c = haar_random_unitary(2, rng);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    const std::array<Matrix, 3> all = {a, b, c};
    EXPECT_LE(max_abs_diff(kron_all(all), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(IsUnitary, Examples) {
  EXPECT_TRUE(is_unitary(gates::identity(4), 1e-12));
  EXPECT_FALSE(is_unitary(2.0 * gates::identity(2), 1e-12));
  EXPECT_TRUE(is_unitary(haar_random_unitary(4, 99), 1e-12));
  EXPECT_THROW(is_unitary(Matrix::Zero(2, 3), 1e-12), DimensionError);
}

TEST(PhaseInvariantError, Examples) {
  const Matrix u = haar_random_unitary(4, 3);
  EXPECT_LE(phase_invariant_error(u, u), 1e-14);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> phi(-10.0, 10.0);
  for (int t = 0; t < 50; ++t) {
    const Complex ph = std::polar(1.0, phi(rng));
    EXPECT_LE(phase_invariant_error(gates::identity(2), ph * gates::identity(2)), 1e-14);
    EXPECT_LE(phase_invariant_error(u, ph * u), 1e-14);
    EXPECT_NEAR(relative_phase(u, ph * u), std::arg(ph), 1e-12);
  }
  EXPECT_DOUBLE_EQ(phase_invariant_error(gates::identity(2), gates::pauli_x()), 1.0);
  EXPECT_THROW(phase_invariant_error(gates::identity(2), gates::identity(4)), DimensionError);
}

TEST(PhaseInvariantError, Symmetric) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = haar_random_unitary(4, rng);
    const Matrix b = haar_random_unitary(4, rng);
    EXPECT_NEAR(phase_invariant_error(a, b), phase_invariant_error(b, a), 1e-14);
    EXPECT_GT(phase_invariant_error(a, b), 1e-3);
  }
}

TEST(PhaseInvariantError, AgreesWithDirectFormula) {
  std::mt19937_64 rng(10);
  const auto direct = [](const Matrix& a, const Matrix& b) {
    const double d = static_cast<double>(a.rows());
    return std::sqrt(std::max(0.0, 1.0 - std::norm((a.adjoint() * b).trace()) / (d * d)));
  };
  for (int t = 0; t < 50; ++t) {
    const Matrix a = haar_random_unitary(4, rng);
    const Matrix b = haar_random_unitary(4, rng);
    EXPECT_NEAR(phase_invariant_error(a, b), direct(a, b), 1e-12);
    // Small perturbation: exp(i eps H) against the identity gives about eps * spread(H).
    const double eps = 1e-6;
    const Matrix h = (b + b.adjoint()) / 2.0;
    const Matrix near = testing::expm_i(eps * h);
    EXPECT_NEAR(phase_invariant_error(near, gates::identity(4)), direct(near, gates::identity(4)), 1e-9);
  }
  // Non-unitary inputs fall back to the formula as written.
  EXPECT_EQ(phase_invariant_error(2.0 * gates::identity(2), gates::identity(2)), 0.0);
}

TEST(Haar, DeterministicAndUnitary) {
  EXPECT_EQ(max_abs_diff(haar_random_unitary(4, 17), haar_random_unitary(4, 17)), 0.0);
  EXPECT_GT(max_abs_diff(haar_random_unitary(4, 17), haar_random_unitary(4, 18)), 1e-3);
  const Matrix one = haar_random_unitary(1, 4);
  EXPECT_NEAR(std::abs(one(0, 0)), 1.0, 1e-12);
  for (int dim : {2, 3, 4, 8}) {
    EXPECT_TRUE(is_unitary(haar_random_unitary(dim, 123), 1e-12));
  }
  EXPECT_THROW(haar_random_unitary(0, 1), ValidationError);
}

TEST(Haar, FirstMomentsLookUniform) {
  // For Haar U(2), E|u00|^2 = 1/2 and E[u00] = 0.
  std::mt19937_64 rng(21);
  const int n = 20000;
  double mod2 = 0.0;
  Complex mean = 0.0;
  for (int t = 0; t < n; ++t) {
    const Matrix u = haar_random_unitary(2, rng);
    mod2 += std::norm(u(0, 0));
    mean += u(0, 0);
  }
  EXPECT_NEAR(mod2 / n, 0.5, 0.01);
  EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.02);
}

TEST(PauliString, ParseAndCommute) {
  EXPECT_EQ(PauliString::parse("XXZ").to_string(), "XXZ");
  EXPECT_THROW(PauliString::parse(""), ValidationError);
  EXPECT_THROW(PauliString::parse("XA"), ValidationError);
  EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("YY")));
  EXPECT_FALSE(PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
  EXPECT_TRUE(PauliString::parse("XXZ").commutes_with(PauliString::parse("ZZX")) ==
              false);
  EXPECT_TRUE(PauliString::parse("XXZ").commutes_with(PauliString::parse("YYZ")));
}

TEST(PauliStringExp, SingleZ) {
  const double t = 0.7;
  const std::array<PauliTerm, 1> terms = {PauliTerm{t, PauliString::parse("Z")}};
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::polar(1.0, t);
  expected(1, 1) = std::polar(1.0, -t);
  EXPECT_LE(max_abs_diff(pauli_string_exp(terms), expected), 1e-15);
}

TEST(PauliStringExp, MatchesMatrixExponential) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  for (int t = 0; t < 30; ++t) {
    const std::array<PauliTerm, 3> terms = {PauliTerm{c(rng), PauliString::parse("XX")},
                                            PauliTerm{c(rng), PauliString::parse("YY")},
                                            PauliTerm{c(rng), PauliString::parse("ZZ")}};
    Matrix h = Matrix::Zero(4, 4);
    for (const PauliTerm& term : terms) {
      h += term.coeff * term.string.matrix();
    }
    const Matrix u = pauli_string_exp(terms);
    EXPECT_LE(max_abs_diff(u, expm_i(h)), 1e-12);
    EXPECT_TRUE(is_unitary(u, 1e-12));
  }
}

TEST(PauliStringExp, IsotropicQuarterPiIsSwapClass) {
  const double q = kPi / 4;
  const std::array<PauliTerm, 3> terms = {PauliTerm{q, PauliString::parse("XX")},
                                          PauliTerm{q, PauliString::parse("YY")},
                                          PauliTerm{q, PauliString::parse("ZZ")}};
  const Matrix u = pauli_string_exp(terms);
  EXPECT_LE(phase_invariant_error(u, gates::swap()), 1e-7);
  EXPECT_LE(max_abs_diff(u, std::polar(1.0, q) * gates::swap()), 1e-12);
}

TEST(PauliStringExp, EmptyAndErrors) {
  EXPECT_EQ(pauli_string_exp({}).rows(), 1);
  const std::array<PauliTerm, 3> bad = {PauliTerm{0.1, PauliString::parse("XI")},
                                        PauliTerm{0.2, PauliString::parse("YY")},
                                        PauliTerm{0.3, PauliString::parse("ZI")}};
  try {
    pauli_string_exp(bad);
    FAIL() << "expected NonCommutingError";
  } catch (const NonCommutingError& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 1u);
  }
  const std::array<PauliTerm, 2> widths = {PauliTerm{0.1, PauliString::parse("X")},
                                           PauliTerm{0.2, PauliString::parse("XX")}};
  EXPECT_THROW(pauli_string_exp(widths), DimensionError);
}

TEST(Zyz, KnownGates) {
  EXPECT_EQ(zyz_decompose(gates::identity(2)), (SingleQubitParams{0, 0, 0, 0}));
  const SingleQubitParams h = zyz_decompose(gates::hadamard());
  EXPECT_NEAR(h.theta0, kPi / 2, 1e-12);
  EXPECT_NEAR(h.theta1, 0.0, 1e-12);
  EXPECT_NEAR(h.theta2, kPi / 2, 1e-12);
  EXPECT_NEAR(h.theta3, kPi, 1e-12);
  const SingleQubitParams x = zyz_decompose(gates::pauli_x());
  EXPECT_NEAR(x.theta2, kPi, 1e-12);
  EXPECT_EQ(x.theta3, 0.0);
  EXPECT_THROW(zyz_decompose(2.0 * gates::identity(2)), ValidationError);
  EXPECT_THROW(zyz_decompose(gates::identity(4)), DimensionError);
}

TEST(Zyz, HaarRoundTripAndCanonicalRanges) {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Matrix u = haar_random_unitary(2, rng);
    const SingleQubitParams p = zyz_decompose(u);
    worst = std::max(worst, max_abs_diff(zyz_compose(p), u));
    EXPECT_GE(p.theta2, 0.0);
    EXPECT_LE(p.theta2, kPi);
    for (double a : {p.theta0, p.theta1, p.theta3}) {
      EXPECT_GE(a, 0.0);
      EXPECT_LT(a, 2 * kPi);
    }
    // Canonical form is unique: decomposing the composed matrix again gives
    // the same tuple.
    const SingleQubitParams q = zyz_decompose(zyz_compose(p));
    EXPECT_NEAR(std::abs(wrap_pi(p.theta0 - q.theta0)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(wrap_pi(p.theta1 - q.theta1)), 0.0, 1e-9);
    EXPECT_NEAR(p.theta2, q.theta2, 1e-9);
    EXPECT_NEAR(std::abs(wrap_pi(p.theta3 - q.theta3)), 0.0, 1e-9);
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Zyz, DegenerateCasesSetTheta3ToZero) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  for (int t = 0; t < 100; ++t) {
    const Matrix diag = std::polar(1.0, a(rng)) * gates::rz(a(rng));
    const SingleQubitParams p = zyz_decompose(diag);
    EXPECT_EQ(p.theta2, 0.0);
    EXPECT_EQ(p.theta3, 0.0);
    EXPECT_LE(max_abs_diff(zyz_compose(p), diag), 1e-10);
    const Matrix anti = diag * gates::pauli_x();
    const SingleQubitParams q = zyz_decompose(anti);
    EXPECT_NEAR(q.theta2, kPi, 1e-12);
    EXPECT_EQ(q.theta3, 0.0);
    EXPECT_LE(max_abs_diff(zyz_compose(q), anti), 1e-10);
  }
}

TEST(NearestKron, Examples) {
  const KronFactors id = nearest_kron_factor(gates::identity(4));
  EXPECT_LE(max_abs_diff(id.a, gates::identity(2)), 1e-12);
  EXPECT_LE(max_abs_diff(id.b, gates::identity(2)), 1e-12);

  const KronFactors xz = nearest_kron_factor(kron(gates::pauli_x(), gates::pauli_z()));
  EXPECT_LE(max_abs_diff(xz.a, gates::pauli_x()), 1e-12);
  EXPECT_LE(max_abs_diff(xz.b, gates::pauli_z()), 1e-12);
}

TEST(NearestKron, HaarProductsRoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = haar_random_unitary(2, rng);
    const Matrix b = haar_random_unitary(2, rng);
    const KronFactors f = nearest_kron_factor(kron(a, b));
    EXPECT_LE(max_abs_diff(kron(f.a, f.b), kron(a, b)), 1e-10);
    EXPECT_TRUE(is_unitary(f.a, 1e-10));
    EXPECT_TRUE(is_unitary(f.b, 1e-10));
    // Canonical split: first row-major entry of maximal modulus in a is real
    // and positive. Unitary 2x2 moduli tie exactly, so scan in that order.
    const double peak = f.a.cwiseAbs().maxCoeff();
    int k = 0;
    while (std::abs(f.a(k / 2, k % 2)) < peak - 1e-12) {
      ++k;
    }
    EXPECT_NEAR(f.a(k / 2, k % 2).imag(), 0.0, 1e-12);
    EXPECT_GT(f.a(k / 2, k % 2).real(), 0.0);
  }
}

TEST(NearestKron, RejectsEntanglingGate) {
  Matrix cnot = Matrix::Identity(4, 4);
  cnot.block(2, 2, 2, 2) = gates::pauli_x();
  try {
    nearest_kron_factor(cnot);
    FAIL() << "expected NotFactorableError";
  } catch (const NotFactorableError& e) {
    EXPECT_GT(e.residual(), 0.1);
  }
}

TEST(Wrap, Ranges) {
  EXPECT_EQ(wrap_two_pi(0.0), 0.0);
  EXPECT_NEAR(wrap_two_pi(-0.5), 2 * kPi - 0.5, 1e-15);
  EXPECT_EQ(wrap_two_pi(2 * kPi), 0.0);
  EXPECT_NEAR(wrap_pi(kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_pi(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_pi(3 * kPi / 2), -kPi / 2, 1e-15);
}

TEST(Gates, AllUnitary) {
  for (const Matrix& g : {gates::pauli_x(), gates::pauli_y(), gates::pauli_z(), gates::hadamard(),
                          gates::rx(0.3), gates::ry(1.1), gates::rz(-2.0), gates::phase(0.4),
                          gates::swap()}) {
    EXPECT_TRUE(is_unitary(g, 1e-12));
  }
}

}  // namespace
}  // namespace qcell
