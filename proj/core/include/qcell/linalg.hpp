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

#ifndef QCELL_LINALG_HPP
#define QCELL_LINALG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcell/error.hpp"

namespace qcell {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// Tolerance tiers used throughout the library.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kRoundTripTol = 1e-10;
inline constexpr double kPipelineTol = 1e-8;

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Tensor product of single-qubit Pauli operators, qubit 1 leftmost.
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> factors);

  /// Parses a string such as "XXZ" or "IIX". Throws ValidationError on
  /// empty input or characters outside {I, X, Y, Z}.
  static PauliString parse(std::string_view text);

  std::size_t qubit_count() const { return factors_.size(); }
  const std::vector<Pauli>& factors() const { return factors_; }

  /// Two strings commute iff they anticommute on an even number of qubits.
  bool commutes_with(const PauliString& other) const;

  Matrix matrix() const;
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> factors_;
};

struct PauliTerm {
  double coeff;  // radians
  PauliString string;
};

/// Thrown by pauli_string_exp when two terms fail to commute.
class NonCommutingError : public ValidationError {
 public:
  NonCommutingError(std::size_t first, std::size_t second, const std::string& message)
      : ValidationError(message), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Parameters of U = e^{i theta0} Rz(theta1) Ry(theta2) Rz(theta3) with
/// Rz(t) = diag(e^{-it/2}, e^{it/2}) and Ry(t) = [[c, -s], [s, c]], c = cos(t/2).
///
/// Canonical ranges: theta2 in [0, pi]; theta0, theta1, theta3 in [0, 2 pi);
/// theta3 = 0 whenever theta2 is 0 or pi.
struct SingleQubitParams {
  double theta0 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;

  friend bool operator==(const SingleQubitParams&, const SingleQubitParams&) = default;
};

namespace gates {
Matrix identity(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
/// e^{-i t sigma_x / 2}, and likewise for ry and rz.
Matrix rx(double t);
Matrix ry(double t);
Matrix rz(double t);
/// diag(1, e^{i phi}).
Matrix phase(double phi);
Matrix swap();
}  // namespace gates

/// Standard Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// Left-to-right Kronecker product of all factors. Empty input yields [1].
Matrix kron_all(std::span<const Matrix> factors);

/// True iff max |(m^dagger m - I)_{ij}| <= tol. Throws DimensionError if m is
/// not square.
bool is_unitary(const Matrix& m, double tol);

/// Largest entrywise modulus of a - b. Throws DimensionError on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// sqrt(max(0, 1 - |tr(u^dagger v)|^2 / d^2)); zero iff u and v agree up to a
/// global phase (for unitary inputs). Unitary inputs go through an equivalent
/// cancellation-free form, so the result resolves errors well below 1e-8.
double phase_invariant_error(const Matrix& u, const Matrix& v);

/// Phase phi minimizing ||e^{i phi} u - v||, i.e. arg tr(u^dagger v).
double relative_phase(const Matrix& u, const Matrix& v);

/// Haar-distributed unitary from complex Ginibre samples, Householder QR and
/// the diagonal phase fix. Deterministic for a fixed seed.
Matrix haar_random_unitary(int dim, std::uint64_t seed);
Matrix haar_random_unitary(int dim, std::mt19937_64& rng);

/// Product over terms of (cos(c) I + i sin(c) P). For pairwise commuting
/// strings this equals exp(i sum_j c_j P_j). An empty list yields [1].
/// Throws NonCommutingError naming the first offending pair.
Matrix pauli_string_exp(std::span<const PauliTerm> terms);

/// Canonical ZYZ parameters of a 2x2 unitary. Throws ValidationError if u is
/// not unitary within 1e-10.
SingleQubitParams zyz_decompose(const Matrix& u);
Matrix zyz_compose(const SingleQubitParams& p);

/// Thrown when a 4x4 matrix is not (close to) a tensor product.
class NotFactorableError : public ValidationError {
 public:
  NotFactorableError(double residual, const std::string& message)
      : ValidationError(message), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct KronFactors {
  Matrix a;
  Matrix b;
  double residual = 0.0;  // max |kron(a, b) - u|
};

/// Factors u ~= a (x) b through the rank-one approximation of the
/// rearranged matrix R[(i1 j1), (i2 j2)] = u[(i1 i2), (j1 j2)]. The phase is
/// split so that the largest-magnitude entry of a is real and nonnegative.
KronFactors nearest_kron_factor(const Matrix& u, double tol = kPipelineTol);

/// Wraps an angle into [0, 2 pi).
double wrap_two_pi(double angle);
/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);

}  // namespace qcell

#endif  // QCELL_LINALG_HPP
