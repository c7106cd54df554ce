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

#ifndef QCELL_DECOMPOSER_HPP
#define QCELL_DECOMPOSER_HPP

#include <array>

#include "qcell/circuit.hpp"
#include "qcell/linalg.hpp"

namespace qcell {

/// The fixed change of basis used by the two-qubit algorithm.
///
/// `m` is the 4x4 transformation whose columns are magic states (up to sign),
/// `lambda` the +-1 matrix relating the diagonal phases of M^dagger U M to
/// (theta0, t1, t2, t3) and `lambda_inv` = lambda^T / 4.
struct MagicBasis {
  Matrix m;
  Eigen::Matrix4i lambda;
  Eigen::Matrix4d lambda_inv;

  static const MagicBasis& get();
};

/// Column k of MagicBasis::m is +-|phi_{kMagicColumnState[k] + 1}>, where
/// |phi_1> = |Phi+>, |phi_2> = -i|Phi->, |phi_3> = |Psi->, |phi_4> = -i|Psi+>.
inline constexpr std::array<int, 4> kMagicColumnState = {0, 3, 2, 1};

/// m^dagger u m. Throws DimensionError unless u is 4x4.
Matrix magic_transform(const Matrix& u);

/// Eigenphases (phi1..phi4) of exp(-i sum theta_k sigma_k (x) sigma_k):
/// phi1 = t1 - t2 + t3, phi2 = -t1 + t2 + t3, phi3 = -t1 - t2 - t3,
/// phi4 = t1 + t2 - t3.
std::array<double, 4> ud_phases(const std::array<double, 3>& theta);

/// lambda_inv * phi, giving (theta0, t1, t2, t3).
std::array<double, 4> theta_from_phi(const std::array<double, 4>& phi);

/// exp(-i (t1 XX + t2 YY + t3 ZZ)).
Matrix interaction_unitary(const std::array<double, 3>& theta);

/// U = e^{i theta0} (u_a (x) u_b) exp(-i sum theta_k sigma_k sigma_k) (v_a (x) v_b).
struct TwoQubitDecomposition {
  double theta0 = 0.0;
  std::array<double, 3> theta{};
  Matrix u_a = Matrix::Identity(2, 2);
  Matrix u_b = Matrix::Identity(2, 2);
  Matrix v_a = Matrix::Identity(2, 2);
  Matrix v_b = Matrix::Identity(2, 2);
};

/// Every matrix the extraction computes on the way, kept for diagnostics
/// and for the invariant tests. v1, v2 and x are real orthogonal; c, s are
/// the diagonals of C and S; f the diagonal of F.
struct KakIntermediates {
  Matrix u_prime;
  Eigen::Matrix4d u_r;
  Eigen::Matrix4d u_i;
  Eigen::Matrix4d v1;
  Eigen::Matrix4d v2;
  Eigen::Matrix4d x;
  Eigen::Vector4d c;
  Eigen::Vector4d s;
  Eigen::Vector4d f;
  std::array<double, 4> phi{};
  // Phase added to the lambda-derived theta0 so that kak_compose matches the
  // input exactly; zero up to rounding for every input seen so far.
  double phase_correction = 0.0;
  int attempts = 0;
};

struct KakResult {
  TwoQubitDecomposition decomposition;
  KakIntermediates intermediates;
  double reconstruction_error = 0.0;  // max entrywise |kak_compose - u|
};

/// Raised when the extraction cannot meet its tolerances; carries the
/// residual and whatever intermediates were computed.
class DecompositionError : public Error {
 public:
  DecompositionError(double residual, KakIntermediates intermediates, const std::string& message)
      : Error(message), residual_(residual), intermediates_(std::move(intermediates)) {}
  double residual() const { return residual_; }
  const KakIntermediates& intermediates() const { return intermediates_; }

 private:
  double residual_;
  KakIntermediates intermediates_;
};

/// Two-qubit canonical decomposition through the magic basis.
///
/// U' = M^dagger U M is split into real and imaginary parts U_R, U_I. A real
/// orthogonal V1 jointly diagonalizes U_R U_R^T and U_I U_R^T (both real
/// symmetric); degenerate spectra are handled by diagonalizing random real
/// combinations of the pair, retried up to 8 times. X follows from
/// V1^T U' = e^{i Phi} X^T, the determinants of V1 and X are forced to +1,
/// (theta0, t) = lambda_inv Phi, and the local gates are the tensor factors
/// of M V1 M^dagger and M X^T M^dagger. The interaction is reported in the
/// exp(-i sum theta sigma sigma) convention, i.e. theta = -t.
///
/// Throws ValidationError for non-unitary input and DecompositionError when
/// the reconstruction misses 1e-8.
KakResult kak_decompose(const Matrix& u);

Matrix kak_compose(const TwoQubitDecomposition& d);

/// Three-CNOT, eight single-qubit-gate circuit equal to kak_compose(d)
/// (global phase included). CNOT pattern: 1->2, 2->1, 1->2.
Circuit vidal_dawson_circuit(const TwoQubitDecomposition& d);

/// exp(i(a XXZ + b YYZ + c ZZZ)).
Matrix n_matrix(double a, double b, double c);
/// exp(i(a XXX + b YYX + c ZZX + d IIX)).
Matrix m_matrix(double a, double b, double c, double d);

struct ThreeQubitInteraction {
  std::array<double, 3> n1{};
  std::array<double, 3> n2{};
  std::array<double, 4> m{};
};

/// A_k act on wires 1-2 (4x4), B_k on wire 3 (2x2), k = 1..4 stored at 0..3.
struct ThreeQubitLocals {
  std::array<Matrix, 4> a;
  std::array<Matrix, 4> b;
};

/// (A4 (x) B4) N2 (A3 (x) B3) M (A2 (x) B2) N1 (A1 (x) B1). Throws
/// ValidationError if any local is not unitary within 1e-10.
Matrix three_qubit_template(const ThreeQubitLocals& locals, const ThreeQubitInteraction& inter);

}  // namespace qcell

#endif  // QCELL_DECOMPOSER_HPP
