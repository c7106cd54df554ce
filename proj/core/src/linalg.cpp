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

#include "qcell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcell {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
}

Matrix pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::I:
      return gates::identity(2);
    case Pauli::X:
      return gates::pauli_x();
    case Pauli::Y:
      return gates::pauli_y();
    case Pauli::Z:
      return gates::pauli_z();
  }
  return gates::identity(2);
}

// Angles within this distance of 2 pi fold to zero so that exact inputs
// such as the identity land on the canonical representative.
double snap_two_pi(double angle) {
  double r = wrap_two_pi(angle);
  if (kTwoPi - r < 1e-12) {
    r = 0.0;
  }
  return r;
}

}  // namespace

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  if (r >= kTwoPi) {
    r = 0.0;
  }
  return r;
}

double wrap_pi(double angle) {
  double r = wrap_two_pi(angle);
  if (r > kPi) {
    r -= kTwoPi;
  }
  return r;
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::vector<Pauli> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw ValidationError("PauliString: at least one factor is required");
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> factors;
  factors.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'I':
        factors.push_back(Pauli::I);
        break;
      case 'X':
        factors.push_back(Pauli::X);
        break;
      case 'Y':
        factors.push_back(Pauli::Y);
        break;
      case 'Z':
        factors.push_back(Pauli::Z);
        break;
      default:
        throw ValidationError("PauliString: invalid factor '" + std::string(1, ch) + "' in \"" +
                              std::string(text) + "\"");
    }
  }
  return PauliString(std::move(factors));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.qubit_count() != qubit_count()) {
    throw DimensionError("PauliString: qubit counts differ");
  }
  int anticommuting = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    Pauli a = factors_[k];
    Pauli b = other.factors_[k];
    if (a != Pauli::I && b != Pauli::I && a != b) {
      ++anticommuting;
    }
  }
  return anticommuting % 2 == 0;
}

Matrix PauliString::matrix() const {
  Matrix out = Matrix::Identity(1, 1);
  for (Pauli p : factors_) {
    out = kron(out, pauli_matrix(p));
  }
  return out;
}

std::string PauliString::to_string() const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (Pauli p : factors_) {
    s.push_back(kNames[static_cast<int>(p)]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Fixed gates

namespace gates {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << r, r, r, -r;
  return m;
}

Matrix rx(double t) {
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  Matrix m(2, 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

Matrix ry(double t) {
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  Matrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

Matrix rz(double t) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, -t / 2);
  m(1, 1) = std::polar(1.0, t / 2);
  return m;
}

Matrix phase(double phi) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

}  // namespace gates

// ---------------------------------------------------------------------------
// Products and metrics

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) {
    out = kron(out, f);
  }
  return out;
}

bool is_unitary(const Matrix& m, double tol) {
  require_square(m, "is_unitary");
  const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) {
    return 0.0;
  }
  return (a - b).cwiseAbs().maxCoeff();
}

double phase_invariant_error(const Matrix& u, const Matrix& v) {
  require_square(u, "phase_invariant_error");
  require_square(v, "phase_invariant_error");
  if (u.rows() != v.rows()) {
    throw DimensionError("phase_invariant_error: dimension mismatch");
  }
  const double d = static_cast<double>(u.rows());
  const Complex t = (u.adjoint() * v).trace();
  if (is_unitary(u, 1e-8) && is_unitary(v, 1e-8)) {
    // For unitaries 1 - |t|^2/d^2 = (r / 2d)(1 + |t|/d) with
    // r = min_phi ||e^{i phi} u - v||_F^2. The direct form cancels down to
    // ~1e-8 after the square root; this one keeps full precision.
    const Complex ph = std::abs(t) > 0.0 ? t / std::abs(t) : Complex(1.0, 0.0);
    const double r = (ph * u - v).squaredNorm();
    return std::sqrt(r / (2.0 * d) * (1.0 + std::abs(t) / d));
  }
  return std::sqrt(std::max(0.0, 1.0 - std::norm(t) / (d * d)));
}

double relative_phase(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("relative_phase: shape mismatch");
  }
  return std::arg((u.adjoint() * v).trace());
}

// ---------------------------------------------------------------------------
// Haar sampling

Matrix haar_random_unitary(int dim, std::mt19937_64& rng) {
  if (dim < 1) {
    throw ValidationError("haar_random_unitary: dimension must be at least 1");
  }
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) {
      q.col(k) *= r(k, k) / mag;
    }
  }
  return q;
}

Matrix haar_random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_random_unitary(dim, rng);
}

// ---------------------------------------------------------------------------
// Pauli-string exponentials

Matrix pauli_string_exp(std::span<const PauliTerm> terms) {
  if (terms.empty()) {
    return Matrix::Identity(1, 1);
  }
  const std::size_t n = terms.front().string.qubit_count();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].string.qubit_count() != n) {
      throw DimensionError("pauli_string_exp: term " + std::to_string(i) + " acts on " +
                           std::to_string(terms[i].string.qubit_count()) + " qubits, expected " +
                           std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!terms[i].string.commutes_with(terms[j].string)) {
        throw NonCommutingError(i, j,
                                "pauli_string_exp: terms " + std::to_string(i) + " (" +
                                    terms[i].string.to_string() + ") and " + std::to_string(j) +
                                    " (" + terms[j].string.to_string() + ") do not commute");
      }
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix out = Matrix::Identity(dim, dim);
  for (const PauliTerm& t : terms) {
    const Matrix factor = std::cos(t.coeff) * Matrix::Identity(dim, dim) +
                          kI * std::sin(t.coeff) * t.string.matrix();
    out = factor * out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ZYZ

Matrix zyz_compose(const SingleQubitParams& p) {
  return std::polar(1.0, p.theta0) * gates::rz(p.theta1) * gates::ry(p.theta2) *
         gates::rz(p.theta3);
}

SingleQubitParams zyz_decompose(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw DimensionError("zyz_decompose: expected a 2x2 matrix");
  }
  if (!is_unitary(u, kRoundTripTol)) {
    throw ValidationError("zyz_decompose: matrix is not unitary within 1e-10");
  }
  // |u00| = |u11| = cos(theta2/2), |u10| = |u01| = sin(theta2/2).
  const double cmag = 0.5 * (std::abs(u(0, 0)) + std::abs(u(1, 1)));
  const double smag = 0.5 * (std::abs(u(1, 0)) + std::abs(u(0, 1)));
  constexpr double kDegenerate = 1e-12;

  SingleQubitParams p;
  if (smag <= kDegenerate) {
    p.theta2 = 0.0;
    p.theta1 = snap_two_pi(std::arg(u(1, 1)) - std::arg(u(0, 0)));
    p.theta0 = snap_two_pi(std::arg(u(0, 0)) + p.theta1 / 2);
  } else if (cmag <= kDegenerate) {
    p.theta2 = kPi;
    p.theta1 = snap_two_pi(std::arg(u(1, 0)) - std::arg(-u(0, 1)));
    p.theta0 = snap_two_pi(std::arg(u(1, 0)) - p.theta1 / 2);
  } else {
    p.theta2 = 2.0 * std::atan2(smag, cmag);
    p.theta1 = snap_two_pi(std::arg(u(1, 0)) - std::arg(u(0, 0)));
    p.theta3 = snap_two_pi(std::arg(u(1, 1)) - std::arg(u(1, 0)));
    if (cmag >= smag) {
      p.theta0 = snap_two_pi(std::arg(u(0, 0)) + (p.theta1 + p.theta3) / 2);
    } else {
      p.theta0 = snap_two_pi(std::arg(u(1, 0)) - (p.theta1 - p.theta3) / 2);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Tensor-product factorization

KronFactors nearest_kron_factor(const Matrix& u, double tol) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw DimensionError("nearest_kron_factor: expected a 4x4 matrix");
  }
  Eigen::Matrix4cd rearranged;
  for (int i1 = 0; i1 < 2; ++i1) {
    for (int j1 = 0; j1 < 2; ++j1) {
      for (int i2 = 0; i2 < 2; ++i2) {
        for (int j2 = 0; j2 < 2; ++j2) {
          rearranged(i1 * 2 + j1, i2 * 2 + j2) = u(i1 * 2 + i2, j1 * 2 + j2);
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(rearranged, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double scale = std::sqrt(svd.singularValues()(0));
  const Eigen::Vector4cd left = scale * svd.matrixU().col(0);
  const Eigen::Vector4cd right = scale * svd.matrixV().col(0).conjugate();

  KronFactors f;
  f.a.resize(2, 2);
  f.b.resize(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      f.a(i, j) = left(i * 2 + j);
      f.b(i, j) = right(i * 2 + j);
    }
  }

  // Canonical phase split: first (row-major) entry of maximal modulus in a
  // becomes real and nonnegative.
  const double peak = f.a.cwiseAbs().maxCoeff();
  Complex pivot = 1.0;
  for (int k = 0; k < 4; ++k) {
    const Complex z = f.a(k / 2, k % 2);
    if (std::abs(z) >= peak - 1e-12) {
      pivot = z;
      break;
    }
  }
  if (std::abs(pivot) > 0.0) {
    const Complex rot = std::conj(pivot) / std::abs(pivot);
    f.a *= rot;
    f.b /= rot;
  }

  f.residual = max_abs_diff(kron(f.a, f.b), u);
  if (!(f.residual <= tol)) {
    std::ostringstream msg;
    msg << "nearest_kron_factor: matrix is not factorable (residual " << f.residual << " > "
        << tol << ")";
    throw NotFactorableError(f.residual, msg.str());
  }
  return f;
}

}  // namespace qcell
