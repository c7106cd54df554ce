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

#include "qcell/decomposer.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

namespace qcell {

namespace {

using Eigen::Matrix4d;
using Eigen::Vector4d;

constexpr int kMaxAttempts = 8;
constexpr double kJointDiagTol = 1e-9;
constexpr double kRealRowTol = 1e-7;
constexpr double kSignMatrixTol = 1e-6;
constexpr std::uint64_t kCombinationSeed = 0x6d616769635f6b61ULL;

double max_offdiag(const Matrix4d& m) {
  Matrix4d o = m;
  o.diagonal().setZero();
  return o.cwiseAbs().maxCoeff();
}

struct Candidate {
  TwoQubitDecomposition decomposition;
  KakIntermediates intermediates;
  double error = std::numeric_limits<double>::infinity();
};

// One extraction pass with a fixed real combination of the commuting pair.
// Returns nullopt if any internal consistency check fails.
std::optional<Candidate> extract(const Matrix& u, const KakIntermediates& base, double alpha,
                                 double beta, double& diagnostic) {
  const MagicBasis& mb = MagicBasis::get();
  KakIntermediates in = base;

  const Matrix4d rr = in.u_r * in.u_r.transpose();
  Matrix4d ir = in.u_i * in.u_r.transpose();
  ir = 0.5 * (ir + ir.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix4d> eig(alpha * rr + beta * ir);
  Matrix4d v1 = eig.eigenvectors();
  const double joint = std::max(max_offdiag(v1.transpose() * rr * v1),
                                max_offdiag(v1.transpose() * ir * v1));
  if (joint > kJointDiagTol) {
    diagnostic = joint;
    return std::nullopt;
  }

  // V1^T U' = e^{i Phi} X^T: each row is a phase times a real vector.
  const Matrix w = v1.cast<Complex>().transpose() * in.u_prime;
  Matrix4d xt;
  std::array<double, 4> angle{};
  double imag_residual = 0.0;
  for (int k = 0; k < 4; ++k) {
    Eigen::Index peak = 0;
    w.row(k).cwiseAbs().maxCoeff(&peak);
    double a = std::arg(w(k, peak));
    const Eigen::RowVector4cd row = w.row(k) * std::polar(1.0, -a);
    imag_residual = std::max(imag_residual, row.imag().cwiseAbs().maxCoeff());
    xt.row(k) = row.real();
    if (std::cos(a) < 0.0) {
      a += kPi;
      xt.row(k) *= -1.0;
    }
    angle[static_cast<std::size_t>(k)] = a;
  }
  if (imag_residual > kRealRowTol) {
    diagnostic = imag_residual;
    return std::nullopt;
  }
  {
    Eigen::JacobiSVD<Matrix4d> polar(xt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    xt = polar.matrixU() * polar.matrixV().transpose();
  }

  // det(V1) = det(X) = +1 keeps M V1 M^dagger and M X^T M^dagger in SU(2) x SU(2).
  const bool v_neg = v1.determinant() < 0.0;
  const bool x_neg = xt.determinant() < 0.0;
  if (v_neg && x_neg) {
    v1.col(0) *= -1.0;
    xt.row(0) *= -1.0;
  } else if (v_neg) {
    v1.col(0) *= -1.0;
    angle[0] += kPi;
  } else if (x_neg) {
    xt.row(0) *= -1.0;
    angle[0] += kPi;
  }

  for (int k = 0; k < 4; ++k) {
    const double phi = wrap_pi(angle[static_cast<std::size_t>(k)]);
    in.phi[static_cast<std::size_t>(k)] = phi;
    in.c(k) = std::cos(phi);
    in.s(k) = std::abs(std::sin(phi));
    in.f(k) = std::sin(phi) < 0.0 ? -1.0 : 1.0;
  }
  in.v1 = v1;
  in.x = xt.transpose();

  // V2 from U_I = V2 S X^T where S is invertible; F = V1^T V2 must be a
  // diagonal sign matrix.
  const Matrix4d uix = in.u_i * in.x;
  for (int k = 0; k < 4; ++k) {
    if (in.s(k) > kSignMatrixTol) {
      in.v2.col(k) = uix.col(k) / in.s(k);
    } else {
      in.v2.col(k) = in.f(k) * v1.col(k);
    }
  }
  const Matrix4d f_full = v1.transpose() * in.v2;
  Matrix4d f_rounded = f_full.array().round().matrix();
  if ((f_full - f_rounded).cwiseAbs().maxCoeff() > kSignMatrixTol || max_offdiag(f_rounded) != 0.0 ||
      (f_rounded.diagonal().cwiseAbs() - Vector4d::Ones()).cwiseAbs().maxCoeff() != 0.0) {
    diagnostic = (f_full - Matrix4d(f_full.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    return std::nullopt;
  }
  in.f = f_rounded.diagonal();

  Candidate cand;
  TwoQubitDecomposition& d = cand.decomposition;
  const Matrix left = mb.m * v1.cast<Complex>() * mb.m.adjoint();
  const Matrix right = mb.m * xt.cast<Complex>() * mb.m.adjoint();
  try {
    const KronFactors lf = nearest_kron_factor(left, kPipelineTol);
    const KronFactors rf = nearest_kron_factor(right, kPipelineTol);
    d.u_a = lf.a;
    d.u_b = lf.b;
    d.v_a = rf.a;
    d.v_b = rf.b;
  } catch (const NotFactorableError& e) {
    diagnostic = e.residual();
    return std::nullopt;
  }

  const std::array<double, 4> t = theta_from_phi(in.phi);
  d.theta0 = t[0];
  d.theta = {-t[1], -t[2], -t[3]};
  in.phase_correction = wrap_pi(relative_phase(kak_compose(d), u));
  d.theta0 = wrap_pi(d.theta0 + in.phase_correction);

  cand.error = max_abs_diff(kak_compose(d), u);
  cand.intermediates = std::move(in);
  return cand;
}

}  // namespace

const MagicBasis& MagicBasis::get() {
  static const MagicBasis basis = [] {
    MagicBasis b;
    const double r = 1.0 / std::sqrt(2.0);
    b.m.resize(4, 4);
    b.m << r, 0, 0, kI * r,
           0, kI * r, r, 0,
           0, kI * r, -r, 0,
           r, 0, 0, -kI * r;
    b.lambda << 1, 1, -1, 1,
                1, 1, 1, -1,
                1, -1, -1, -1,
                1, -1, 1, 1;
    b.lambda_inv = b.lambda.cast<double>().transpose() / 4.0;
    return b;
  }();
  return basis;
}

Matrix magic_transform(const Matrix& u) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw DimensionError("magic_transform: expected a 4x4 matrix");
  }
  const MagicBasis& mb = MagicBasis::get();
  return mb.m.adjoint() * u * mb.m;
}

std::array<double, 4> ud_phases(const std::array<double, 3>& theta) {
  const auto [t1, t2, t3] = theta;
  return {t1 - t2 + t3, -t1 + t2 + t3, -t1 - t2 - t3, t1 + t2 - t3};
}

std::array<double, 4> theta_from_phi(const std::array<double, 4>& phi) {
  const Vector4d v = MagicBasis::get().lambda_inv * Vector4d(phi[0], phi[1], phi[2], phi[3]);
  return {v(0), v(1), v(2), v(3)};
}

Matrix interaction_unitary(const std::array<double, 3>& theta) {
  const std::array<PauliTerm, 3> terms = {PauliTerm{-theta[0], PauliString::parse("XX")},
                                          PauliTerm{-theta[1], PauliString::parse("YY")},
                                          PauliTerm{-theta[2], PauliString::parse("ZZ")}};
  return pauli_string_exp(terms);
}

Matrix kak_compose(const TwoQubitDecomposition& d) {
  return std::polar(1.0, d.theta0) * kron(d.u_a, d.u_b) * interaction_unitary(d.theta) *
         kron(d.v_a, d.v_b);
}

KakResult kak_decompose(const Matrix& u) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw DimensionError("kak_decompose: expected a 4x4 matrix");
  }
  if (!is_unitary(u, kRoundTripTol)) {
    throw ValidationError("kak_decompose: matrix is not unitary within 1e-10");
  }

  KakIntermediates base;
  base.u_prime = magic_transform(u);
  base.u_r = base.u_prime.real();
  base.u_i = base.u_prime.imag();

  std::mt19937_64 rng(kCombinationSeed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::optional<Candidate> best;
  double diagnostic = std::numeric_limits<double>::infinity();
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    const double alpha = coeff(rng);
    const double beta = coeff(rng);
    std::optional<Candidate> cand = extract(u, base, alpha, beta, diagnostic);
    if (!cand) {
      continue;
    }
    cand->intermediates.attempts = attempt;
    if (!best || cand->error < best->error) {
      best = std::move(cand);
    }
    if (best->error <= kRoundTripTol) {
      break;
    }
  }

  if (!best || !(best->error <= kPipelineTol)) {
    const double residual = best ? best->error : diagnostic;
    std::ostringstream msg;
    msg << "kak_decompose: reconstruction failed after " << kMaxAttempts
        << " attempts (residual " << residual << ")";
    throw DecompositionError(residual, best ? best->intermediates : base, msg.str());
  }

  KakResult result;
  result.decomposition = std::move(best->decomposition);
  result.intermediates = std::move(best->intermediates);
  result.reconstruction_error = best->error;
  return result;
}

Circuit vidal_dawson_circuit(const TwoQubitDecomposition& d) {
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix x = gates::pauli_x();
  const Matrix h = gates::hadamard();
  const Matrix k = (id - kI * x) / std::sqrt(2.0);
  const Matrix k_inv = k.adjoint();
  const auto [t1, t2, t3] = d.theta;

  // R^4, R^3, R^2, R^1 in temporal order. Products are applied left factor
  // first. The middle CNOT is turned around by conjugation with H (x) H,
  // which is folded into the neighbouring layers.
  const Matrix r4a = k * d.v_a;
  const Matrix r4b = k_inv * d.v_b;
  const Matrix r3a = h * (-kI * h);
  const Matrix r3b = h * gates::rz(-2.0 * t2);
  const Matrix r2a = gates::rx(2.0 * (t1 - kPi / 4)) * (kI * h) * h;
  const Matrix r2b = gates::rz(2.0 * t3) * h;

  Circuit c(2);
  c.single(1, zyz_decompose(r4a)).single(2, zyz_decompose(r4b));
  c.cnot(1, 2);
  c.single(1, zyz_decompose(r3a)).single(2, zyz_decompose(r3b));
  c.cnot(2, 1);
  c.single(1, zyz_decompose(r2a)).single(2, zyz_decompose(r2b));
  c.cnot(1, 2);
  c.single(1, zyz_decompose(d.u_a)).single(2, zyz_decompose(d.u_b));

  // Fold the remaining global phase into the first gate.
  const double delta = relative_phase(circuit_to_unitary(c), kak_compose(d));
  Circuit out(2);
  bool first = true;
  for (const Gate& g : c.gates()) {
    if (first) {
      SingleGate s = std::get<SingleGate>(g);
      s.params.theta0 = wrap_two_pi(s.params.theta0 + delta);
      out.add(s);
      first = false;
    } else {
      out.add(g);
    }
  }
  return out;
}

Matrix n_matrix(double a, double b, double c) {
  const std::array<PauliTerm, 3> terms = {PauliTerm{a, PauliString::parse("XXZ")},
                                          PauliTerm{b, PauliString::parse("YYZ")},
                                          PauliTerm{c, PauliString::parse("ZZZ")}};
  return pauli_string_exp(terms);
}

Matrix m_matrix(double a, double b, double c, double d) {
  const std::array<PauliTerm, 4> terms = {
      PauliTerm{a, PauliString::parse("XXX")}, PauliTerm{b, PauliString::parse("YYX")},
      PauliTerm{c, PauliString::parse("ZZX")}, PauliTerm{d, PauliString::parse("IIX")}};
  return pauli_string_exp(terms);
}

Matrix three_qubit_template(const ThreeQubitLocals& locals, const ThreeQubitInteraction& inter) {
  for (std::size_t k = 0; k < 4; ++k) {
    const Matrix& a = locals.a[k];
    const Matrix& b = locals.b[k];
    if (a.rows() != 4 || a.cols() != 4 || b.rows() != 2 || b.cols() != 2) {
      throw DimensionError("three_qubit_template: A_k must be 4x4 and B_k 2x2");
    }
    if (!is_unitary(a, kRoundTripTol) || !is_unitary(b, kRoundTripTol)) {
      throw ValidationError("three_qubit_template: local " + std::to_string(k + 1) +
                            " is not unitary within 1e-10");
    }
  }
  const Matrix n1 = n_matrix(inter.n1[0], inter.n1[1], inter.n1[2]);
  const Matrix n2 = n_matrix(inter.n2[0], inter.n2[1], inter.n2[2]);
  const Matrix m = m_matrix(inter.m[0], inter.m[1], inter.m[2], inter.m[3]);
  Matrix u = kron(locals.a[0], locals.b[0]);
  u = n1 * u;
  u = kron(locals.a[1], locals.b[1]) * u;
  u = m * u;
  u = kron(locals.a[2], locals.b[2]) * u;
  u = n2 * u;
  u = kron(locals.a[3], locals.b[3]) * u;
  return u;
}

}  // namespace qcell
