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

#include "qcell/optics.hpp"

#include <cmath>
#include <random>
#include <string>

namespace qcell::optics {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kTopologyTol = 1e-10;

void check_path(int path) {
  if (path < 0 || path >= kPaths) {
    throw ValidationError("path " + std::to_string(path) + " out of range 0.." +
                          std::to_string(kPaths - 1));
  }
}

int photon_count(const Occupation& occ) {
  int n = 0;
  for (std::uint8_t k : occ) {
    n += k;
  }
  return n;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

// Detector bra coefficients in the H/V basis.
std::array<Complex, 2> control_detector(ControlDetector d) {
  const double r = 1.0 / std::sqrt(2.0);
  return d == ControlDetector::plus ? std::array<Complex, 2>{r, r} : std::array<Complex, 2>{-r, r};
}

constexpr std::array<ControlDetector, 4> kOutcomeControl = {
    ControlDetector::plus, ControlDetector::minus, ControlDetector::plus, ControlDetector::minus};
constexpr std::array<TargetDetector, 4> kOutcomeTarget = {TargetDetector::h, TargetDetector::h,
                                                          TargetDetector::v, TargetDetector::v};

// Photons of a path: count and, when there is exactly one, its polarization.
struct PathContent {
  int count = 0;
  int pol = 0;
};

PathContent path_content(const Occupation& occ, int path) {
  const int h = occ[static_cast<std::size_t>(mode_index(path, Polarization::H))];
  const int v = occ[static_cast<std::size_t>(mode_index(path, Polarization::V))];
  return {h + v, v > 0 ? 1 : 0};
}

// Distance between unit vectors that ignores a global phase.
double state_distance(const Vector& a, const Vector& b) {
  return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b))));
}

}  // namespace

int mode_index(int path, Polarization pol) {
  check_path(path);
  return 2 * path + static_cast<int>(pol);
}

ModeState ModeState::vacuum() {
  ModeState s;
  s.terms_[Occupation{}] = 1.0;
  return s;
}

void ModeState::add(const Occupation& occ, Complex amp) { terms_[occ] += amp; }

double ModeState::norm_squared() const {
  double n = 0.0;
  for (const auto& [occ, amp] : terms_) {
    n += std::norm(amp);
  }
  return n;
}

void ModeState::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

void validate_qubit(const PhotonQubit& q) {
  const double n = std::norm(q.h) + std::norm(q.v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol) {
    throw ValidationError("photon qubit is not normalized (|h|^2 + |v|^2 = " + std::to_string(n) +
                          ")");
  }
}

ModeState single_photon(int path, const PhotonQubit& q) {
  ModeState s;
  Occupation h{};
  Occupation v{};
  h[static_cast<std::size_t>(mode_index(path, Polarization::H))] = 1;
  v[static_cast<std::size_t>(mode_index(path, Polarization::V))] = 1;
  s.add(h, q.h);
  s.add(v, q.v);
  s.prune(0.0);
  return s;
}

ModeState combine(const ModeState& a, const ModeState& b) {
  ModeState out;
  for (const auto& [oa, xa] : a.terms()) {
    for (const auto& [ob, xb] : b.terms()) {
      Occupation sum{};
      double factor = 1.0;
      for (std::size_t k = 0; k < kModes; ++k) {
        sum[k] = static_cast<std::uint8_t>(oa[k] + ob[k]);
        factor *= std::sqrt(factorial(sum[k]) / (factorial(oa[k]) * factorial(ob[k])));
      }
      if (photon_count(sum) > kMaxPhotons) {
        throw ValidationError("more than " + std::to_string(kMaxPhotons) + " photons");
      }
      out.add(sum, factor * xa * xb);
    }
  }
  out.prune(0.0);
  return out;
}

ModeState make_ancilla(AncillaKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  const int h1 = mode_index(1, Polarization::H);
  const int v1 = mode_index(1, Polarization::V);
  const int h2 = mode_index(2, Polarization::H);
  const int v2 = mode_index(2, Polarization::V);
  auto pair = [](int m1, int m2) {
    Occupation occ{};
    occ[static_cast<std::size_t>(m1)] = 1;
    occ[static_cast<std::size_t>(m2)] = 1;
    return occ;
  };
  ModeState s;
  s.add(pair(h1, h2), r);
  s.add(kind == AncillaKind::bell ? pair(v1, v2) : pair(v1, h2), r);
  return s;
}

ModeState apply_mode_transform(const ModeState& s, const ModeMatrix& u) {
  ModeState out;
  for (const auto& [occ, amp] : s.terms()) {
    std::vector<int> photons;
    double in_norm = 1.0;
    for (int m = 0; m < kModes; ++m) {
      for (int k = 0; k < occ[static_cast<std::size_t>(m)]; ++k) {
        photons.push_back(m);
      }
      in_norm *= factorial(occ[static_cast<std::size_t>(m)]);
    }
    // Expand prod_i (sum_j u(j, i) a^dagger_j) photon by photon.
    Occupation target{};
    auto expand = [&](auto&& self, std::size_t k, Complex coeff) -> void {
      if (coeff == Complex{0.0, 0.0}) {
        return;
      }
      if (k == photons.size()) {
        double out_norm = 1.0;
        for (std::uint8_t m : target) {
          out_norm *= factorial(m);
        }
        out.add(target, amp * coeff * std::sqrt(out_norm / in_norm));
        return;
      }
      for (int j = 0; j < kModes; ++j) {
        const Complex c = u(j, photons[k]);
        if (c != Complex{0.0, 0.0}) {
          ++target[static_cast<std::size_t>(j)];
          self(self, k + 1, coeff * c);
          --target[static_cast<std::size_t>(j)];
        }
      }
    };
    expand(expand, 0, Complex{1.0, 0.0});
  }
  out.prune();
  return out;
}

ModeMatrix pbs_matrix(PbsBasis basis, int p, int q) {
  check_path(p);
  check_path(q);
  if (p == q) {
    throw ValidationError("a PBS needs two different paths");
  }
  const int ph = mode_index(p, Polarization::H);
  const int pv = mode_index(p, Polarization::V);
  const int qh = mode_index(q, Polarization::H);
  const int qv = mode_index(q, Polarization::V);

  ModeMatrix u = ModeMatrix::Identity();
  u(pv, pv) = 0.0;
  u(qv, qv) = 0.0;
  u(qv, pv) = 1.0;
  u(pv, qv) = 1.0;
  if (basis == PbsBasis::hv) {
    return u;
  }
  const double r = 1.0 / std::sqrt(2.0);
  ModeMatrix b = ModeMatrix::Identity();
  for (const auto& [h, v] : {std::pair{ph, pv}, std::pair{qh, qv}}) {
    b(h, h) = r;
    b(h, v) = r;
    b(v, h) = r;
    b(v, v) = -r;
  }
  return b * u * b;
}

ModeState pbs_apply(const ModeState& s, PbsBasis basis, int p, int q) {
  return apply_mode_transform(s, pbs_matrix(basis, p, q));
}

std::string detector_label(ControlDetector c, TargetDetector t) {
  return std::string(c == ControlDetector::plus ? "D1" : "D2") +
         (t == TargetDetector::h ? "D3" : "D4");
}

SetupResult simulate_cnot_setup(const PhotonQubit& control, const PhotonQubit& target,
                                AncillaKind ancilla, const Topology& topology) {
  validate_qubit(control);
  validate_qubit(target);

  ModeState s = combine(combine(single_photon(0, control), make_ancilla(ancilla)),
                        single_photon(3, target));
  s = pbs_apply(s, topology.control_pbs, 0, 1);
  s = pbs_apply(s, topology.target_pbs, 2, 3);

  SetupResult result;
  for (std::size_t k = 0; k < 4; ++k) {
    DetectionOutcome o;
    o.control_side = kOutcomeControl[k];
    o.target_side = kOutcomeTarget[k];
    o.amplitudes = Vector::Zero(4);
    result.outcomes.push_back(std::move(o));
  }

  for (const auto& [occ, amp] : s.terms()) {
    const PathContent c_out = path_content(occ, 0);
    const PathContent d12 = path_content(occ, 1);
    const PathContent t_out = path_content(occ, 2);
    const PathContent d34 = path_content(occ, 3);
    if (c_out.count != 1 || d12.count != 1 || t_out.count != 1 || d34.count != 1) {
      result.failure_probability += std::norm(amp);
      continue;
    }
    const Eigen::Index idx = 2 * c_out.pol + t_out.pol;
    for (DetectionOutcome& o : result.outcomes) {
      if ((o.target_side == TargetDetector::h) != (d34.pol == 0)) {
        continue;
      }
      const Complex bra = std::conj(control_detector(o.control_side)[static_cast<std::size_t>(d12.pol)]);
      o.amplitudes(idx) += bra * amp;
    }
  }

  for (DetectionOutcome& o : result.outcomes) {
    o.probability = o.amplitudes.squaredNorm();
    if (o.probability > 1e-24) {
      o.post_state.emplace(2, o.amplitudes / std::sqrt(o.probability));
    }
  }
  return result;
}

Matrix correction_matrix(ControlDetector c, TargetDetector t) {
  const Matrix x = gates::pauli_x();
  const Matrix id = gates::identity(2);
  const Matrix ca = c == ControlDetector::minus ? Matrix(x * gates::pauli_z() * x) : id;
  const Matrix tb = t == TargetDetector::v ? x : id;
  return kron(ca, tb);
}

StateVector feed_forward_correct(const DetectionOutcome& o) {
  if (!o.post_state) {
    throw ValidationError("outcome " + detector_label(o.control_side, o.target_side) +
                          " has zero probability");
  }
  return StateVector(2, correction_matrix(o.control_side, o.target_side) * o.post_state->amplitudes());
}

Matrix corrected_channel(AncillaKind ancilla, const Topology& topology) {
  Matrix channel = Matrix::Zero(4, 4);
  const std::array<PhotonQubit, 2> basis = {PhotonQubit{1.0, 0.0}, PhotonQubit{0.0, 1.0}};
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      const SetupResult r = simulate_cnot_setup(basis[static_cast<std::size_t>(c)],
                                                basis[static_cast<std::size_t>(t)], ancilla, topology);
      for (const DetectionOutcome& o : r.outcomes) {
        channel.col(2 * c + t) += correction_matrix(o.control_side, o.target_side) * o.amplitudes;
      }
    }
  }
  return channel;
}

std::vector<TopologyCheck> validate_topology() {
  const double r3 = 1.0 / std::sqrt(3.0);
  const std::vector<std::pair<PhotonQubit, PhotonQubit>> inputs = {
      {{1.0, 0.0}, {1.0, 0.0}},
      {{0.0, 1.0}, {1.0, 0.0}},
      {{0.6, Complex(0.0, 0.8)}, {r3, std::polar(std::sqrt(2.0 / 3.0), kPi / 5)}},
  };
  const Matrix cnot = cnot_matrix(2, 1, 2);

  std::vector<TopologyCheck> checks;
  for (PbsBasis cp : {PbsBasis::hv, PbsBasis::diagonal}) {
    for (PbsBasis tp : {PbsBasis::hv, PbsBasis::diagonal}) {
      TopologyCheck check{{cp, tp}, true, 0.0};
      for (const auto& [c, t] : inputs) {
        const SetupResult r = simulate_cnot_setup(c, t, AncillaKind::bell, check.topology);
        Vector in(4);
        in << c.h * t.h, c.h * t.v, c.v * t.h, c.v * t.v;
        for (const DetectionOutcome& o : r.outcomes) {
          check.max_error = std::max(check.max_error, std::abs(o.probability - 1.0 / 16.0));
          if (!o.post_state) {
            check.max_error = std::max(check.max_error, 1.0);
            continue;
          }
          const Vector expected = correction_matrix(o.control_side, o.target_side) * cnot * in;
          check.max_error =
              std::max(check.max_error, state_distance(o.post_state->amplitudes(), expected));
        }
      }
      check.valid = check.max_error <= kTopologyTol;
      checks.push_back(check);
    }
  }
  return checks;
}

Tally sample_run(const PhotonQubit& control, const PhotonQubit& target, AncillaKind ancilla,
                 std::uint64_t seed, std::uint64_t shots) {
  if (shots < 1) {
    throw ValidationError("shots must be at least 1");
  }
  const SetupResult r = simulate_cnot_setup(control, target, ancilla);
  std::vector<double> weights;
  std::vector<std::string> labels;
  for (const DetectionOutcome& o : r.outcomes) {
    weights.push_back(o.probability);
    labels.push_back(detector_label(o.control_side, o.target_side));
  }
  weights.push_back(r.failure_probability);
  labels.emplace_back("failure");

  Tally tally;
  tally.shots = shots;
  for (const std::string& l : labels) {
    tally.counts[l] = 0;
  }
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  for (std::uint64_t i = 0; i < shots; ++i) {
    ++tally.counts[labels[pick(rng)]];
  }
  return tally;
}

}  // namespace qcell::optics
