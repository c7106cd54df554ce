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

#ifndef QCELL_OPTICS_HPP
#define QCELL_OPTICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcell/circuit.hpp"
#include "qcell/linalg.hpp"

namespace qcell::optics {

// Eight modes: mode = 2 * path + polarization with H = 0 and V = 1.
//   path 0: control photon in, control out
//   path 1: ancilla photon 1 in; detectors D1 (+) and D2 (-)
//   path 2: ancilla photon 2 in, target out
//   path 3: target photon in; detectors D3 (H) and D4 (V)
inline constexpr int kPaths = 4;
inline constexpr int kModes = 2 * kPaths;
inline constexpr int kMaxPhotons = 4;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

int mode_index(int path, Polarization pol);

using Occupation = std::array<std::uint8_t, kModes>;
using ModeMatrix = Eigen::Matrix<Complex, kModes, kModes>;

/// Superposition of Fock states over the eight modes. Keys are occupation
/// numbers, values amplitudes of the normalized Fock states.
class ModeState {
 public:
  ModeState() = default;

  static ModeState vacuum();

  const std::map<Occupation, Complex>& terms() const { return terms_; }
  void add(const Occupation& occ, Complex amp);
  double norm_squared() const;
  /// Drops terms with |amp| <= tol.
  void prune(double tol = 1e-15);

 private:
  std::map<Occupation, Complex> terms_;
};

struct PhotonQubit {
  Complex h{1.0, 0.0};
  Complex v{0.0, 0.0};
};

/// Throws ValidationError unless |h|^2 + |v|^2 = 1 within 1e-10.
void validate_qubit(const PhotonQubit& q);

/// h a^dagger_{path,H} + v a^dagger_{path,V} acting on the vacuum.
ModeState single_photon(int path, const PhotonQubit& q);

/// Product of the creation-operator polynomials of a and b on the vacuum.
/// Throws ValidationError past kMaxPhotons.
ModeState combine(const ModeState& a, const ModeState& b);

enum class AncillaKind { bell, product };

/// bell:    (|HH> + |VV>) / sqrt(2)
/// product: (|HH> + |VH>) / sqrt(2) = |+> (x) |H>
/// with the first photon on path 1 and the second on path 2.
ModeState make_ancilla(AncillaKind kind);

/// Linear map of creation operators, a^dagger_i -> sum_j u(j, i) a^dagger_j,
/// with the bosonic factors of multiply occupied modes.
ModeState apply_mode_transform(const ModeState& s, const ModeMatrix& u);

enum class PbsBasis { hv, diagonal };

/// Mode matrix of a PBS joining paths p and q. In the H/V basis H passes
/// straight through and V swaps paths; the diagonal PBS does the same to
/// |+> and |->.
ModeMatrix pbs_matrix(PbsBasis basis, int p, int q);
/// Throws ValidationError for invalid or equal paths.
ModeState pbs_apply(const ModeState& s, PbsBasis basis, int p, int q);

enum class ControlDetector { plus, minus };  // D1, D2
enum class TargetDetector { h, v };          // D3, D4

/// "D1D3", "D2D3", "D1D4" or "D2D4".
std::string detector_label(ControlDetector c, TargetDetector t);

struct DetectionOutcome {
  ControlDetector control_side = ControlDetector::plus;
  TargetDetector target_side = TargetDetector::h;
  double probability = 0.0;
  /// Post-selected two-qubit amplitudes on (control, target), not normalized;
  /// the squared norm is `probability`.
  Vector amplitudes;
  /// Normalized post-selected state; empty when the outcome cannot occur.
  std::optional<StateVector> post_state;
};

/// Which PBS sits on the control side (paths 0 and 1) and which on the
/// target side (paths 2 and 3).
struct Topology {
  PbsBasis control_pbs = PbsBasis::hv;
  PbsBasis target_pbs = PbsBasis::diagonal;

  friend bool operator==(const Topology&, const Topology&) = default;
};

inline constexpr Topology kFrozenTopology{};

struct SetupResult {
  std::vector<DetectionOutcome> outcomes;  // D1D3, D2D3, D1D4, D2D4
  double failure_probability = 0.0;
};

/// Runs the four photons through the network and post-selects on exactly one
/// photon at each detector and one in each output path. Everything else is
/// counted as failure.
SetupResult simulate_cnot_setup(const PhotonQubit& control, const PhotonQubit& target,
                                AncillaKind ancilla, const Topology& topology = kFrozenTopology);

/// Correction matrix for an outcome: I, (XZX) (x) I, I (x) X or both.
Matrix correction_matrix(ControlDetector c, TargetDetector t);

/// Applies correction_matrix to the outcome's post state. Throws
/// ValidationError if the outcome has no post state.
StateVector feed_forward_correct(const DetectionOutcome& o);

/// Sum over outcomes of correction * post-selected map, rebuilt column by
/// column from the four basis inputs.
Matrix corrected_channel(AncillaKind ancilla, const Topology& topology = kFrozenTopology);

struct TopologyCheck {
  Topology topology;
  bool valid = false;
  double max_error = 0.0;
};

/// Tries every PBS assignment with the Bell ancilla against the expected
/// structure: four outcomes of probability 1/16 whose post states are the
/// CNOT output with the documented Pauli byproducts (up to global phase).
std::vector<TopologyCheck> validate_topology();

struct Tally {
  std::map<std::string, std::uint64_t> counts;  // detector labels and "failure"
  std::uint64_t shots = 0;
};

/// Multinomial sampling from the exact outcome distribution.
Tally sample_run(const PhotonQubit& control, const PhotonQubit& target, AncillaKind ancilla,
                 std::uint64_t seed, std::uint64_t shots);

}  // namespace qcell::optics

#endif  // QCELL_OPTICS_HPP
