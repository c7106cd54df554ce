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

#ifndef QCELL_GAME_HPP
#define QCELL_GAME_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qcell/circuit.hpp"
#include "qcell/fabric.hpp"
#include "qcell/linalg.hpp"

namespace qcell::game {

/// (alice, bob) payoff for each pure profile; index 0 = C, 1 = D.
struct PayoffMatrix {
  std::array<std::array<std::pair<double, double>, 2>, 2> entries = {{
      {{{3.0, 3.0}, {0.0, 5.0}}},
      {{{5.0, 0.0}, {1.0, 1.0}}},
  }};

  const std::pair<double, double>& at(int alice, int bob) const {
    return entries[static_cast<std::size_t>(alice)][static_cast<std::size_t>(bob)];
  }
  /// Payoffs seen from the other side of the table.
  PayoffMatrix swapped() const;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

enum class JConvention {
  paper,        // exp(-i gamma/2 X (x) Y): J|00> = cos(gamma/2)|00> + sin(gamma/2)|11>
  alternative,  // exp(+i gamma/2 X (x) X): J|00> = cos(gamma/2)|00> + i sin(gamma/2)|11>
};

std::string to_string(JConvention c);
/// Throws ValidationError for unknown names.
JConvention parse_j_convention(const std::string& name);

struct GameConfig {
  double gamma = 0.0;
  PayoffMatrix payoffs;
  JConvention convention = JConvention::paper;
};

/// Throws ValidationError unless gamma is in [0, pi].
void validate_config(const GameConfig& config);

Matrix j_gate(double gamma, JConvention convention = JConvention::paper);

/// J as a gate list: conjugated single-qubit rotation between two CNOT(1,2).
Circuit j_circuit(double gamma, JConvention convention = JConvention::paper);

struct GameResult {
  Vector final_state;                 // amplitudes over |CC>, |CD>, |DC>, |DD>
  std::array<double, 4> probabilities{};
  double payoff_a = 0.0;
  double payoff_b = 0.0;
};

/// J^dagger (U_A (x) U_B) J |CC> with |C> = |0>; Alice is wire 1.
GameResult play(const GameConfig& config, const SingleQubitParams& u_a, const SingleQubitParams& u_b);

/// The same protocol as a circuit. The second CNOT(1,2) of each J is written
/// as H H CNOT(2,1) H H so that the whole game packs into two cells.
Circuit game_circuit(const GameConfig& config, const SingleQubitParams& u_a,
                     const SingleQubitParams& u_b);

struct FabricGameResult {
  GameResult result;
  CellProgram program;
};

/// Compiles game_circuit onto cells and evaluates the program.
FabricGameResult game_on_fabric(const GameConfig& config, const SingleQubitParams& u_a,
                                const SingleQubitParams& u_b);

enum class Player { alice, bob };

struct BestResponse {
  SingleQubitParams params;
  double payoff = 0.0;
};

/// Grid search over theta1 = 2 pi i / steps, theta2 = pi j / (steps - 1),
/// theta3 = 2 pi k / steps for the responder's best payoff against a fixed
/// opponent. Ties go to the lexicographically smallest (theta1, theta2,
/// theta3). Throws ValidationError if grid_steps < 2.
BestResponse best_response_scan(const GameConfig& config, const SingleQubitParams& opponent,
                                 int grid_steps, Player responder = Player::bob);

struct Move {
  SingleQubitParams u_a;
  SingleQubitParams u_b;
  std::array<double, 4> probabilities{};
  double payoff_a = 0.0;
  double payoff_b = 0.0;
};

/// A sequence of rounds under one configuration. Not synchronized.
class GameSession {
 public:
  GameSession(std::string id, GameConfig config);

  const std::string& id() const { return id_; }
  const GameConfig& config() const { return config_; }
  const std::vector<Move>& history() const { return history_; }

  const Move& play_move(const SingleQubitParams& u_a, const SingleQubitParams& u_b);
  /// Restores a stored move after checking its probabilities sum to 1.
  void append_recorded(const Move& move);

  double total_a() const;
  double total_b() const;

 private:
  std::string id_;
  GameConfig config_;
  std::vector<Move> history_;
};

}  // namespace qcell::game

#endif  // QCELL_GAME_HPP
