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

#include "qcell/game.hpp"
#include "test_util.hpp"

namespace qcell::game {
namespace {

const SingleQubitParams kCoop{0.0, 0.0, 0.0, 0.0};
const SingleQubitParams kDefect{0.0, 0.0, kPi, 0.0};
const SingleQubitParams kQ{0.0, kPi, 0.0, 0.0};  // diag(-i, i)

TEST(JGate, MatchesExponential) {
  const Matrix xy = kron(gates::pauli_x(), gates::pauli_y());
  const Matrix xx = kron(gates::pauli_x(), gates::pauli_x());
  for (double g : {0.0, 0.3, kPi / 2, 2.0, kPi}) {
    EXPECT_LE(max_abs_diff(j_gate(g), testing::expm_i(-0.5 * g * xy)), 1e-12);
    EXPECT_LE(max_abs_diff(j_gate(g, JConvention::alternative), testing::expm_i(0.5 * g * xx)), 1e-12);
    for (JConvention c : {JConvention::paper, JConvention::alternative}) {
      EXPECT_LE(max_abs_diff(circuit_to_unitary(j_circuit(g, c)), j_gate(g, c)), 1e-12);
    }
  }
  const Vector j00 = j_gate(kPi / 2).col(0);
  EXPECT_NEAR(j00(0).real(), std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(j00(3).real(), std::sqrt(0.5), 1e-14);
}

TEST(Convention, ParseAndPrint) {
  EXPECT_EQ(parse_j_convention("paper"), JConvention::paper);
  EXPECT_EQ(parse_j_convention(to_string(JConvention::alternative)), JConvention::alternative);
  EXPECT_THROW(parse_j_convention("xy"), ValidationError);
}

TEST(Play, ClassicalLimit) {
  const GameConfig cfg{};
  const PayoffMatrix pm;
  const std::array<SingleQubitParams, 2> moves = {kCoop, kDefect};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const GameResult r = play(cfg, moves[static_cast<std::size_t>(a)], moves[static_cast<std::size_t>(b)]);
      EXPECT_NEAR(r.payoff_a, pm.at(a, b).first, 1e-12);
      EXPECT_NEAR(r.payoff_b, pm.at(a, b).second, 1e-12);
      EXPECT_NEAR(r.probabilities[static_cast<std::size_t>(2 * a + b)], 1.0, 1e-12);
    }
  }
}

TEST(Play, MaximalEntanglementQuantumMove) {
  for (JConvention c : {JConvention::paper, JConvention::alternative}) {
    const GameConfig cfg{kPi / 2, {}, c};
    const GameResult qq = play(cfg, kQ, kQ);
    EXPECT_NEAR(qq.payoff_a, 3.0, 1e-12);
    EXPECT_NEAR(qq.payoff_b, 3.0, 1e-12);
  }
  // D (x) D commutes with X (x) X, so mutual defection stays (1, 1) there.
  const GameResult dd = play(GameConfig{kPi / 2, {}, JConvention::alternative}, kDefect, kDefect);
  EXPECT_NEAR(dd.payoff_a, 1.0, 1e-12);
  EXPECT_NEAR(dd.payoff_b, 1.0, 1e-12);
}

TEST(Play, ProbabilitiesAreNormalized) {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> g(0.0, kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const GameConfig cfg{g(rng), {}, trial % 2 ? JConvention::paper : JConvention::alternative};
    const GameResult r = play(cfg, testing::random_params(rng), testing::random_params(rng));
    double s = 0.0;
    for (double p : r.probabilities) {
      EXPECT_GE(p, 0.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Play, SymmetricPayoffsSwapWithPlayers) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> g(0.0, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    // X (x) X is symmetric under swapping the wires; X (x) Y is not.
    const GameConfig cfg{g(rng), {}, JConvention::alternative};
    const SingleQubitParams a = testing::random_params(rng);
    const SingleQubitParams b = testing::random_params(rng);
    const GameResult ab = play(cfg, a, b);
    const GameResult ba = play(cfg, b, a);
    EXPECT_NEAR(ab.payoff_a, ba.payoff_b, 1e-10);
    EXPECT_NEAR(ab.payoff_b, ba.payoff_a, 1e-10);
  }
}

TEST(Play, SwappedPayoffMatrix) {
  PayoffMatrix m;
  m.entries[0][1] = {2.0, 7.0};
  const PayoffMatrix s = m.swapped();
  EXPECT_EQ(s.at(1, 0), std::make_pair(7.0, 2.0));
  EXPECT_EQ(s.swapped(), m);
}

TEST(Play, RejectsBadGamma) {
  EXPECT_THROW(validate_config(GameConfig{-0.1, {}, JConvention::paper}), ValidationError);
  EXPECT_THROW(play(GameConfig{4.0, {}, JConvention::paper}, kCoop, kCoop), ValidationError);
}

TEST(Fabric, MatchesDirectEvaluation) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> g(0.0, kPi);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const GameConfig cfg{g(rng), {}, trial % 2 ? JConvention::paper : JConvention::alternative};
    const SingleQubitParams a = testing::random_params(rng);
    const SingleQubitParams b = testing::random_params(rng);
    const GameResult direct = play(cfg, a, b);
    const FabricGameResult fab = game_on_fabric(cfg, a, b);
    EXPECT_LE(fab.program.cells.size(), 2u);
    for (std::size_t k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(direct.probabilities[k] - fab.result.probabilities[k]));
    }
    worst = std::max(worst, std::abs(direct.payoff_a - fab.result.payoff_a));
    EXPECT_NEAR(std::abs(direct.final_state.dot(fab.result.final_state)), 1.0, 1e-12);
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Fabric, CircuitMatchesPlay) {
  const GameConfig cfg{0.7, {}, JConvention::paper};
  const Circuit c = game_circuit(cfg, kQ, kDefect);
  const Vector out = circuit_to_unitary(c).col(0);
  EXPECT_LE(max_abs_diff(Matrix(out), Matrix(play(cfg, kQ, kDefect).final_state)), 1e-12);
}

TEST(BestResponse, ClassicalDefectionWins) {
  const GameConfig cfg{};
  const BestResponse br = best_response_scan(cfg, kCoop, 9);
  EXPECT_NEAR(br.payoff, 5.0, 1e-12);
  EXPECT_NEAR(br.params.theta2, kPi, 1e-12);
  const BestResponse alice = best_response_scan(cfg, kCoop, 9, Player::alice);
  EXPECT_NEAR(alice.payoff, 5.0, 1e-12);
  EXPECT_THROW(best_response_scan(cfg, kCoop, 1), ValidationError);
}

TEST(BestResponse, NeverWorseThanGridPoints) {
  const GameConfig cfg{kPi / 2, {}, JConvention::paper};
  const BestResponse br = best_response_scan(cfg, kQ, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const SingleQubitParams p{0.0, 2 * kPi * i / 8, kPi * j / 7, 0.0};
      EXPECT_LE(play(cfg, kQ, p).payoff_b, br.payoff + 1e-12);
    }
  }
  // Q itself is on this grid.
  EXPECT_GE(br.payoff, 3.0 - 1e-9);
}

TEST(Session, AccumulatesMoves) {
  GameSession s("s1", GameConfig{});
  s.play_move(kCoop, kDefect);
  s.play_move(kDefect, kDefect);
  EXPECT_EQ(s.history().size(), 2u);
  EXPECT_NEAR(s.total_a(), 1.0, 1e-12);
  EXPECT_NEAR(s.total_b(), 6.0, 1e-12);
  Move bad;
  bad.probabilities = {0.5, 0.0, 0.0, 0.0};
  EXPECT_THROW(s.append_recorded(bad), ValidationError);
  Move good = s.history().front();
  s.append_recorded(good);
  EXPECT_EQ(s.history().size(), 3u);
}

}  // namespace
}  // namespace qcell::game
