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

#include "qcell/game.hpp"

#include <cmath>
#include <string>

namespace qcell::game {

namespace {

constexpr double kProbabilitySumTol = 1e-10;

SingleQubitParams params_of(const Matrix& u) { return zyz_decompose(u); }

GameResult score(const GameConfig& config, const Vector& state) {
  GameResult r;
  r.final_state = state;
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = std::norm(state(static_cast<Eigen::Index>(k)));
    r.probabilities[k] = p;
    const auto& [a, b] = config.payoffs.at(static_cast<int>(k >> 1), static_cast<int>(k & 1));
    r.payoff_a += p * a;
    r.payoff_b += p * b;
  }
  return r;
}

// J(g) = (I (x) B) CNOT12 (Rx(s g) (x) I) CNOT12 (I (x) B^dagger) with B = S, s = 1
// for the X (x) Y form (S X S^dagger = Y) and B = I, s = -1 for X (x) X. The
// second CNOT12 is optionally turned around with Hadamards.
void append_j(Circuit& c, double gamma, JConvention convention, bool turned) {
  const bool xy = convention == JConvention::paper;
  const double sign = xy ? 1.0 : -1.0;
  const Matrix h = gates::hadamard();
  const Matrix s = gates::phase(kPi / 2);
  if (xy) {
    c.single(2, params_of(s.adjoint()));
  }
  c.cnot(1, 2);
  c.single(1, params_of(gates::rx(sign * gamma)));
  if (turned) {
    c.single(1, params_of(h)).single(2, params_of(h));
    c.cnot(2, 1);
    c.single(1, params_of(h)).single(2, params_of(h));
  } else {
    c.cnot(1, 2);
  }
  if (xy) {
    c.single(2, params_of(s));
  }
}

}  // namespace

PayoffMatrix PayoffMatrix::swapped() const {
  PayoffMatrix m;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto& [pa, pb] = at(b, a);
      m.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = {pb, pa};
    }
  }
  return m;
}

std::string to_string(JConvention c) { return c == JConvention::paper ? "paper" : "alternative"; }

JConvention parse_j_convention(const std::string& name) {
  if (name == "paper") {
    return JConvention::paper;
  }
  if (name == "alternative") {
    return JConvention::alternative;
  }
  throw ValidationError("unknown J convention '" + name + "' (expected paper or alternative)");
}

void validate_config(const GameConfig& config) {
  if (!(config.gamma >= 0.0 && config.gamma <= kPi)) {
    throw ValidationError("gamma must lie in [0, pi]");
  }
  for (const auto& row : config.payoffs.entries) {
    for (const auto& [a, b] : row) {
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("payoffs must be finite");
      }
    }
  }
}

Matrix j_gate(double gamma, JConvention convention) {
  const PauliString p = PauliString::parse(convention == JConvention::paper ? "XY" : "XX");
  const double coeff = convention == JConvention::paper ? -gamma / 2 : gamma / 2;
  const std::array<PauliTerm, 1> term = {PauliTerm{coeff, p}};
  return pauli_string_exp(term);
}

Circuit j_circuit(double gamma, JConvention convention) {
  Circuit c(2);
  append_j(c, gamma, convention, false);
  return c;
}

GameResult play(const GameConfig& config, const SingleQubitParams& u_a, const SingleQubitParams& u_b) {
  validate_config(config);
  const Matrix j = j_gate(config.gamma, config.convention);
  const Matrix u = j.adjoint() * kron(zyz_compose(u_a), zyz_compose(u_b)) * j;
  return score(config, u.col(0));
}

Circuit game_circuit(const GameConfig& config, const SingleQubitParams& u_a,
                     const SingleQubitParams& u_b) {
  validate_config(config);
  Circuit c(2);
  append_j(c, config.gamma, config.convention, true);
  c.single(1, u_a).single(2, u_b);
  append_j(c, -config.gamma, config.convention, true);
  return c;
}

FabricGameResult game_on_fabric(const GameConfig& config, const SingleQubitParams& u_a,
                                const SingleQubitParams& u_b) {
  FabricGameResult out;
  out.program = compile_circuit(game_circuit(config, u_a, u_b));
  out.result = score(config, program_to_unitary(out.program).col(0));
  return out;
}

BestResponse best_response_scan(const GameConfig& config, const SingleQubitParams& opponent,
                                int grid_steps, Player responder) {
  if (grid_steps < 2) {
    throw ValidationError("grid_steps must be at least 2");
  }
  validate_config(config);
  BestResponse best;
  bool have = false;
  for (int i = 0; i < grid_steps; ++i) {
    for (int j = 0; j < grid_steps; ++j) {
      for (int k = 0; k < grid_steps; ++k) {
        const SingleQubitParams p{0.0, 2 * kPi * i / grid_steps, kPi * j / (grid_steps - 1),
                                  2 * kPi * k / grid_steps};
        const GameResult r =
            responder == Player::bob ? play(config, opponent, p) : play(config, p, opponent);
        const double payoff = responder == Player::bob ? r.payoff_b : r.payoff_a;
        if (!have || payoff > best.payoff + 1e-12) {
          best = {p, payoff};
          have = true;
        }
      }
    }
  }
  return best;
}

GameSession::GameSession(std::string id, GameConfig config)
    : id_(std::move(id)), config_(config) {
  validate_config(config_);
}

const Move& GameSession::play_move(const SingleQubitParams& u_a, const SingleQubitParams& u_b) {
  const GameResult r = play(config_, u_a, u_b);
  history_.push_back({u_a, u_b, r.probabilities, r.payoff_a, r.payoff_b});
  return history_.back();
}

void GameSession::append_recorded(const Move& move) {
  double sum = 0.0;
  for (double p : move.probabilities) {
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTol) {
    throw ValidationError("recorded move probabilities sum to " + std::to_string(sum));
  }
  history_.push_back(move);
}

double GameSession::total_a() const {
  double t = 0.0;
  for (const Move& m : history_) {
    t += m.payoff_a;
  }
  return t;
}

double GameSession::total_b() const {
  double t = 0.0;
  for (const Move& m : history_) {
    t += m.payoff_b;
  }
  return t;
}

}  // namespace qcell::game
