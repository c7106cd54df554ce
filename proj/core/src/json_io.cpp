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

#include "qcell/json_io.hpp"

#include <cmath>
#include <string>

namespace qcell::json_io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) {
    fail(std::string("expected an object holding '") + key + "'");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    fail(std::string("missing field '") + key + "'");
  }
  return *it;
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) {
    fail(what + " must be a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    fail(what + " must be finite");
  }
  return x;
}

long long integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) {
    fail(what + " must be an integer");
  }
  return j.get<long long>();
}

int small_int(const Json& j, const std::string& what, int lo, int hi) {
  const long long v = integer(j, what);
  if (v < lo || v > hi) {
    fail(what + " out of range " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(v);
}

const Json& array(const Json& j, const std::string& what) {
  if (!j.is_array()) {
    fail(what + " must be an array");
  }
  return j;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    fail(what + " must be [re, im]");
  }
  return {number(j[0], what), number(j[1], what)};
}

void check_version(const Json& j) {
  const long long v = integer(field(j, "version"), "version");
  if (v != kSchemaVersion) {
    fail("unsupported schema version " + std::to_string(v) + " (expected " +
         std::to_string(kSchemaVersion) + ")");
  }
}

constexpr std::array<const char*, 4> kProfileKeys = {"cc", "cd", "dc", "dd"};

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(); }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

Json unitary_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("unitary_to_json: matrix is not square");
  }
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

Matrix unitary_from_json(const Json& j) {
  const long long dim = integer(field(j, "dim"), "dim");
  if (dim < 1 || dim > 1024) {
    fail("dim must be in 1..1024");
  }
  const Json& rows = array(field(j, "entries"), "entries");
  if (static_cast<long long>(rows.size()) != dim) {
    fail("entries must have dim rows");
  }
  Matrix m(dim, dim);
  for (long long r = 0; r < dim; ++r) {
    const Json& row = array(rows[static_cast<std::size_t>(r)], "entries row");
    if (static_cast<long long>(row.size()) != dim) {
      fail("every entries row must have dim columns");
    }
    for (long long c = 0; c < dim; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], "matrix entry");
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.push_back(complex_to_json(v(k)));
  }
  return out;
}

Vector vector_from_json(const Json& j) {
  array(j, "amplitudes");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], "amplitude");
  }
  return v;
}

Json params_to_json(const SingleQubitParams& p) {
  return {{"theta0", p.theta0}, {"theta1", p.theta1}, {"theta2", p.theta2}, {"theta3", p.theta3}};
}

SingleQubitParams params_from_json(const Json& j) {
  SingleQubitParams p;
  if (j.is_array()) {
    if (j.size() == 3) {
      p.theta1 = number(j[0], "theta1");
      p.theta2 = number(j[1], "theta2");
      p.theta3 = number(j[2], "theta3");
    } else if (j.size() == 4) {
      p.theta0 = number(j[0], "theta0");
      p.theta1 = number(j[1], "theta1");
      p.theta2 = number(j[2], "theta2");
      p.theta3 = number(j[3], "theta3");
    } else {
      fail("parameter array must hold 3 or 4 angles");
    }
    return p;
  }
  p.theta1 = number(field(j, "theta1"), "theta1");
  p.theta2 = number(field(j, "theta2"), "theta2");
  p.theta3 = number(field(j, "theta3"), "theta3");
  if (j.contains("theta0")) {
    p.theta0 = number(j["theta0"], "theta0");
  }
  return p;
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const Gate& g : c.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&g)) {
      gates.push_back({{"type", "single"}, {"wire", s->wire}, {"params", params_to_json(s->params)}});
    } else {
      const auto& x = std::get<CnotGate>(g);
      gates.push_back({{"type", "cnot"}, {"control", x.control}, {"target", x.target}});
    }
  }
  return {{"qubits", c.qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  const int n = small_int(field(j, "qubits"), "qubits", 1, 20);
  Circuit c(n);
  for (const Json& g : array(field(j, "gates"), "gates")) {
    const Json& type = field(g, "type");
    if (type == "single") {
      c.single(small_int(field(g, "wire"), "wire", 1, n), params_from_json(field(g, "params")));
    } else if (type == "cnot") {
      c.cnot(small_int(field(g, "control"), "control", 1, n),
             small_int(field(g, "target"), "target", 1, n));
    } else {
      fail("gate type must be \"single\" or \"cnot\"");
    }
  }
  return c;
}

Json program_to_json(const CellProgram& p) {
  validate_program(p);
  Json cells = Json::array();
  for (const Cell& cell : p.cells) {
    Json layers = Json::array();
    for (int layer = 0; layer <= cell.n(); ++layer) {
      Json slots = Json::array();
      for (int wire = 1; wire <= cell.n(); ++wire) {
        const SingleQubitParams& s = cell.slot(layer, wire);
        slots.push_back(Json::array({s.theta1, s.theta2, s.theta3}));
      }
      layers.push_back(std::move(slots));
    }
    Json cnots = Json::array();
    for (const CnotSlot& s : cell.cnots()) {
      cnots.push_back({{"control", s.control}, {"target", s.target}, {"enabled", s.enabled}});
    }
    cells.push_back({{"layers", std::move(layers)}, {"cnots", std::move(cnots)}});
  }
  return {{"version", kSchemaVersion},
          {"n", p.n},
          {"global_phase", p.global_phase},
          {"cells", std::move(cells)}};
}

CellProgram program_from_json(const Json& j) {
  check_version(j);
  CellProgram p;
  p.n = small_int(field(j, "n"), "n", 1, 12);
  p.global_phase = number(field(j, "global_phase"), "global_phase");
  for (const Json& cj : array(field(j, "cells"), "cells")) {
    Cell cell(p.n);
    const Json& layers = array(field(cj, "layers"), "layers");
    if (static_cast<int>(layers.size()) != p.n + 1) {
      fail("a cell needs n + 1 layers");
    }
    for (int layer = 0; layer <= p.n; ++layer) {
      const Json& slots = array(layers[static_cast<std::size_t>(layer)], "layer");
      if (static_cast<int>(slots.size()) != p.n) {
        fail("a layer needs n slots");
      }
      for (int wire = 1; wire <= p.n; ++wire) {
        const Json& s = slots[static_cast<std::size_t>(wire - 1)];
        if (!s.is_array() || s.size() != 3) {
          fail("a slot is [theta1, theta2, theta3]");
        }
        cell.slot(layer, wire) = {0.0, number(s[0], "theta1"), number(s[1], "theta2"),
                                  number(s[2], "theta3")};
      }
    }
    const Json& cnots = array(field(cj, "cnots"), "cnots");
    if (cnots.size() != cell.cnots().size()) {
      fail("a cell needs n (n - 1) CNOT entries");
    }
    for (std::size_t k = 0; k < cnots.size(); ++k) {
      const CnotSlot& expect = cell.cnots()[k];
      const int control = small_int(field(cnots[k], "control"), "control", 1, p.n);
      const int target = small_int(field(cnots[k], "target"), "target", 1, p.n);
      if (control != expect.control || target != expect.target) {
        fail("CNOT entry " + std::to_string(k) + " is out of canonical order (expected " +
             std::to_string(expect.control) + "->" + std::to_string(expect.target) + ")");
      }
      const Json& enabled = field(cnots[k], "enabled");
      if (!enabled.is_boolean()) {
        fail("enabled must be a boolean");
      }
      cell.set_cnot(control, target, enabled.get<bool>());
    }
    p.cells.push_back(std::move(cell));
  }
  validate_program(p);
  return p;
}

Json decomposition_to_json(const KakResult& r, const Circuit& circuit) {
  const TwoQubitDecomposition& d = r.decomposition;
  return {{"theta0", d.theta0},
          {"theta", Json::array({d.theta[0], d.theta[1], d.theta[2]})},
          {"u_a", unitary_to_json(d.u_a)},
          {"u_b", unitary_to_json(d.u_b)},
          {"v_a", unitary_to_json(d.v_a)},
          {"v_b", unitary_to_json(d.v_b)},
          {"circuit", to_text(circuit)},
          {"reconstruction_error", r.reconstruction_error}};
}

Json payoffs_to_json(const game::PayoffMatrix& m) {
  Json out = Json::object();
  for (int k = 0; k < 4; ++k) {
    const auto& [a, b] = m.at(k >> 1, k & 1);
    out[kProfileKeys[static_cast<std::size_t>(k)]] = Json::array({a, b});
  }
  return out;
}

game::PayoffMatrix payoffs_from_json(const Json& j) {
  game::PayoffMatrix m;
  for (int k = 0; k < 4; ++k) {
    const char* key = kProfileKeys[static_cast<std::size_t>(k)];
    const Json& pair = field(j, key);
    if (!pair.is_array() || pair.size() != 2) {
      fail(std::string("payoff '") + key + "' must be [alice, bob]");
    }
    m.entries[static_cast<std::size_t>(k >> 1)][static_cast<std::size_t>(k & 1)] = {
        number(pair[0], key), number(pair[1], key)};
  }
  return m;
}

Json game_config_to_json(const game::GameConfig& c) {
  return {{"gamma", c.gamma},
          {"payoffs", payoffs_to_json(c.payoffs)},
          {"convention", game::to_string(c.convention)}};
}

game::GameConfig game_config_from_json(const Json& j) {
  game::GameConfig c;
  c.gamma = number(field(j, "gamma"), "gamma");
  if (j.contains("payoffs")) {
    c.payoffs = payoffs_from_json(j["payoffs"]);
  }
  if (j.contains("convention")) {
    if (!j["convention"].is_string()) {
      fail("convention must be a string");
    }
    c.convention = game::parse_j_convention(j["convention"].get<std::string>());
  }
  game::validate_config(c);
  return c;
}

Json move_to_json(const game::Move& m) {
  return {{"u_a", params_to_json(m.u_a)},
          {"u_b", params_to_json(m.u_b)},
          {"probabilities", Json(m.probabilities)},
          {"payoff_a", m.payoff_a},
          {"payoff_b", m.payoff_b}};
}

game::Move move_from_json(const Json& j) {
  game::Move m;
  m.u_a = params_from_json(field(j, "u_a"));
  m.u_b = params_from_json(field(j, "u_b"));
  const Json& probs = array(field(j, "probabilities"), "probabilities");
  if (probs.size() != 4) {
    fail("probabilities must hold 4 values");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    m.probabilities[k] = number(probs[k], "probability");
  }
  m.payoff_a = number(field(j, "payoff_a"), "payoff_a");
  m.payoff_b = number(field(j, "payoff_b"), "payoff_b");
  return m;
}

Json session_to_json(const game::GameSession& s) {
  Json history = Json::array();
  for (const game::Move& m : s.history()) {
    history.push_back(move_to_json(m));
  }
  return {{"version", kSchemaVersion},
          {"id", s.id()},
          {"config", game_config_to_json(s.config())},
          {"history", std::move(history)},
          {"totals", {{"a", s.total_a()}, {"b", s.total_b()}}}};
}

game::GameSession session_from_json(const Json& j) {
  check_version(j);
  const Json& id = field(j, "id");
  if (!id.is_string()) {
    fail("id must be a string");
  }
  game::GameSession s(id.get<std::string>(), game_config_from_json(field(j, "config")));
  for (const Json& m : array(field(j, "history"), "history")) {
    s.append_recorded(move_from_json(m));
  }
  return s;
}

Json optics_report(const optics::SetupResult& r, const Matrix& channel, const optics::Tally* tally) {
  Json outcomes = Json::array();
  for (const optics::DetectionOutcome& o : r.outcomes) {
    Json entry = {{"detectors", optics::detector_label(o.control_side, o.target_side)},
                  {"probability", o.probability}};
    if (o.post_state) {
      entry["post_state"] = vector_to_json(o.post_state->amplitudes());
      entry["corrected_state"] = vector_to_json(optics::feed_forward_correct(o).amplitudes());
    } else {
      entry["post_state"] = nullptr;
      entry["corrected_state"] = nullptr;
    }
    outcomes.push_back(std::move(entry));
  }
  Json out = {{"outcomes", std::move(outcomes)},
              {"failure_probability", r.failure_probability},
              {"channel_matrix", unitary_to_json(channel)}};
  if (tally != nullptr) {
    out["counts"] = tally->counts;
    out["shots"] = tally->shots;
  }
  return out;
}

}  // namespace qcell::json_io
