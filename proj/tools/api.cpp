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

#include "api.hpp"

#include <cerrno>
#include <cstdlib>
#include <regex>

#include "qcell/decomposer.hpp"
#include "qcell/fabric.hpp"
#include "qcell/json_io.hpp"

namespace qcell::app {

namespace {

using json_io::Json;

struct NotFound : Error {
  using Error::Error;
};

Response ok(const Json& j, int status = 200) { return {status, json_io::canonical_dump(j)}; }

double parse_real(const std::string& text) {
  if (text.empty()) {
    throw ValidationError("empty number");
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return v;
}

Complex amplitude_from_json(const Json& j) {
  if (j.is_number()) {
    return {j.get<double>(), 0.0};
  }
  if (j.is_string()) {
    return parse_complex(j.get<std::string>());
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("amplitude must be a number, \"re+imj\" or [re, im]");
}

optics::PhotonQubit photon_from_json(const Json& j, const char* name) {
  if (j.is_string()) {
    return parse_photon(j.get<std::string>());
  }
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(std::string(name) + " must be [aH, aV] or \"aH,aV\"");
  }
  return {amplitude_from_json(j[0]), amplitude_from_json(j[1])};
}

optics::AncillaKind ancilla_from_string(const std::string& s) {
  if (s == "bell") {
    return optics::AncillaKind::bell;
  }
  if (s == "product") {
    return optics::AncillaKind::product;
  }
  throw ValidationError("ancilla must be bell or product, got '" + s + "'");
}

StateVector state_from_json(const Json& j, int qubits) {
  if (j.is_string()) {
    const std::string bits = j.get<std::string>();
    if (static_cast<int>(bits.size()) != qubits) {
      throw ValidationError("state '" + bits + "' does not have " + std::to_string(qubits) + " bits");
    }
    return StateVector::from_bits(bits);
  }
  return StateVector(qubits, json_io::vector_from_json(j));
}

}  // namespace

Response error_response(int status, const std::string& code, const std::string& message) {
  return {status, json_io::canonical_dump({{"error", {{"code", code}, {"message", message}}}})};
}

Complex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (c != ' ') {
      s += c;
    }
  }
  if (s.empty()) {
    throw ValidationError("empty complex number");
  }
  if (s.back() != 'j' && s.back() != 'i') {
    return {parse_real(s), 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") {
      return 1.0;
    }
    if (t == "-") {
      return -1.0;
    }
    return parse_real(t);
  };
  if (split == std::string::npos) {
    return {0.0, imag_part(s)};
  }
  return {parse_real(s.substr(0, split)), imag_part(s.substr(split))};
}

optics::PhotonQubit parse_photon(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw ValidationError("photon qubit must be written aH,aV");
  }
  return {parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))};
}

Response Api::handle(const std::string& method, const std::string& path, const std::string& body) {
  static const std::regex program_re("^/api/v1/programs/([^/]+)$");
  static const std::regex session_re("^/api/v1/game/sessions/([^/]+)$");
  static const std::regex moves_re("^/api/v1/game/sessions/([^/]+)/moves$");
  std::smatch m;
  try {
    if (path == "/api/v1/compile") {
      if (method == "POST") return compile(body);
    } else if (path == "/api/v1/evaluate") {
      if (method == "POST") return evaluate(body);
    } else if (path == "/api/v1/programs") {
      if (method == "GET") return list_programs();
    } else if (std::regex_match(path, m, program_re)) {
      if (method == "GET") return get_program(m[1]);
      if (method == "PUT") return put_program(m[1], body);
      if (method == "DELETE") return delete_program(m[1]);
    } else if (path == "/api/v1/game/sessions") {
      if (method == "POST") return create_session(body);
    } else if (std::regex_match(path, m, moves_re)) {
      if (method == "POST") return play_move(m[1], body);
    } else if (std::regex_match(path, m, session_re)) {
      if (method == "GET") return get_session(m[1]);
    } else if (path == "/api/v1/optics/run") {
      if (method == "POST") return optics_run(body);
    } else {
      return error_response(404, "not_found", "no route for " + path);
    }
    return error_response(405, "method_not_allowed", method + " is not supported on " + path);
  } catch (const NotFound& e) {
    return error_response(404, "not_found", e.what());
  } catch (const IoError& e) {
    return error_response(500, "io_error", e.what());
  } catch (const DecompositionError& e) {
    return error_response(500, "decomposition_failed", e.what());
  } catch (const Error& e) {
    return error_response(400, "invalid_request", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, "invalid_request", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

Response Api::compile(const std::string& body) {
  const Json j = json_io::parse(body);
  if (j.is_object() && j.contains("gates")) {
    const Circuit c = json_io::circuit_from_json(j);
    const CellProgram p = compile_circuit(c);
    return ok({{"program", json_io::program_to_json(p)},
               {"error", max_abs_diff(program_to_unitary(p), circuit_to_unitary(c))}});
  }
  const Matrix u = json_io::unitary_from_json(j);
  if (u.rows() != 4) {
    throw ValidationError("only 4x4 unitaries can be compiled, got dim " + std::to_string(u.rows()));
  }
  const KakResult kak = kak_decompose(u);
  const Circuit circuit = vidal_dawson_circuit(kak.decomposition);
  const CellProgram p = compile_circuit(circuit);
  return ok({{"decomposition", json_io::decomposition_to_json(kak, circuit)},
             {"program", json_io::program_to_json(p)},
             {"error", max_abs_diff(program_to_unitary(p), u)}});
}

Response Api::evaluate(const std::string& body) {
  const Json j = json_io::parse(body);
  const bool wrapped = j.is_object() && j.contains("program");
  const CellProgram p = json_io::program_from_json(wrapped ? j["program"] : j);
  const Matrix u = program_to_unitary(p);
  Json out = {{"unitary", json_io::unitary_to_json(u)}, {"cells", p.cells.size()}};
  if (wrapped && j.contains("state")) {
    const StateVector in = state_from_json(j["state"], p.n);
    const Vector amps = u * in.amplitudes();
    Json probs = Json::object();
    for (Eigen::Index k = 0; k < amps.size(); ++k) {
      const double pr = std::norm(amps(k));
      if (pr > 1e-12) {
        probs[basis_label(p.n, static_cast<std::size_t>(k))] = pr;
      }
    }
    out["state"] = json_io::vector_to_json(amps);
    out["probabilities"] = std::move(probs);
  }
  if (wrapped && j.contains("target")) {
    const Matrix target = json_io::unitary_from_json(j["target"]);
    if (target.rows() != u.rows()) {
      throw ValidationError("target dimension does not match the program");
    }
    out["phase_invariant_error"] = phase_invariant_error(u, target);
    out["max_abs_error"] = max_abs_diff(u, target);
  }
  return ok(out);
}

Response Api::get_program(const std::string& id) {
  const std::optional<std::string> bytes = store_.program_bytes(id);
  if (!bytes) {
    throw NotFound("no program '" + id + "'");
  }
  return {200, *bytes};
}

Response Api::put_program(const std::string& id, const std::string& body) {
  if (!is_valid_id(id)) {
    throw ValidationError("invalid id '" + id + "'");
  }
  const Json j = json_io::parse(body);
  ProgramRecord record;
  record.id = id;
  const bool wrapped = j.is_object() && j.contains("program");
  record.program = json_io::program_from_json(wrapped ? j["program"] : j);
  if (wrapped && j.contains("label")) {
    if (!j["label"].is_string()) {
      throw ValidationError("label must be a string");
    }
    record.label = j["label"].get<std::string>();
  }

  std::lock_guard<std::mutex> lock(store_.lock_for("program:" + id));
  const std::optional<ProgramRecord> existing = store_.get_program(id);
  record.created_at = existing ? existing->created_at : utc_timestamp();
  store_.put_program(record);
  return {existing ? 200 : 201, *store_.program_bytes(id)};
}

Response Api::delete_program(const std::string& id) {
  std::lock_guard<std::mutex> lock(store_.lock_for("program:" + id));
  if (!store_.delete_program(id)) {
    throw NotFound("no program '" + id + "'");
  }
  return ok({{"deleted", id}});
}

Response Api::list_programs() { return ok({{"programs", store_.list_programs()}}); }

Response Api::create_session(const std::string& body) {
  const Json j = json_io::parse(body.empty() ? "{}" : body);
  const game::GameConfig config = json_io::game_config_from_json(j);
  const std::string id = store_.new_session_id();
  std::lock_guard<std::mutex> lock(store_.lock_for("session:" + id));
  const game::GameSession session(id, config);
  store_.put_session(session);
  return ok({{"id", id}, {"session", json_io::session_to_json(session)}}, 201);
}

Response Api::play_move(const std::string& id, const std::string& body) {
  const Json j = json_io::parse(body);
  if (!j.is_object() || !j.contains("u_a") || !j.contains("u_b")) {
    throw ValidationError("a move needs u_a and u_b");
  }
  const SingleQubitParams u_a = json_io::params_from_json(j["u_a"]);
  const SingleQubitParams u_b = json_io::params_from_json(j["u_b"]);

  std::lock_guard<std::mutex> lock(store_.lock_for("session:" + id));
  std::optional<game::GameSession> session = store_.get_session(id);
  if (!session) {
    throw NotFound("no session '" + id + "'");
  }
  const game::Move move = session->play_move(u_a, u_b);
  store_.put_session(*session);
  return ok({{"payoff_a", move.payoff_a},
             {"payoff_b", move.payoff_b},
             {"probabilities", move.probabilities},
             {"round", session->history().size()},
             {"totals", {{"a", session->total_a()}, {"b", session->total_b()}}}});
}

Response Api::get_session(const std::string& id) {
  std::lock_guard<std::mutex> lock(store_.lock_for("session:" + id));
  const std::optional<game::GameSession> session = store_.get_session(id);
  if (!session) {
    throw NotFound("no session '" + id + "'");
  }
  return ok(json_io::session_to_json(*session));
}

Response Api::optics_run(const std::string& body) {
  const Json j = json_io::parse(body.empty() ? "{}" : body);
  if (!j.is_object()) {
    throw ValidationError("optics request must be an object");
  }
  const optics::PhotonQubit control =
      j.contains("control") ? photon_from_json(j["control"], "control") : optics::PhotonQubit{};
  const optics::PhotonQubit target =
      j.contains("target") ? photon_from_json(j["target"], "target") : optics::PhotonQubit{};
  const optics::AncillaKind ancilla =
      ancilla_from_string(j.contains("ancilla") ? j["ancilla"].get<std::string>() : "bell");
  const optics::SetupResult r = optics::simulate_cnot_setup(control, target, ancilla);
  const Matrix channel = optics::corrected_channel(ancilla);
  if (j.contains("shots")) {
    const long long shots = j["shots"].get<long long>();
    if (shots < 1 || shots > 100000000) {
      throw ValidationError("shots must be in 1..1e8");
    }
    const std::uint64_t seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : 0;
    const optics::Tally tally = optics::sample_run(control, target, ancilla, seed,
                                                   static_cast<std::uint64_t>(shots));
    return ok(json_io::optics_report(r, channel, &tally));
  }
  return ok(json_io::optics_report(r, channel));
}

}  // namespace qcell::app
