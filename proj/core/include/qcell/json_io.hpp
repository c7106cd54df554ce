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

#ifndef QCELL_JSON_IO_HPP
#define QCELL_JSON_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "qcell/circuit.hpp"
#include "qcell/decomposer.hpp"
#include "qcell/fabric.hpp"
#include "qcell/game.hpp"
#include "qcell/optics.hpp"

namespace qcell::json_io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Compact dump with sorted keys and shortest round-trip doubles. Loading
/// and dumping again reproduces the same bytes.
std::string canonical_dump(const Json& j);

/// Parses text; throws ValidationError with the parser's message on failure.
Json parse(const std::string& text);

// Every from_json below throws ValidationError on a schema violation.

/// {"dim": d, "entries": [[[re, im], ...], ...]}, row-major.
Json unitary_to_json(const Matrix& m);
Matrix unitary_from_json(const Json& j);

/// Amplitude list [[re, im], ...].
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"theta0": .., "theta1": .., "theta2": .., "theta3": ..}. The reader also
/// takes [t1, t2, t3] or [t0, t1, t2, t3]; a missing theta0 means 0.
Json params_to_json(const SingleQubitParams& p);
SingleQubitParams params_from_json(const Json& j);

/// {"qubits": n, "gates": [{"type": "single", "wire": w, "params": {...}} |
///                         {"type": "cnot", "control": c, "target": t}]}
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// {"version": 1, "n": n, "global_phase": x, "cells": [{"layers": ...,
/// "cnots": [...]}]}. CNOT entries must appear in the canonical order.
Json program_to_json(const CellProgram& p);
CellProgram program_from_json(const Json& j);

/// {"theta0", "theta": [3], "u_a", "u_b", "v_a", "v_b", "circuit",
///  "reconstruction_error"}
Json decomposition_to_json(const KakResult& r, const Circuit& circuit);

/// {"cc": [a, b], "cd": [a, b], "dc": [a, b], "dd": [a, b]}
Json payoffs_to_json(const game::PayoffMatrix& m);
game::PayoffMatrix payoffs_from_json(const Json& j);

/// {"gamma": g, "payoffs": {...}, "convention": "paper" | "alternative"};
/// payoffs and convention are optional on input.
Json game_config_to_json(const game::GameConfig& c);
game::GameConfig game_config_from_json(const Json& j);

Json move_to_json(const game::Move& m);
game::Move move_from_json(const Json& j);

/// {"version": 1, "id", "config", "history": [...], "totals": {"a", "b"}}
Json session_to_json(const game::GameSession& s);
game::GameSession session_from_json(const Json& j);

/// {"outcomes": [{"detectors", "probability", "post_state",
/// "corrected_state"}], "failure_probability", "channel_matrix"}; a tally is
/// added under "counts" when given.
Json optics_report(const optics::SetupResult& r, const Matrix& channel,
                   const optics::Tally* tally = nullptr);

}  // namespace qcell::json_io

#endif  // QCELL_JSON_IO_HPP
