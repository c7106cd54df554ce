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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "api.hpp"
#include "qcell/decomposer.hpp"
#include "qcell/fabric.hpp"
#include "qcell/game.hpp"
#include "qcell/json_io.hpp"
#include "qcell/optics.hpp"
#include "qcell/store.hpp"
#include "server.hpp"

namespace qcell::app {

namespace {

using json_io::Json;

std::string read_input(const std::string& path) { return read_file(path); }

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open " + path + " for writing");
  }
  f << text;
  if (!f.flush()) {
    throw IoError("write to " + path + " failed");
  }
}

SingleQubitParams parse_params(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    v.push_back(parse_complex(part).real());
    if (parse_complex(part).imag() != 0.0) {
      throw ValidationError("angles must be real");
    }
  }
  if (v.size() == 3) {
    return {0.0, v[0], v[1], v[2]};
  }
  if (v.size() == 4) {
    return {v[0], v[1], v[2], v[3]};
  }
  throw ValidationError("strategy must be theta1,theta2,theta3 or theta0,...,theta3");
}

// Circuit text, circuit JSON or a 4x4 unitary.
CellProgram compile_input(const std::string& text, double& error) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const Json j = json_io::parse(text);
    if (j.contains("gates")) {
      const Circuit c = json_io::circuit_from_json(j);
      CellProgram p = compile_circuit(c);
      error = max_abs_diff(program_to_unitary(p), circuit_to_unitary(c));
      return p;
    }
    const Matrix u = json_io::unitary_from_json(j);
    if (u.rows() != 4) {
      throw ValidationError("only 4x4 unitaries can be compiled; give a circuit for other sizes");
    }
    CellProgram p = compile_unitary2q(u);
    error = max_abs_diff(program_to_unitary(p), u);
    return p;
  }
  const Circuit c = parse_circuit_text(text);
  CellProgram p = compile_circuit(c);
  error = max_abs_diff(program_to_unitary(p), circuit_to_unitary(c));
  return p;
}

CellProgram load_program(const std::string& path) {
  const Json j = json_io::parse(read_input(path));
  if (j.is_object() && j.contains("program")) {
    return json_io::program_from_json(j["program"]);
  }
  return json_io::program_from_json(j);
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

Json game_result_json(const game::GameResult& r) {
  return {{"payoff_a", r.payoff_a},
          {"payoff_b", r.payoff_b},
          {"probabilities", r.probabilities},
          {"final_state", json_io::vector_to_json(r.final_state)}};
}

}  // namespace

std::string resolve_data_dir(const std::string& flag_value, bool flag_given) {
  if (flag_given) {
    return flag_value;
  }
  if (const char* env = std::getenv("QCELL_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "./qcell-data";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Programmable quantum cell toolkit", "qcell"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;

  auto* decompose = app.add_subcommand("decompose", "Canonical decomposition of a 4x4 unitary");
  decompose->add_option("--in", in_path, "Unitary JSON file")->required();
  decompose->add_option("--out", out_path, "Output file (default stdout)");

  auto* compile = app.add_subcommand("compile", "Compile a circuit or 4x4 unitary onto cells");
  compile->add_option("--in", in_path, "Circuit text, circuit JSON or unitary JSON")->required();
  compile->add_option("--out", out_path, "Output file (default stdout)");

  std::string program_path;
  std::string state_bits;
  auto* run = app.add_subcommand("run", "Apply a cell program to a basis state");
  run->add_option("--program", program_path, "Cell program JSON")->required();
  run->add_option("--state", state_bits, "Input bit string, wire 1 first")->required();

  int level = 1;
  auto* toffoli = app.add_subcommand("toffoli", "Emit the two-cell Toffoli program");
  toffoli->add_option("--level", level, "1: flip on |11>, 0: flip on |00>")
      ->check(CLI::IsMember({0, 1}));
  toffoli->add_option("--out", out_path, "Output file (default stdout)");

  std::string control = "1,0";
  std::string target = "1,0";
  std::string ancilla = "bell";
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  auto* optics_cmd = app.add_subcommand("optics", "Simulate the post-selected optical CNOT");
  optics_cmd->add_option("--control", control, "Control photon aH,aV (complex as re+imj)");
  optics_cmd->add_option("--target", target, "Target photon aH,aV");
  optics_cmd->add_option("--ancilla", ancilla, "bell or product")
      ->check(CLI::IsMember({"bell", "product"}));
  optics_cmd->add_option("--shots", shots, "Monte Carlo shots (0 = none)");
  optics_cmd->add_option("--seed", seed, "Sampler seed");

  double gamma = 0.0;
  std::string alice = "0,0,0";
  std::string bob = "0,0,0";
  std::string convention = "paper";
  std::string payoff_path;
  bool on_fabric = false;
  int scan_steps = 0;
  auto* game_cmd = app.add_subcommand("game", "Play one round of the quantum prisoner's dilemma");
  game_cmd->add_option("--gamma", gamma, "Entanglement in [0, pi]");
  game_cmd->add_option("--alice", alice, "Alice's strategy theta1,theta2,theta3");
  game_cmd->add_option("--bob", bob, "Bob's strategy theta1,theta2,theta3");
  game_cmd->add_option("--convention", convention, "paper or alternative")
      ->check(CLI::IsMember({"paper", "alternative"}));
  game_cmd->add_option("--payoffs", payoff_path, "Payoff matrix JSON");
  game_cmd->add_flag("--fabric", on_fabric, "Evaluate through the compiled two-cell program");
  game_cmd->add_option("--best-response", scan_steps,
                       "Grid steps for Bob's best response to Alice's strategy");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir;
  std::string allow_origin;
  auto* serve = app.add_subcommand("serve", "Run the JSON/HTTP service");
  serve->add_option("--port", port, "Listening port (0 picks one)");
  serve->add_option("--host", host, "Listening address");
  auto* data_dir_opt = serve->add_option("--data-dir", data_dir, "Store directory");
  serve->add_option("--allow-origin", allow_origin, "CORS origin for the browser client");

  std::vector<std::string> argv_store = {"qcell"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) {
    argv.push_back(s.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*decompose) {
      const Matrix u = json_io::unitary_from_json(json_io::parse(read_input(in_path)));
      const KakResult kak = kak_decompose(u);
      const Circuit circuit = vidal_dawson_circuit(kak.decomposition);
      write_output(out_path, json_io::canonical_dump(json_io::decomposition_to_json(kak, circuit)) + "\n",
                   out);
    } else if (*compile) {
      double error = 0.0;
      const CellProgram p = compile_input(read_input(in_path), error);
      write_output(out_path, json_io::canonical_dump(json_io::program_to_json(p)) + "\n", out);
      if (!out_path.empty()) {
        out << "cells " << p.cells.size() << " error " << error << "\n";
      }
    } else if (*run) {
      const CellProgram p = load_program(program_path);
      if (static_cast<int>(state_bits.size()) != p.n) {
        throw ValidationError("state '" + state_bits + "' needs " + std::to_string(p.n) + " bits");
      }
      const StateVector in = StateVector::from_bits(state_bits);
      const Vector amps = program_to_unitary(p) * in.amplitudes();
      for (Eigen::Index k = 0; k < amps.size(); ++k) {
        const double pr = std::norm(amps(k));
        if (pr > 1e-12) {
          out << basis_label(p.n, static_cast<std::size_t>(k)) << " " << format_probability(pr) << "\n";
        }
      }
    } else if (*toffoli) {
      const CellProgram p = toffoli_program(level);
      write_output(out_path, json_io::canonical_dump(json_io::program_to_json(p)) + "\n", out);
    } else if (*optics_cmd) {
      const optics::PhotonQubit c = parse_photon(control);
      const optics::PhotonQubit t = parse_photon(target);
      const optics::AncillaKind kind =
          ancilla == "bell" ? optics::AncillaKind::bell : optics::AncillaKind::product;
      const optics::SetupResult r = optics::simulate_cnot_setup(c, t, kind);
      const Matrix channel = optics::corrected_channel(kind);
      Json report;
      if (shots > 0) {
        const optics::Tally tally = optics::sample_run(c, t, kind, seed, shots);
        report = json_io::optics_report(r, channel, &tally);
      } else {
        report = json_io::optics_report(r, channel);
      }
      out << json_io::canonical_dump(report) << "\n";
    } else if (*game_cmd) {
      game::GameConfig config;
      config.gamma = gamma;
      config.convention = game::parse_j_convention(convention);
      if (!payoff_path.empty()) {
        config.payoffs = json_io::payoffs_from_json(json_io::parse(read_input(payoff_path)));
      }
      const SingleQubitParams ua = parse_params(alice);
      const SingleQubitParams ub = parse_params(bob);
      Json report;
      if (on_fabric) {
        const game::FabricGameResult f = game::game_on_fabric(config, ua, ub);
        report = game_result_json(f.result);
        report["cells"] = f.program.cells.size();
      } else {
        report = game_result_json(game::play(config, ua, ub));
      }
      if (scan_steps > 0) {
        const game::BestResponse br = game::best_response_scan(config, ua, scan_steps);
        report["best_response"] = {{"params", json_io::params_to_json(br.params)},
                                   {"payoff", br.payoff}};
      }
      out << json_io::canonical_dump(report) << "\n";
    } else if (*serve) {
      Store store(resolve_data_dir(data_dir, data_dir_opt->count() > 0));
      Api api(store);
      HttpServer server(api, allow_origin);
      const int bound = server.bind(host, port);
      out << "listening on " << host << ":" << bound << " data " << store.root().string() << std::endl;
      server.run();
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace qcell::app
