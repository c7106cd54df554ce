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

#ifndef QCELL_TOOLS_API_HPP
#define QCELL_TOOLS_API_HPP

#include <string>

#include "qcell/optics.hpp"
#include "qcell/store.hpp"

namespace qcell::app {

struct Response {
  int status = 200;
  std::string body;
};

/// JSON request handling for every /api/v1 route, independent of the
/// transport. Safe to call from several threads at once.
class Api {
 public:
  explicit Api(Store& store) : store_(store) {}

  /// `path` excludes the query string.
  Response handle(const std::string& method, const std::string& path, const std::string& body);

 private:
  Response compile(const std::string& body);
  Response evaluate(const std::string& body);
  Response get_program(const std::string& id);
  Response put_program(const std::string& id, const std::string& body);
  Response delete_program(const std::string& id);
  Response list_programs();
  Response create_session(const std::string& body);
  Response play_move(const std::string& id, const std::string& body);
  Response get_session(const std::string& id);
  Response optics_run(const std::string& body);

  Store& store_;
};

/// {"error": {"code": code, "message": message}}
Response error_response(int status, const std::string& code, const std::string& message);

/// Parses "re", "imj", "re+imj" or "re-imj" ('i' is accepted for 'j').
/// Throws ValidationError.
Complex parse_complex(const std::string& text);

/// "aH,aV" with both parts in parse_complex syntax.
optics::PhotonQubit parse_photon(const std::string& text);

}  // namespace qcell::app

#endif  // QCELL_TOOLS_API_HPP
