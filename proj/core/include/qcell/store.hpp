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

#ifndef QCELL_STORE_HPP
#define QCELL_STORE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcell/fabric.hpp"
#include "qcell/game.hpp"

namespace qcell {

struct ProgramRecord {
  std::string id;
  CellProgram program;
  std::string label;
  std::string created_at;  // UTC, e.g. 2026-01-31T12:00:00Z
};

/// Ids are 1-64 characters from [A-Za-z0-9_-].
bool is_valid_id(const std::string& id);

/// Current UTC time in the created_at format.
std::string utc_timestamp();

/// JSON documents under <root>/programs and <root>/sessions. Every write goes
/// to a temporary file that is then renamed over the target. Loads reject
/// documents with another schema version.
class Store {
 public:
  /// Creates the directories if needed; throws IoError if that fails.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  void put_program(const ProgramRecord& record);
  std::optional<ProgramRecord> get_program(const std::string& id) const;
  /// Canonical bytes of the stored record, as written.
  std::optional<std::string> program_bytes(const std::string& id) const;
  bool delete_program(const std::string& id);
  std::vector<std::string> list_programs() const;

  void put_session(const game::GameSession& session);
  std::optional<game::GameSession> get_session(const std::string& id) const;
  std::vector<std::string> list_sessions() const;

  /// A fresh id not used by any stored session.
  std::string new_session_id();

  /// Mutex serializing all mutations of one key ("program:<id>" or
  /// "session:<id>"). The reference stays valid for the store's lifetime.
  std::mutex& lock_for(const std::string& key);

 private:
  std::filesystem::path program_path(const std::string& id) const;
  std::filesystem::path session_path(const std::string& id) const;

  std::filesystem::path root_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
  std::mutex id_mutex_;
  std::uint64_t id_counter_ = 0;
};

nlohmann::json program_record_to_json(const ProgramRecord& r);
ProgramRecord program_record_from_json(const nlohmann::json& j);

/// Writes bytes to path.tmp-* then renames it onto path. Throws IoError.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);
/// Throws IoError if the file cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace qcell

#endif  // QCELL_STORE_HPP
