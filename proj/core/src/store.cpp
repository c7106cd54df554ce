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

#include "qcell/store.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "qcell/json_io.hpp"

namespace qcell {

namespace fs = std::filesystem;

namespace {

constexpr const char* kExtension = ".json";

void require_id(const std::string& id) {
  if (!is_valid_id(id)) {
    throw ValidationError("invalid id '" + id + "' (1-64 characters from [A-Za-z0-9_-])");
  }
}

std::vector<std::string> list_dir(const fs::path& dir) {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const fs::path& p = entry.path();
    if (entry.is_regular_file() && p.extension() == kExtension && is_valid_id(p.stem().string())) {
      ids.push_back(p.stem().string());
    }
  }
  if (ec) {
    throw IoError("cannot list " + dir.string() + ": " + ec.message());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::uint64_t entropy() {
  std::random_device rd;
  const auto now = static_cast<std::uint64_t>(
      std::chrono::high_resolution_clock::now().time_since_epoch().count());
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^ now;
}

}  // namespace

bool is_valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) {
    return false;
  }
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& bytes) {
  static std::mt19937_64 rng(entropy());
  static std::mutex rng_mutex;
  std::uint64_t tag = 0;
  {
    std::lock_guard<std::mutex> lock(rng_mutex);
    tag = rng();
  }
  char suffix[24];
  std::snprintf(suffix, sizeof suffix, ".tmp-%016llx", static_cast<unsigned long long>(tag));
  const fs::path tmp = path.string() + suffix;
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("read from " + path.string() + " failed");
  }
  return ss.str();
}

nlohmann::json program_record_to_json(const ProgramRecord& r) {
  return {{"version", json_io::kSchemaVersion},
          {"id", r.id},
          {"label", r.label},
          {"created_at", r.created_at},
          {"program", json_io::program_to_json(r.program)}};
}

ProgramRecord program_record_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
    throw ValidationError("program record has no integer version");
  }
  if (j["version"].get<long long>() != json_io::kSchemaVersion) {
    throw ValidationError("unsupported program record version " + j["version"].dump());
  }
  ProgramRecord r;
  for (const char* key : {"id", "label", "created_at"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw ValidationError(std::string("program record field '") + key + "' must be a string");
    }
  }
  r.id = j["id"].get<std::string>();
  r.label = j["label"].get<std::string>();
  r.created_at = j["created_at"].get<std::string>();
  if (!j.contains("program")) {
    throw ValidationError("program record has no program");
  }
  r.program = json_io::program_from_json(j["program"]);
  require_id(r.id);
  return r;
}

Store::Store(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"programs", "sessions"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) {
      throw IoError("cannot create " + (root_ / sub).string() + ": " + ec.message());
    }
  }
}

fs::path Store::program_path(const std::string& id) const {
  require_id(id);
  return root_ / "programs" / (id + kExtension);
}

fs::path Store::session_path(const std::string& id) const {
  require_id(id);
  return root_ / "sessions" / (id + kExtension);
}

void Store::put_program(const ProgramRecord& record) {
  atomic_write(program_path(record.id),
               json_io::canonical_dump(program_record_to_json(record)));
}

std::optional<std::string> Store::program_bytes(const std::string& id) const {
  const fs::path p = program_path(id);
  if (!fs::exists(p)) {
    return std::nullopt;
  }
  return read_file(p);
}

std::optional<ProgramRecord> Store::get_program(const std::string& id) const {
  const std::optional<std::string> bytes = program_bytes(id);
  if (!bytes) {
    return std::nullopt;
  }
  ProgramRecord r = program_record_from_json(json_io::parse(*bytes));
  if (r.id != id) {
    throw ValidationError("stored program '" + id + "' claims id '" + r.id + "'");
  }
  return r;
}

bool Store::delete_program(const std::string& id) {
  std::error_code ec;
  const bool removed = fs::remove(program_path(id), ec);
  if (ec) {
    throw IoError("cannot delete program '" + id + "': " + ec.message());
  }
  return removed;
}

std::vector<std::string> Store::list_programs() const { return list_dir(root_ / "programs"); }

void Store::put_session(const game::GameSession& session) {
  atomic_write(session_path(session.id()),
               json_io::canonical_dump(json_io::session_to_json(session)));
}

std::optional<game::GameSession> Store::get_session(const std::string& id) const {
  const fs::path p = session_path(id);
  if (!fs::exists(p)) {
    return std::nullopt;
  }
  game::GameSession s = json_io::session_from_json(json_io::parse(read_file(p)));
  if (s.id() != id) {
    throw ValidationError("stored session '" + id + "' claims id '" + s.id() + "'");
  }
  return s;
}

std::vector<std::string> Store::list_sessions() const { return list_dir(root_ / "sessions"); }

std::string Store::new_session_id() {
  static thread_local std::mt19937_64 rng(entropy());
  std::lock_guard<std::mutex> lock(id_mutex_);
  for (;;) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "s-%012llx%04llx",
                  static_cast<unsigned long long>(rng() & 0xffffffffffffULL),
                  static_cast<unsigned long long>(id_counter_++ & 0xffff));
    if (!fs::exists(session_path(buf))) {
      return buf;
    }
  }
}

std::mutex& Store::lock_for(const std::string& key) {
  std::lock_guard<std::mutex> lock(locks_mutex_);
  auto& slot = locks_[key];
  if (!slot) {
    slot = std::make_unique<std::mutex>();
  }
  return *slot;
}

}  // namespace qcell
