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

#ifndef QCELL_TOOLS_SERVER_HPP
#define QCELL_TOOLS_SERVER_HPP

#include <memory>
#include <string>

#include "api.hpp"

namespace httplib {
class Server;
}

namespace qcell::app {

/// HTTP transport for Api. bind() then run() on some thread; stop() from any
/// other thread makes run() return.
class HttpServer {
 public:
  /// An empty allow_origin disables CORS headers.
  HttpServer(Api& api, std::string allow_origin);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws IoError.
  int bind(const std::string& host, int port);
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  Api& api_;
  std::string allow_origin_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace qcell::app

#endif  // QCELL_TOOLS_SERVER_HPP
