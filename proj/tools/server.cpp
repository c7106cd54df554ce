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

#include "server.hpp"

#include <httplib.h>

namespace qcell::app {

HttpServer::HttpServer(Api& api, std::string allow_origin)
    : api_(api), allow_origin_(std::move(allow_origin)), server_(std::make_unique<httplib::Server>()) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = api_.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Get(".*", dispatch);
  server_->Post(".*", dispatch);
  server_->Put(".*", dispatch);
  server_->Delete(".*", dispatch);
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server_->set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
    if (!allow_origin_.empty()) {
      res.set_header("Access-Control-Allow-Origin", allow_origin_);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) {
      throw IoError("cannot bind " + host);
    }
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) {
    server_->stop();
  }
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace qcell::app
