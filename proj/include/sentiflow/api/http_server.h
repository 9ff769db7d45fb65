// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <memory>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "sentiflow/api/api_service.h"

namespace httplib {
class Server;
}

namespace sentiflow::api {

// Serves an ApiService over HTTP/1.1 on a background thread.
class HttpServer {
 public:
  explicit HttpServer(const ApiService& service, int threads = 8);
  ~HttpServer();

  // port 0 picks a free port; see port().
  absl::Status Start(const std::string& host, int port);
  void Stop();

  int port() const { return port_; }

 private:
  const ApiService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace sentiflow::api
