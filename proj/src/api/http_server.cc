// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/api/http_server.h"

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "sentiflow/common/log.h"

namespace sentiflow::api {

HttpServer::HttpServer(const ApiService& service, int threads)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  server_->new_task_queue = [threads] {
    return new httplib::ThreadPool(static_cast<size_t>(std::max(1, threads)));
  };
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request request{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) request.params.emplace(k, v);
    const Response response = service_.Handle(request);
    res.status = response.status;
    std::string content_type = "application/json";
    for (const auto& [k, v] : response.headers) {
      if (k == "Content-Type") {
        content_type = v;
      } else {
        res.set_header(k, v);
      }
    }
    if (!response.body.empty()) res.set_content(response.body, content_type);
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Delete(".*", handler);
  server_->Options(".*", handler);
}

HttpServer::~HttpServer() { Stop(); }

absl::Status HttpServer::Start(const std::string& host, int port) {
  if (thread_.joinable()) return absl::FailedPreconditionError("server already started");
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) {
    return absl::UnavailableError(absl::StrCat("cannot bind ", host, ":", port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  LogEvent(LogLevel::kInfo, "api.listening", {{"host", host}, {"port", port_}});
  return absl::OkStatus();
}

void HttpServer::Stop() {
  if (!thread_.joinable()) return;
  server_->stop();
  thread_.join();
}

}  // namespace sentiflow::api
