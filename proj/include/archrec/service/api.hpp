#pragma once

#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "archrec/service/pipeline.hpp"

namespace archrec {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// The HTTP+JSON API over one analysis. Readers see an immutable snapshot;
// reassignments are serialized and publish a new snapshot with one pointer swap.
class ArchitectureService {
 public:
  explicit ArchitectureService(Analysis analysis);

  // Transport-independent dispatch: method is "GET"/"POST", path without query string.
  ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

  std::shared_ptr<const ArchitectureSnapshot> snapshot() const;
  const Analysis& analysis() const { return analysis_; }

 private:
  ApiResponse get_cluster(const std::string& id) const;
  ApiResponse reassign(const nlohmann::json& body);
  ApiResponse query(const nlohmann::json& body) const;
  ApiResponse map_entities(const nlohmann::json& body) const;

  const Analysis analysis_;
  mutable std::mutex read_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const ArchitectureSnapshot> current_;
};

// cpp-httplib front end for an ArchitectureService.
class HttpServer {
 public:
  explicit HttpServer(ArchitectureService& service);
  ~HttpServer();

  // Binds and returns the port (an ephemeral one when `port` is 0); throws on failure.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace archrec
