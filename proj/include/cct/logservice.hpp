// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cct/log.hpp"

namespace cct {

/// honest serves one tree to everyone. split_view forks the tree at
/// fork_at entries and serves the fork to the clients named in
/// victim_clients. delayed_visibility serves victims a checkpoint that
/// trails the real tree by delay_entries and refuses to look past it.
enum class ServiceMode { honest, split_view, delayed_visibility };

std::string_view service_mode_name(ServiceMode mode);
std::optional<ServiceMode> service_mode_from_name(std::string_view name);

struct ServiceConfig {
  std::string listen_address = "127.0.0.1";
  int port = 0;  // 0 picks a free port, read it back from port()
  ServiceMode mode = ServiceMode::honest;
  std::uint64_t fork_at = 0;
  std::vector<std::string> victim_clients;
  std::uint64_t delay_entries = 0;
  std::optional<std::filesystem::path> storage;
  std::string origin = "log.local";
};

/// The log operator's server. Endpoints:
///   GET  /public-key                     operator key and origin
///   GET  /checkpoint                     latest signed checkpoint
///   GET  /entries?start=N&end=M          raw entries, end exclusive
///   GET  /proof/inclusion?index=N&size=M
///   GET  /proof/consistency?from=N&to=M
///   POST /entries {"payload": base64}    appends, answers {"index": N}
/// Clients identify themselves with an X-Client-Id header; the adversarial
/// modes key their routing on it. In split_view mode an appender may set
/// X-Fork-Payload to choose what the forked branch receives instead (the
/// default is the payload with its last byte flipped).
class LogService {
 public:
  LogService(ServiceConfig config, KeyPair operator_keys, Clock clock = wall_clock());
  ~LogService();

  LogService(const LogService&) = delete;
  LogService& operator=(const LogService&) = delete;

  void start();
  void stop();
  int port() const { return port_; }
  std::string base_url() const;

  const PublicKey& operator_key() const { return main_.operator_key(); }
  MerkleLog& main_log() { return main_; }
  MerkleLog* fork_log() { return fork_ ? &*fork_ : nullptr; }

 private:
  struct Routed;
  Routed route(const std::string& client_id);
  std::uint64_t handle_append(const Bytes& payload, const std::optional<Bytes>& fork_payload);

  ServiceConfig config_;
  Clock clock_;
  MerkleLog main_;
  std::optional<MerkleLog> fork_;
  std::mutex mu_;  // append path and lazy fork creation

  struct Impl;  // keeps <httplib.h> out of this header
  std::unique_ptr<Impl> impl_;
  std::thread server_thread_;
  int port_ = 0;
};

/// LogClient over HTTP. Unreachable or garbled servers raise
/// TransportError; clean refusals (4xx/5xx) raise ProofUnavailableError.
class HttpLogClient final : public LogClient {
 public:
  explicit HttpLogClient(std::string base_url, std::string client_id = "");
  ~HttpLogClient() override;

  Checkpoint latest_checkpoint() override;
  std::vector<Bytes> entries(std::uint64_t start, std::uint64_t end) override;
  InclusionProof inclusion_proof(std::uint64_t leaf_index, std::uint64_t tree_size) override;
  ConsistencyProof consistency_proof(std::uint64_t old_size, std::uint64_t new_size) override;
  std::uint64_t append(Bytes payload) override;

  /// Appends while instructing a split-view log what the fork should get.
  std::uint64_t append_with_fork_payload(const Bytes& payload, const Bytes& fork_payload);

  PublicKey fetch_public_key();

 private:
  std::string get(const std::string& path);
  std::string post(const std::string& path, const std::string& body,
                   const std::optional<Bytes>& fork_payload);

  std::string base_url_;
  std::string client_id_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cct
