// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cct/crypto.hpp"
#include "cct/merkle.hpp"

namespace cct {

/// Injectable time source, seconds since the Unix epoch.
using Clock = std::function<std::int64_t()>;
Clock wall_clock();
Clock fixed_clock(std::int64_t now);

/// Signed claim by the log operator that the tree at `tree_size` has
/// `root_hash`. The signature covers a newline-separated text body:
///   origin "\n" tree_size "\n" base64(root_hash) "\n" timestamp "\n"
struct Checkpoint {
  std::string origin;
  std::uint64_t tree_size = 0;
  Hash32 root_hash{};
  std::int64_t timestamp = 0;
  Signature signature{};
};

Bytes checkpoint_signing_body(const Checkpoint& cp);
bool verify_checkpoint(const Checkpoint& cp, const PublicKey& log_key);
std::string checkpoint_to_json(const Checkpoint& cp);
std::optional<Checkpoint> checkpoint_from_json(std::string_view text);

struct InclusionProof {
  std::uint64_t leaf_index = 0;
  std::uint64_t tree_size = 0;
  std::vector<Hash32> audit_path;
};

struct ConsistencyProof {
  std::uint64_t old_size = 0;
  std::uint64_t new_size = 0;
  std::vector<Hash32> path;
};

std::string inclusion_proof_to_json(const InclusionProof& p);
std::optional<InclusionProof> inclusion_proof_from_json(std::string_view text);
std::string consistency_proof_to_json(const ConsistencyProof& p);
std::optional<ConsistencyProof> consistency_proof_from_json(std::string_view text);

/// True when `proof` ties `payload` to the checkpoint's root and size.
bool verify_inclusion_against(const Checkpoint& cp, const InclusionProof& proof,
                              std::span<const std::uint8_t> payload);

/// True when `proof` shows the tree under `older` is a prefix of the tree
/// under `newer`.
bool verify_consistency_against(const Checkpoint& older, const Checkpoint& newer,
                                const ConsistencyProof& proof);

/// Raised when the log's backing store is unreadable or damaged.
class StorageError : public std::runtime_error {
 public:
  StorageError(std::string message, std::uint64_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

/// Raised by clients when the log cannot be reached at all. Callers must
/// treat this as "unknown", never as evidence of misbehavior.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the log answered but refused the request (unknown index,
/// size out of range, hidden range).
class ProofUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only Merkle tree over opaque payloads, held by the log operator.
/// Appends are serialized by a writer lock; reads run concurrently.
class MerkleLog {
 public:
  struct LoadReport {
    std::uint64_t entries_recovered = 0;
    bool truncated_tail = false;
    std::uint64_t truncated_at = 0;
    bool checkpoint_recovered = false;
  };

  MerkleLog(std::string origin, KeyPair operator_keys, Clock clock = wall_clock());

  // Movable so the factories below can return by value; the locks are not
  // carried over, a moved-from log is dead.
  MerkleLog(MerkleLog&& other) noexcept;
  MerkleLog& operator=(MerkleLog&&) = delete;
  MerkleLog(const MerkleLog&) = delete;
  MerkleLog& operator=(const MerkleLog&) = delete;

  /// Opens (or creates) a log stored under `dir`. A partial trailing record
  /// left by an interrupted append is dropped and reported; an interior
  /// record with an impossible length makes the open fail with the byte
  /// offset of the damage.
  static MerkleLog open(const std::filesystem::path& dir, std::string origin,
                        KeyPair operator_keys, Clock clock = wall_clock(),
                        LoadReport* report = nullptr);

  std::uint64_t append(Bytes payload);

  std::uint64_t size() const;
  Bytes payload(std::uint64_t index) const;
  std::vector<Bytes> entries(std::uint64_t start, std::uint64_t end) const;
  Hash32 root_at(std::uint64_t tree_size) const;

  Checkpoint latest_checkpoint() const;
  Checkpoint sign_checkpoint(std::uint64_t tree_size) const;

  InclusionProof prove_inclusion(std::uint64_t leaf_index, std::uint64_t tree_size) const;
  ConsistencyProof prove_consistency(std::uint64_t old_size, std::uint64_t new_size) const;

  /// In-memory copy of the first `n` entries under the same identity. The
  /// starting point for serving a forked view in adversarial setups.
  MerkleLog clone_prefix(std::uint64_t n) const;

  /// Flushes pending records and rewrites the checkpoint file.
  void persist();

  const std::string& origin() const { return origin_; }
  const PublicKey& operator_key() const { return keys_.public_key(); }
  const Clock& clock() const { return clock_; }

 private:
  void append_record_locked(const Bytes& payload);
  Checkpoint sign_checkpoint_locked(std::uint64_t tree_size) const;
  Hash32 root_locked(std::uint64_t tree_size) const;
  void write_checkpoint_file_locked();

  std::string origin_;
  KeyPair keys_;
  Clock clock_;

  mutable std::shared_mutex mu_;
  std::vector<Bytes> payloads_;
  std::vector<Hash32> leaf_hashes_;
  std::optional<Checkpoint> latest_;

  mutable std::mutex cache_mu_;
  mutable std::map<std::uint64_t, Hash32> root_cache_;

  std::optional<std::filesystem::path> dir_;
  std::ofstream out_;
};

/// Read access to somebody else's log. Implementations throw TransportError
/// when the log is unreachable and ProofUnavailableError when it refuses.
class LogView {
 public:
  virtual ~LogView() = default;
  virtual Checkpoint latest_checkpoint() = 0;
  virtual std::vector<Bytes> entries(std::uint64_t start, std::uint64_t end) = 0;
  virtual InclusionProof inclusion_proof(std::uint64_t leaf_index, std::uint64_t tree_size) = 0;
  virtual ConsistencyProof consistency_proof(std::uint64_t old_size, std::uint64_t new_size) = 0;
};

class LogClient : public LogView {
 public:
  virtual std::uint64_t append(Bytes payload) = 0;
};

/// Adapter exposing a local MerkleLog through the client interface, so actor
/// flows run identically against a local tree and a remote service.
class InProcessLogClient final : public LogClient {
 public:
  explicit InProcessLogClient(MerkleLog& log) : log_(&log) {}

  Checkpoint latest_checkpoint() override;
  std::vector<Bytes> entries(std::uint64_t start, std::uint64_t end) override;
  InclusionProof inclusion_proof(std::uint64_t leaf_index, std::uint64_t tree_size) override;
  ConsistencyProof consistency_proof(std::uint64_t old_size, std::uint64_t new_size) override;
  std::uint64_t append(Bytes payload) override;

 private:
  MerkleLog* log_;
};

}  // namespace cct
