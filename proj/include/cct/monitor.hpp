// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cct/log.hpp"
#include "cct/statements.hpp"

namespace cct {

enum class AlarmKind {
  split_view,
  append_only_violation,
  invalid_checkpoint,
  invalid_entry,
  release_anomaly,
};

std::string_view alarm_kind_name(AlarmKind kind);

/// A signed accusation. The evidence checkpoints are the log's own signed
/// statements; for consistency failures the proof the log served (and which
/// does not verify) rides along so other monitors can re-check.
struct MonitorAlarm {
  AlarmKind kind = AlarmKind::invalid_checkpoint;
  std::string origin;
  std::string detail;
  std::int64_t raised_at = 0;
  Identity monitor;
  std::vector<Checkpoint> evidence;
  std::optional<ConsistencyProof> failed_proof;
  Signature signature{};
};

std::string alarm_to_json(const MonitorAlarm& alarm);
bool verify_alarm(const MonitorAlarm& alarm);

/// What one interaction with the log (or one gossiped checkpoint) produced.
/// Notices are observations that do not prove misbehavior: unreachable log,
/// refused proofs, a peer ahead of our visible prefix.
struct PollResult {
  std::vector<MonitorAlarm> alarms;
  std::vector<std::string> notices;
  std::uint64_t verified_size = 0;
};

/// Watches one log: verifies every checkpoint transition, proves every new
/// entry into the tree, sanity-checks entry payloads, and cross-checks
/// checkpoints gossiped by other monitors. State only advances over
/// alarm-free observations.
class Monitor {
 public:
  Monitor(Identity identity, KeyPair keys, PublicKey log_key, Clock clock = wall_clock());

  /// Full check of the log's current state against everything verified so
  /// far.
  PollResult poll(LogView& log);

  /// Cross-checks a checkpoint heard from another monitor against our own
  /// verified view, fetching a linking proof from the log when sizes
  /// differ.
  PollResult receive(const Checkpoint& peer, LogView& own_view);

  /// Independent re-verification of somebody else's alarm using our own
  /// view of the log. Only split-view and append-only accusations can be
  /// confirmed from evidence.
  bool confirm(const MonitorAlarm& alarm, LogView& own_view) const;

  std::optional<Checkpoint> verified() const { return verified_; }
  std::uint64_t verified_size() const { return verified_size_; }
  const Identity& identity() const { return identity_; }
  const KeyPair& keys() const { return keys_; }

 private:
  MonitorAlarm make_alarm(AlarmKind kind, std::string detail, std::vector<Checkpoint> evidence,
                          std::optional<ConsistencyProof> failed_proof = std::nullopt) const;

  Identity identity_;
  KeyPair keys_;
  PublicKey log_key_{};
  Clock clock_;

  std::string origin_;  // adopted from the first verified checkpoint
  std::optional<Checkpoint> verified_;
  std::uint64_t verified_size_ = 0;
  // (binary hash, claims) of every endorsement seen, to its first index.
  std::map<std::pair<Hash32, std::string>, std::uint64_t> seen_releases_;
};

/// One round of full-mesh gossip: every monitor's verified checkpoint is
/// offered to every other monitor, which checks it against its own view
/// (views[i] belongs to monitors[i]).
PollResult gossip_round(std::span<Monitor> monitors, std::span<LogView* const> views);

/// Monitors vote on an alarm by independently re-verifying its evidence.
/// With at least `threshold` confirmations the confirming monitors countersign
/// a revocation list distrusting the log origin; otherwise nullopt.
std::optional<RevocationList> collective_revocation(std::span<Monitor> monitors,
                                                    std::span<LogView* const> views,
                                                    const MonitorAlarm& alarm,
                                                    std::size_t threshold, std::int64_t now);

}  // namespace cct
