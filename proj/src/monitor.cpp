// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/monitor.hpp"

#include <json.hpp>

#include "cct/bytes.hpp"

namespace cct {

namespace {

using nlohmann::json;

json checkpoint_json(const Checkpoint& cp) { return json::parse(checkpoint_to_json(cp)); }

Bytes alarm_signing_body(const MonitorAlarm& alarm) {
  json evidence = json::array();
  for (const auto& cp : alarm.evidence) evidence.push_back(checkpoint_json(cp));
  json j;
  j["detail"] = alarm.detail;
  j["evidence"] = evidence;
  if (alarm.failed_proof)
    j["failed_proof"] = json::parse(consistency_proof_to_json(*alarm.failed_proof));
  j["kind"] = std::string(alarm_kind_name(alarm.kind));
  j["monitor"] = json::parse(identity_to_json(alarm.monitor));
  j["origin"] = alarm.origin;
  j["raised_at"] = alarm.raised_at;
  return to_bytes(j.dump());
}

}  // namespace

std::string_view alarm_kind_name(AlarmKind kind) {
  switch (kind) {
    case AlarmKind::split_view: return "split_view";
    case AlarmKind::append_only_violation: return "append_only_violation";
    case AlarmKind::invalid_checkpoint: return "invalid_checkpoint";
    case AlarmKind::invalid_entry: return "invalid_entry";
    case AlarmKind::release_anomaly: return "release_anomaly";
  }
  return "invalid_checkpoint";
}

std::string alarm_to_json(const MonitorAlarm& alarm) {
  json j = json::parse(to_string(alarm_signing_body(alarm)));
  j["signature"] = base64_encode(alarm.signature);
  return j.dump(2);
}

bool verify_alarm(const MonitorAlarm& alarm) {
  return verify_signature(alarm.monitor.public_key, alarm_signing_body(alarm), alarm.signature);
}

Monitor::Monitor(Identity identity, KeyPair keys, PublicKey log_key, Clock clock)
    : identity_(std::move(identity)),
      keys_(std::move(keys)),
      log_key_(log_key),
      clock_(std::move(clock)) {}

MonitorAlarm Monitor::make_alarm(AlarmKind kind, std::string detail,
                                 std::vector<Checkpoint> evidence,
                                 std::optional<ConsistencyProof> failed_proof) const {
  MonitorAlarm alarm;
  alarm.kind = kind;
  alarm.origin = origin_;
  alarm.detail = std::move(detail);
  alarm.raised_at = clock_();
  alarm.monitor = identity_;
  alarm.evidence = std::move(evidence);
  alarm.failed_proof = std::move(failed_proof);
  alarm.signature = keys_.sign(alarm_signing_body(alarm));
  return alarm;
}

PollResult Monitor::poll(LogView& log) {
  PollResult r;
  r.verified_size = verified_size_;

  Checkpoint cp;
  try {
    cp = log.latest_checkpoint();
  } catch (const TransportError& e) {
    r.notices.push_back(std::string("log unreachable: ") + e.what());
    return r;
  }

  if (!verify_checkpoint(cp, log_key_)) {
    if (origin_.empty()) origin_ = cp.origin;
    r.alarms.push_back(make_alarm(AlarmKind::invalid_checkpoint,
                                  "checkpoint signature does not verify", {cp}));
    return r;
  }
  if (origin_.empty()) origin_ = cp.origin;
  if (cp.origin != origin_) {
    r.alarms.push_back(make_alarm(AlarmKind::invalid_checkpoint,
                                  "origin changed from " + origin_ + " to " + cp.origin, {cp}));
    return r;
  }

  try {
    if (verified_) {
      if (cp.tree_size < verified_->tree_size) {
        r.alarms.push_back(make_alarm(
            AlarmKind::append_only_violation,
            "tree shrank from " + std::to_string(verified_->tree_size) + " to " +
                std::to_string(cp.tree_size),
            {*verified_, cp}));
        return r;
      }
      if (cp.tree_size == verified_->tree_size) {
        if (cp.root_hash != verified_->root_hash) {
          r.alarms.push_back(make_alarm(
              AlarmKind::append_only_violation,
              "two roots for size " + std::to_string(cp.tree_size), {*verified_, cp}));
        }
        return r;  // nothing new to verify either way
      }
      ConsistencyProof proof;
      try {
        proof = log.consistency_proof(verified_->tree_size, cp.tree_size);
      } catch (const ProofUnavailableError& e) {
        r.notices.push_back(std::string("log refused a consistency proof: ") + e.what());
        return r;
      }
      if (!verify_consistency_against(*verified_, cp, proof)) {
        r.alarms.push_back(make_alarm(
            AlarmKind::append_only_violation,
            "consistency proof from " + std::to_string(verified_->tree_size) + " to " +
                std::to_string(cp.tree_size) + " does not verify",
            {*verified_, cp}, proof));
        return r;
      }
    }

    std::vector<Bytes> fresh;
    try {
      fresh = log.entries(verified_size_, cp.tree_size);
    } catch (const ProofUnavailableError& e) {
      r.notices.push_back(std::string("log refused to serve new entries: ") + e.what());
      return r;
    }
    if (fresh.size() != cp.tree_size - verified_size_) {
      r.alarms.push_back(make_alarm(
          AlarmKind::invalid_entry,
          "log served " + std::to_string(fresh.size()) + " entries where " +
              std::to_string(cp.tree_size - verified_size_) + " were announced",
          {cp}));
      return r;
    }

    auto pending_releases = seen_releases_;
    for (std::uint64_t k = 0; k < fresh.size(); ++k) {
      const std::uint64_t index = verified_size_ + k;
      bool included = false;
      try {
        const auto proof = log.inclusion_proof(index, cp.tree_size);
        included = verify_inclusion_against(cp, proof, fresh[k]);
      } catch (const ProofUnavailableError&) {
      }
      if (!included) {
        r.alarms.push_back(make_alarm(AlarmKind::invalid_entry,
                                      "entry " + std::to_string(index) +
                                          " is not provably included in the announced tree",
                                      {cp}));
        continue;
      }

      Statement s;
      try {
        s = decode_statement(fresh[k]);
      } catch (const DecodeError& e) {
        r.alarms.push_back(make_alarm(
            AlarmKind::invalid_entry,
            "entry " + std::to_string(index) + " does not decode: " + e.what(), {cp}));
        continue;
      }
      if (canonical_encode(s) != fresh[k]) {
        r.alarms.push_back(make_alarm(
            AlarmKind::invalid_entry,
            "entry " + std::to_string(index) + " is not canonically encoded", {cp}));
        continue;
      }
      const auto problems = statement_problems(s);
      if (!problems.empty()) {
        r.alarms.push_back(make_alarm(AlarmKind::invalid_entry,
                                      "entry " + std::to_string(index) + ": " + problems.front(),
                                      {cp}));
        continue;
      }
      if (const auto* e = std::get_if<Endorsement>(&s)) {
        const auto key = std::make_pair(e->binary_hash, e->claims);
        const auto [it, fresh_release] = pending_releases.emplace(key, index);
        if (!fresh_release && it->second != index) {
          r.alarms.push_back(make_alarm(
              AlarmKind::release_anomaly,
              "entries " + std::to_string(it->second) + " and " + std::to_string(index) +
                  " both endorse the same binary under the claims \"" + e->claims + "\"",
              {cp}));
        }
      }
    }

    if (r.alarms.empty()) {
      verified_ = cp;
      verified_size_ = cp.tree_size;
      seen_releases_ = std::move(pending_releases);
      r.verified_size = verified_size_;
    }
  } catch (const TransportError& e) {
    r.notices.push_back(std::string("log went unreachable mid-poll: ") + e.what());
  }
  return r;
}

PollResult Monitor::receive(const Checkpoint& peer, LogView& own_view) {
  PollResult r;
  r.verified_size = verified_size_;

  if (!verify_checkpoint(peer, log_key_)) {
    r.notices.push_back("gossiped checkpoint is badly signed; discarded");
    return r;
  }
  if (!verified_) {
    r.notices.push_back("no verified local view yet; gossip ignored");
    return r;
  }
  if (peer.origin != verified_->origin) {
    r.notices.push_back("gossiped checkpoint names another origin (" + peer.origin + ")");
    return r;
  }

  if (peer.tree_size == verified_->tree_size) {
    if (peer.root_hash != verified_->root_hash) {
      r.alarms.push_back(make_alarm(
          AlarmKind::split_view,
          "two signed roots for size " + std::to_string(peer.tree_size), {*verified_, peer}));
    }
    return r;
  }

  const bool peer_behind = peer.tree_size < verified_->tree_size;
  const Checkpoint& older = peer_behind ? peer : *verified_;
  const Checkpoint& newer = peer_behind ? *verified_ : peer;
  try {
    const auto proof = own_view.consistency_proof(older.tree_size, newer.tree_size);
    if (!verify_consistency_against(older, newer, proof)) {
      r.alarms.push_back(make_alarm(
          AlarmKind::split_view,
          "gossiped checkpoint for size " + std::to_string(peer.tree_size) +
              " does not link to the verified view at size " +
              std::to_string(verified_->tree_size),
          {*verified_, peer}, proof));
    }
  } catch (const ProofUnavailableError&) {
    // Could be a withheld fork, could be ordinary lag; record and let the
    // next rounds settle it. The monitor holding the longer view gets the
    // proof and catches a genuine fork.
    r.notices.push_back(peer_behind
                            ? "log refused to link an older gossiped checkpoint"
                            : "gossiped checkpoint is ahead of the locally visible view");
  } catch (const TransportError& e) {
    r.notices.push_back(std::string("log unreachable during gossip check: ") + e.what());
  }
  return r;
}

bool Monitor::confirm(const MonitorAlarm& alarm, LogView& own_view) const {
  if (alarm.kind != AlarmKind::split_view && alarm.kind != AlarmKind::append_only_violation)
    return false;
  if (!verify_alarm(alarm)) return false;
  if (alarm.evidence.size() != 2) return false;
  const Checkpoint& a = alarm.evidence[0];
  const Checkpoint& b = alarm.evidence[1];
  if (!verify_checkpoint(a, log_key_) || !verify_checkpoint(b, log_key_)) return false;
  if (a.origin != b.origin || a.origin != alarm.origin) return false;

  if (a.tree_size == b.tree_size) return a.root_hash != b.root_hash;

  // Different sizes: ask our own copy of the log to link the two
  // checkpoints. A verifying proof clears the accusation.
  const Checkpoint& older = a.tree_size < b.tree_size ? a : b;
  const Checkpoint& newer = a.tree_size < b.tree_size ? b : a;
  try {
    const auto proof = own_view.consistency_proof(older.tree_size, newer.tree_size);
    return !verify_consistency_against(older, newer, proof);
  } catch (const ProofUnavailableError&) {
    return true;  // the log signed both sizes yet refuses to connect them
  } catch (const TransportError&) {
    return false;  // unreachable is not evidence
  }
}

PollResult gossip_round(std::span<Monitor> monitors, std::span<LogView* const> views) {
  PollResult round;
  for (std::size_t from = 0; from < monitors.size(); ++from) {
    const auto cp = monitors[from].verified();
    if (!cp) continue;
    for (std::size_t to = 0; to < monitors.size(); ++to) {
      if (to == from) continue;
      auto r = monitors[to].receive(*cp, *views[to]);
      round.alarms.insert(round.alarms.end(), std::make_move_iterator(r.alarms.begin()),
                          std::make_move_iterator(r.alarms.end()));
      round.notices.insert(round.notices.end(), std::make_move_iterator(r.notices.begin()),
                           std::make_move_iterator(r.notices.end()));
    }
  }
  return round;
}

std::optional<RevocationList> collective_revocation(std::span<Monitor> monitors,
                                                    std::span<LogView* const> views,
                                                    const MonitorAlarm& alarm,
                                                    std::size_t threshold, std::int64_t now) {
  std::vector<std::size_t> confirmers;
  for (std::size_t i = 0; i < monitors.size(); ++i) {
    if (monitors[i].confirm(alarm, *views[i])) confirmers.push_back(i);
  }
  if (confirmers.size() < threshold) return std::nullopt;

  RevocationList rl;
  rl.issuer = monitors[confirmers.front()].identity();
  rl.issued_at = now;
  rl.distrust_origin = alarm.origin;
  Statement s = rl;
  for (const auto i : confirmers) sign_statement(s, monitors[i].keys());
  return std::get<RevocationList>(s);
}

}  // namespace cct
