// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "cct/actors.hpp"
#include "cct/monitor.hpp"

using namespace cct;

namespace {

constexpr std::int64_t kNow = 1755400000;
const Seed kOpSeed = {200};

MerkleLog make_log() {
  return MerkleLog("log.test", KeyPair::from_seed(kOpSeed), fixed_clock(kNow));
}

Monitor make_monitor(std::uint8_t seed_byte = 41) {
  const KeyPair keys = KeyPair::from_seed({seed_byte});
  return Monitor({"watcher-" + std::to_string(seed_byte), Role::monitor, keys.public_key()},
                 keys, KeyPair::from_seed(kOpSeed).public_key(), fixed_clock(kNow));
}

const KeyPair kOwnerKeys = KeyPair::from_seed({21});

Bytes endorsement_bytes(const std::string& claims) {
  Endorsement e;
  e.binary_hash = sha256(claims);
  e.claims = claims;
  e.issued_at = kNow;
  e.not_after = kNow + 100000;
  Statement s = e;
  sign_statement(s, kOwnerKeys);
  return canonical_encode(s);
}

bool has_kind(const PollResult& r, AlarmKind kind) {
  for (const auto& a : r.alarms)
    if (a.kind == kind) return true;
  return false;
}

}  // namespace

TEST_SUITE("monitor") {

TEST_CASE("honest appends verify and advance the watermark") {
  auto log = make_log();
  InProcessLogClient client(log);
  auto monitor = make_monitor();

  for (int batch = 0; batch < 5; ++batch) {
    log.append(endorsement_bytes("v" + std::to_string(batch)));
    const auto r = monitor.poll(client);
    CHECK(r.alarms.empty());
    CHECK(r.notices.empty());
    CHECK(r.verified_size == static_cast<std::uint64_t>(batch + 1));
  }
  REQUIRE(monitor.verified().has_value());
  CHECK(monitor.verified()->tree_size == 5);
}

TEST_CASE("a shrinking tree is an append-only violation") {
  auto log = make_log();
  for (int i = 0; i < 5; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  InProcessLogClient client(log);
  auto monitor = make_monitor();
  CHECK(monitor.poll(client).alarms.empty());

  auto shrunk = log.clone_prefix(3);
  InProcessLogClient short_client(shrunk);
  const auto r = monitor.poll(short_client);
  REQUIRE(has_kind(r, AlarmKind::append_only_violation));
  CHECK(r.alarms[0].detail.find("shrank") != std::string::npos);
  CHECK(monitor.verified()->tree_size == 5);  // state did not move
}

TEST_CASE("two different roots for the same size are an append-only violation") {
  auto log = make_log();
  auto other = make_log();
  for (int i = 0; i < 4; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  for (int i = 0; i < 4; ++i) other.append(endorsement_bytes("w" + std::to_string(i)));

  InProcessLogClient a(log), b(other);
  auto monitor = make_monitor();
  CHECK(monitor.poll(a).alarms.empty());
  const auto r = monitor.poll(b);
  REQUIRE(has_kind(r, AlarmKind::append_only_violation));
  CHECK(r.alarms[0].evidence.size() == 2);
}

TEST_CASE("history rewrites fail the consistency check when the tree also grew") {
  auto log = make_log();
  auto rewritten = make_log();
  for (int i = 0; i < 4; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  for (int i = 0; i < 4; ++i) rewritten.append(endorsement_bytes("w" + std::to_string(i)));
  for (int i = 4; i < 7; ++i) rewritten.append(endorsement_bytes("w" + std::to_string(i)));

  InProcessLogClient a(log), b(rewritten);
  auto monitor = make_monitor();
  CHECK(monitor.poll(a).alarms.empty());
  const auto r = monitor.poll(b);
  REQUIRE(has_kind(r, AlarmKind::append_only_violation));
  CHECK(r.alarms[0].detail.find("consistency") != std::string::npos);
  REQUIRE(r.alarms[0].failed_proof.has_value());
}

TEST_CASE("a checkpoint signed with the wrong key is flagged") {
  auto impostor = MerkleLog("log.test", KeyPair::from_seed({99}), fixed_clock(kNow));
  impostor.append(endorsement_bytes("v0"));
  InProcessLogClient client(impostor);
  auto monitor = make_monitor();  // expects the kOpSeed key
  const auto r = monitor.poll(client);
  CHECK(has_kind(r, AlarmKind::invalid_checkpoint));
}

TEST_CASE("entry payloads are vetted: garbage, non-canonical, structurally broken") {
  auto log = make_log();
  log.append(to_bytes("not a statement at all"));

  Bytes padded = endorsement_bytes("v0");
  padded.insert(padded.begin() + 1, ' ');  // still JSON, no longer canonical

  Endorsement unsigned_e;
  unsigned_e.binary_hash = sha256(std::string_view("v1"));
  unsigned_e.claims = "v1";
  unsigned_e.issued_at = kNow;
  unsigned_e.not_after = kNow + 1000;
  log.append(padded);
  log.append(canonical_encode(Statement(unsigned_e)));

  InProcessLogClient client(log);
  auto monitor = make_monitor();
  const auto r = monitor.poll(client);
  REQUIRE(r.alarms.size() == 3);
  CHECK(r.alarms[0].detail.find("does not decode") != std::string::npos);
  CHECK(r.alarms[1].detail.find("not canonically encoded") != std::string::npos);
  CHECK(r.alarms[2].detail.find("no signatures") != std::string::npos);
  for (const auto& a : r.alarms) CHECK(a.kind == AlarmKind::invalid_entry);
}

TEST_CASE("re-endorsing the same binary under the same claims is an anomaly") {
  auto log = make_log();
  const Bytes release = endorsement_bytes("v1.0");
  log.append(release);

  auto monitor = make_monitor();
  InProcessLogClient client(log);
  CHECK(monitor.poll(client).alarms.empty());

  log.append(release);  // watermark already past the first copy
  const auto r = monitor.poll(client);
  REQUIRE(has_kind(r, AlarmKind::release_anomaly));
  CHECK(r.alarms[0].detail.find("entries 0 and 1") != std::string::npos);

  // Same binary under new claims is a legitimate re-release.
  Endorsement e;
  e.binary_hash = sha256(std::string_view("v1.0"));
  e.claims = "v1.0 hotfix reissue";
  e.issued_at = kNow;
  e.not_after = kNow + 100000;
  Statement s = e;
  sign_statement(s, kOwnerKeys);
  auto fresh = make_log();
  fresh.append(release);
  fresh.append(canonical_encode(s));
  InProcessLogClient fresh_client(fresh);
  auto second = make_monitor(42);
  CHECK(second.poll(fresh_client).alarms.empty());
}

TEST_CASE("gossip catches a fork at matching sizes") {
  auto log = make_log();
  for (int i = 0; i < 5; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  auto fork = log.clone_prefix(4);
  fork.append(endorsement_bytes("evil"));

  InProcessLogClient main_view(log), fork_view(fork);
  std::vector<Monitor> monitors;
  monitors.push_back(make_monitor(41));
  monitors.push_back(make_monitor(42));
  CHECK(monitors[0].poll(main_view).alarms.empty());
  CHECK(monitors[1].poll(fork_view).alarms.empty());

  std::vector<LogView*> views = {&main_view, &fork_view};
  const auto round = gossip_round(monitors, views);
  REQUIRE(has_kind(round, AlarmKind::split_view));
  CHECK(round.alarms.size() == 2);  // each side accuses with both checkpoints
  for (const auto& a : round.alarms) {
    CHECK(a.evidence.size() == 2);
    CHECK(verify_alarm(a));
  }
}

TEST_CASE("gossip catches a fork across different sizes from the longer view") {
  auto log = make_log();
  for (int i = 0; i < 4; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  auto fork = log.clone_prefix(3);
  fork.append(endorsement_bytes("evil"));  // fork stops at size 4
  for (int i = 4; i < 8; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));

  InProcessLogClient main_view(log), fork_view(fork);
  std::vector<Monitor> monitors;
  monitors.push_back(make_monitor(41));
  monitors.push_back(make_monitor(42));
  monitors[0].poll(main_view);
  monitors[1].poll(fork_view);

  // The victim hears the longer honest checkpoint but its forked view
  // cannot serve the linking proof: a notice, not yet an alarm.
  auto victim_report = monitors[1].receive(*monitors[0].verified(), fork_view);
  CHECK(victim_report.alarms.empty());
  REQUIRE(victim_report.notices.size() == 1);
  CHECK(victim_report.notices[0].find("ahead") != std::string::npos);

  // The honest-side monitor fetches the proof, watches it fail to link the
  // victim's root, and raises the alarm.
  auto honest_report = monitors[0].receive(*monitors[1].verified(), main_view);
  REQUIRE(has_kind(honest_report, AlarmKind::split_view));
  REQUIRE(honest_report.alarms[0].failed_proof.has_value());
}

TEST_CASE("checkpoints gossiped for other logs or badly signed are ignored") {
  auto log = make_log();
  log.append(endorsement_bytes("v0"));
  InProcessLogClient view(log);
  auto monitor = make_monitor();
  monitor.poll(view);

  Checkpoint forged = *monitor.verified();
  forged.signature[0] ^= 1;
  auto r = monitor.receive(forged, view);
  CHECK(r.alarms.empty());
  REQUIRE(r.notices.size() == 1);
  CHECK(r.notices[0].find("badly signed") != std::string::npos);

  auto elsewhere = MerkleLog("log.other", KeyPair::from_seed(kOpSeed), fixed_clock(kNow));
  elsewhere.append(endorsement_bytes("v0"));
  r = monitor.receive(elsewhere.latest_checkpoint(), view);
  CHECK(r.alarms.empty());
  REQUIRE(r.notices.size() == 1);
  CHECK(r.notices[0].find("another origin") != std::string::npos);
}

TEST_CASE("monitors confirm real split-view evidence and reject fabricated accusations") {
  auto log = make_log();
  for (int i = 0; i < 5; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  auto fork = log.clone_prefix(4);
  fork.append(endorsement_bytes("evil"));

  InProcessLogClient main_view(log), fork_view(fork);
  std::vector<Monitor> monitors;
  for (std::uint8_t b : {41, 42, 43}) monitors.push_back(make_monitor(b));
  for (auto& m : monitors) m.poll(main_view);

  const auto round = [&] {
    auto victim = make_monitor(44);
    victim.poll(fork_view);
    return monitors[0].receive(*victim.verified(), main_view);
  }();
  REQUIRE(has_kind(round, AlarmKind::split_view));
  const MonitorAlarm& alarm = round.alarms[0];

  std::vector<LogView*> views = {&main_view, &main_view, &main_view};
  for (std::size_t i = 0; i < monitors.size(); ++i)
    CHECK(monitors[i].confirm(alarm, *views[i]));

  const auto list = collective_revocation(monitors, views, alarm, 2, kNow + 60);
  REQUIRE(list.has_value());
  CHECK(list->distrust_origin == "log.test");
  CHECK(list->signatures.size() == 3);
  CHECK(statement_problems(Statement(*list)).empty());
  for (const auto& st : verify_statement_signatures(Statement(*list))) CHECK(st.valid);

  CHECK_FALSE(collective_revocation(monitors, views, alarm, 4, kNow + 60).has_value());

  // An accusation over two honestly linked checkpoints does not confirm.
  MonitorAlarm honest_pair;
  honest_pair.kind = AlarmKind::split_view;
  honest_pair.origin = "log.test";
  honest_pair.detail = "fabricated";
  honest_pair.raised_at = kNow;
  honest_pair.monitor = monitors[0].identity();
  honest_pair.evidence = {log.sign_checkpoint(3), log.sign_checkpoint(5)};
  CHECK_FALSE(collective_revocation(monitors, views, honest_pair, 1, kNow).has_value());
}

TEST_CASE("alarm signatures bind the accusation contents") {
  auto log = make_log();
  for (int i = 0; i < 3; ++i) log.append(endorsement_bytes("v" + std::to_string(i)));
  InProcessLogClient view(log);
  auto monitor = make_monitor();
  monitor.poll(view);

  auto shrunk = log.clone_prefix(2);
  InProcessLogClient short_view(shrunk);
  auto r = monitor.poll(short_view);
  REQUIRE_FALSE(r.alarms.empty());
  MonitorAlarm alarm = r.alarms[0];
  CHECK(verify_alarm(alarm));
  CHECK(alarm_to_json(alarm).find("append_only_violation") != std::string::npos);

  alarm.detail += " (edited)";
  CHECK_FALSE(verify_alarm(alarm));
}

TEST_CASE("a hundred gossip rounds over one honest log raise nothing") {
  auto log = make_log();
  InProcessLogClient shared(log);
  std::vector<Monitor> monitors;
  for (std::uint8_t b : {41, 42, 43}) monitors.push_back(make_monitor(b));
  std::vector<LogView*> views = {&shared, &shared, &shared};

  std::size_t alarms = 0;
  for (int round = 0; round < 100; ++round) {
    if (round % 7 == 0) log.append(endorsement_bytes("r" + std::to_string(round)));
    for (auto& m : monitors) alarms += m.poll(shared).alarms.size();
    alarms += gossip_round(monitors, views).alarms.size();
  }
  CHECK(alarms == 0);
  for (auto& m : monitors) CHECK(m.verified()->tree_size == log.size());
}

TEST_CASE("an unreachable log yields a notice and no state change") {
  struct DownView : LogView {
    Checkpoint latest_checkpoint() override { throw TransportError("down"); }
    std::vector<Bytes> entries(std::uint64_t, std::uint64_t) override {
      throw TransportError("down");
    }
    InclusionProof inclusion_proof(std::uint64_t, std::uint64_t) override {
      throw TransportError("down");
    }
    ConsistencyProof consistency_proof(std::uint64_t, std::uint64_t) override {
      throw TransportError("down");
    }
  } down;
  auto monitor = make_monitor();
  const auto r = monitor.poll(down);
  CHECK(r.alarms.empty());
  REQUIRE(r.notices.size() == 1);
  CHECK(r.notices[0].find("unreachable") != std::string::npos);
  CHECK_FALSE(monitor.verified().has_value());
}

}  // TEST_SUITE
