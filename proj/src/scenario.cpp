// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/scenario.hpp"

#include <json.hpp>

#include "cct/actors.hpp"
#include "cct/auditor.hpp"
#include "cct/logservice.hpp"
#include "cct/monitor.hpp"

namespace cct {

namespace {

Seed derive_seed(std::uint64_t seed, std::uint8_t salt) {
  Seed s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  s[8] = salt;
  return s;
}

std::string verdict_summary(const AuditVerdict& v) {
  std::string out = v.inconclusive ? "inconclusive" : (v.accepted ? "accepted" : "rejected");
  out += " at ";
  out += level_name(v.achieved_level);
  if (!v.reasons.empty()) {
    out += " (";
    for (std::size_t i = 0; i < v.reasons.size(); ++i) {
      if (i) out += "; ";
      out += v.reasons[i];
    }
    out += ")";
  }
  return out;
}

class Recorder {
 public:
  explicit Recorder(std::string name) {
    result_.name = std::move(name);
    result_.ok = true;
  }

  void step(std::string description, bool ok, std::string expected, std::string observed) {
    result_.ok = result_.ok && ok;
    result_.steps.push_back({std::move(description), ok, std::move(expected),
                             std::move(observed)});
  }

  void verdict(std::string description, const AuditVerdict& v, bool want_accepted,
               std::string_view needle = "") {
    bool ok = v.accepted == want_accepted && !v.inconclusive;
    if (!needle.empty()) {
      bool found = false;
      for (const auto& reason : v.reasons)
        if (reason.find(needle) != std::string::npos) found = true;
      ok = ok && found;
    }
    std::string expected = want_accepted ? "accepted" : "rejected";
    if (!needle.empty()) expected += " with \"" + std::string(needle) + "\"";
    step(std::move(description), ok, std::move(expected), verdict_summary(v));
  }

  ScenarioResult take() { return std::move(result_); }

 private:
  ScenarioResult result_;
};

const BuildConfig kBuild = {"cc-14.2", {"cc -c main.c", "cc -o app main.o"}, {"-O2", "--frozen"}};

SourcePackage clean_source() {
  return SourcePackage::make(to_bytes("int main() { return 0; }\n"), true);
}

SourcePackage patched_source() {
  return SourcePackage::make(to_bytes("int main() { return 0; } /* input checked */\n"), true);
}

SourcePackage buggy_source() {
  return SourcePackage::make(to_bytes("int main() { run(untrusted); return 0; }\n"), true,
                             std::string("cve-2026-0001"));
}

ReleaseParams release_at(std::int64_t now) {
  ReleaseParams p;
  p.now = now;
  return p;
}

// Every scenario draws from the same cast, all keys derived from the run
// seed, and talks to a real HTTP service on a loopback port.
struct Stage {
  std::int64_t now;
  KeyPair owner_keys;
  KeyPair third_keys;
  KeyPair community_keys;
  KeyPair alert_keys;
  std::vector<KeyPair> monitor_keys;
  LogService service;

  Stage(ServiceConfig config, std::int64_t now_in, std::uint64_t seed)
      : now(now_in),
        owner_keys(KeyPair::from_seed(derive_seed(seed, 1))),
        third_keys(KeyPair::from_seed(derive_seed(seed, 2))),
        community_keys(KeyPair::from_seed(derive_seed(seed, 3))),
        alert_keys(KeyPair::from_seed(derive_seed(seed, 4))),
        monitor_keys({KeyPair::from_seed(derive_seed(seed, 5)),
                      KeyPair::from_seed(derive_seed(seed, 6)),
                      KeyPair::from_seed(derive_seed(seed, 7))}),
        service(std::move(config), KeyPair::from_seed(derive_seed(seed, 0)), fixed_clock(now_in)) {
    service.start();
  }

  HttpLogClient client(std::string id = "") { return HttpLogClient(service.base_url(), id); }

  CodeOwner owner() const {
    return {{"acme", Role::code_owner, owner_keys.public_key()}, owner_keys};
  }
  Certifier third_party() const {
    return {CertifierProfile::make("auditco", third_keys.public_key(),
                                   CertifierCategory::third_party, Methodology::reporting,
                                   Motivation::independent),
            third_keys,
            {}};
  }
  Certifier community() const {
    return {CertifierProfile::make("source-coop", community_keys.public_key(),
                                   CertifierCategory::community, Methodology::reporting,
                                   Motivation::independent),
            community_keys,
            {}};
  }
  Certifier alerter(std::vector<std::string> detects) const {
    return {CertifierProfile::make("redteam", alert_keys.public_key(),
                                   CertifierCategory::third_party, Methodology::alerting,
                                   Motivation::independent),
            alert_keys, std::move(detects)};
  }
  Monitor monitor(std::size_t i) const {
    return Monitor({"watcher-" + std::to_string(i), Role::monitor,
                    monitor_keys[i].public_key()},
                   monitor_keys[i], service.operator_key(), fixed_clock(now));
  }

  AuditPolicy policy(Level required) const {
    AuditPolicy p;
    p.trusted_log_key = service.operator_key();
    p.trusted_first_party_keys = {owner_keys.public_key()};
    p.trusted_third_party_keys = {third_keys.public_key(), alert_keys.public_key()};
    p.trusted_community_keys = {community_keys.public_key()};
    for (const auto& mk : monitor_keys) p.trusted_monitor_keys.push_back(mk.public_key());
    p.required_level = required;
    p.now = now;
    return p;
  }
};

ScenarioResult honest_l1(std::int64_t now, std::uint64_t seed) {
  Recorder rec("honest-l1");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  const auto release =
      release_l1(stage.owner(), {}, clean_source(), kBuild, client, release_at(now));
  rec.step("endorsement lands as the first log entry", release.leaf_index == 0, "index 0",
           "index " + std::to_string(release.leaf_index));

  auto policy = stage.policy(Level::L1);
  policy.now = now + 10;
  const auto v = audit(client, release.build.binary_hash, policy);
  rec.verdict("auditor accepts the released binary", v, true);
  rec.step("achieved level is L1", v.achieved_level == Level::L1, "L1",
           std::string(level_name(v.achieved_level)));

  auto watcher = stage.monitor(0);
  const auto report = watcher.poll(client);
  rec.step("monitor verifies checkpoint and entry without alarms",
           report.alarms.empty() && report.verified_size == 1, "0 alarms, watermark 1",
           std::to_string(report.alarms.size()) + " alarms, watermark " +
               std::to_string(report.verified_size));
  return rec.take();
}

ScenarioResult honest_l2(std::int64_t now, std::uint64_t seed) {
  Recorder rec("honest-l2");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  const auto release =
      release_l1(stage.owner(), {}, clean_source(), kBuild, client, release_at(now));
  const auto cert =
      review_and_certify(stage.third_party(), clean_source(), release.build.provenance, client,
                         now + 5);
  rec.step("third-party reviewer reproduces the build and logs a certificate",
           cert.has_value() && cert->leaf_index == 1, "certificate at index 1",
           cert ? "certificate at index " + std::to_string(cert->leaf_index) : "no certificate");

  auto policy = stage.policy(Level::L2);
  policy.now = now + 10;
  const auto v = audit(client, release.build.binary_hash, policy);
  rec.verdict("auditor accepts at the stricter L2 requirement", v, true);
  rec.step("achieved level is L2", v.achieved_level == Level::L2, "L2",
           std::string(level_name(v.achieved_level)));
  return rec.take();
}

ScenarioResult honest_l3(std::int64_t now, std::uint64_t seed) {
  Recorder rec("honest-l3");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  const auto release =
      release_l1(stage.owner(), {}, clean_source(), kBuild, client, release_at(now));
  review_and_certify(stage.third_party(), clean_source(), release.build.provenance, client,
                     now + 5);
  const auto community_cert = review_and_certify(stage.community(), clean_source(),
                                                 release.build.provenance, client, now + 6);
  rec.step("community reviewer certifies the open source", community_cert.has_value(),
           "certificate issued", community_cert ? "certificate issued" : "refused");

  auto policy = stage.policy(Level::L3);
  policy.now = now + 10;
  const auto v = audit(client, release.build.binary_hash, policy);
  rec.verdict("auditor accepts at L3", v, true);
  rec.step("achieved level is L3", v.achieved_level == Level::L3, "L3",
           std::string(level_name(v.achieved_level)));

  // The same flow against a closed source must stop at the community gate.
  const auto closed = SourcePackage::make(to_bytes("int main() { return 7; }\n"), false);
  const auto closed_release =
      release_l1(stage.owner(), {}, closed, kBuild, client, release_at(now));
  std::string refusal = "community certificate was issued";
  try {
    review_and_certify(stage.community(), closed, closed_release.build.provenance, client,
                       now + 7);
  } catch (const CertificationError& e) {
    refusal = e.what();
  }
  rec.step("community review refuses a source that is not published",
           refusal.find("published source") != std::string::npos, "refusal naming the source",
           refusal);
  return rec.take();
}

ScenarioResult expired_endorsement(std::int64_t now, std::uint64_t seed) {
  Recorder rec("expired-endorsement");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  ReleaseParams params = release_at(now);
  params.validity_secs = 1000;
  const auto release = release_l1(stage.owner(), {}, clean_source(), kBuild, client, params);

  auto policy = stage.policy(Level::L1);
  policy.now = now + 999;
  rec.verdict("inside the validity window the binary is accepted",
              audit(client, release.build.binary_hash, policy), true);

  policy.now = now + 1000;
  rec.verdict("at expiry the endorsement is passively revoked",
              audit(client, release.build.binary_hash, policy), false, "passively revoked");

  policy.now = now - 1;
  rec.verdict("before issuance the endorsement is not yet valid",
              audit(client, release.build.binary_hash, policy), false, "not yet valid");
  return rec.take();
}

ScenarioResult active_crl_revocation(std::int64_t now, std::uint64_t seed) {
  Recorder rec("active-crl-revocation");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  const auto release =
      release_l1(stage.owner(), {}, clean_source(), kBuild, client, release_at(now));
  auto policy = stage.policy(Level::L1);
  policy.now = now + 10;
  rec.verdict("binary is accepted until the owner revokes",
              audit(client, release.build.binary_hash, policy), true);

  RevocationList rl;
  rl.issuer = stage.owner().identity;
  rl.issued_at = now + 20;
  rl.revoked_ids = {release.endorsement_id};
  Statement s = rl;
  sign_statement(s, stage.owner_keys);
  const auto index = client.append(canonical_encode(s));
  rec.step("revocation list is itself a logged statement", index == 1, "index 1",
           "index " + std::to_string(index));

  policy.now = now + 30;
  rec.verdict("after revocation the same binary is rejected",
              audit(client, release.build.binary_hash, policy), false, "actively revoked");

  auto watcher = stage.monitor(0);
  const auto report = watcher.poll(client);
  rec.step("monitor accepts the revocation entry as well formed", report.alarms.empty(),
           "0 alarms", std::to_string(report.alarms.size()) + " alarms");
  return rec.take();
}

ScenarioResult broken_promise(std::int64_t now, std::uint64_t seed) {
  Recorder rec("broken-promise");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  ReleaseParams params = release_at(now);
  params.to_be_certified_by = now + 500;
  const auto release = release_l1(stage.owner(), {}, clean_source(), kBuild, client, params);

  auto policy = stage.policy(Level::L2);
  policy.now = now + 100;
  const auto pending = audit(client, release.build.binary_hash, policy);
  rec.verdict("a dated promise counts provisionally toward L2", pending, true);
  rec.step("provisional level is L2", pending.achieved_level == Level::L2, "L2",
           std::string(level_name(pending.achieved_level)));

  policy.now = now + 501;
  rec.verdict("past the deadline with no certificate the promise is broken",
              audit(client, release.build.binary_hash, policy), false,
              "broken certification promise");

  review_and_certify(stage.third_party(), clean_source(), release.build.provenance, client,
                     now + 502);
  policy.now = now + 510;
  const auto repaired = audit(client, release.build.binary_hash, policy);
  rec.verdict("a late certificate still repairs the promise", repaired, true);
  rec.step("level after repair is L2", repaired.achieved_level == Level::L2, "L2",
           std::string(level_name(repaired.achieved_level)));
  return rec.take();
}

ScenarioResult post_release_vuln(std::int64_t now, std::uint64_t seed) {
  Recorder rec("post-release-vuln");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  const auto v1 = release_l1(stage.owner(), {}, buggy_source(), kBuild, client, release_at(now));
  auto policy = stage.policy(Level::L1);
  policy.now = now + 10;
  rec.verdict("v1 is accepted before anyone looks closely",
              audit(client, v1.build.binary_hash, policy), true);

  const auto alert = review_and_certify(stage.alerter({"cve-2026-0001"}), buggy_source(),
                                        v1.build.provenance, client, now + 20);
  rec.step("alerting reviewer finds the defect and logs an alert", alert.has_value(),
           "alert logged", alert ? "alert logged" : "reviewer stayed silent");

  policy.now = now + 30;
  rec.verdict("the alert blocks v1", audit(client, v1.build.binary_hash, policy), false,
              "unresolved alerting certificate");

  const auto v2 =
      release_l1(stage.owner(), {}, patched_source(), kBuild, client, release_at(now + 40));
  issue_followup(stage.third_party(), alert->certificate_id, v2.build.binary_hash,
                 v2.build.provenance.source_hash, "defect fixed in this build", client, now + 50);

  policy.now = now + 60;
  rec.verdict("the patched v2 is accepted", audit(client, v2.build.binary_hash, policy), true);
  rec.verdict("v1 stays blocked: the follow-up vouches only for v2",
              audit(client, v1.build.binary_hash, policy), false,
              "unresolved alerting certificate");
  return rec.take();
}

ScenarioResult trusted_builder_flow(std::int64_t now, std::uint64_t seed) {
  Recorder rec("trusted-builder-flow");
  Stage stage({}, now, seed);
  auto client = stage.client("releaser");

  std::vector<TrustedBuilder> builders;
  std::vector<PublicKey> builder_keys;
  for (std::uint8_t i = 0; i < 3; ++i) {
    const KeyPair keys = KeyPair::from_seed(derive_seed(seed, 10 + i));
    builders.push_back({{"builder-" + std::to_string(i), Role::builder, keys.public_key()},
                        keys,
                        false});
    builder_keys.push_back(keys.public_key());
  }

  const auto outcome =
      trusted_build_release(stage.owner(), builders, clean_source(), kBuild, client,
                            release_at(now));
  rec.step("all three provenances precede the endorsement",
           outcome.provenance_indices == std::vector<std::uint64_t>{0, 1, 2} &&
               outcome.release.leaf_index == 3,
           "provenances at 0,1,2 then endorsement at 3",
           "endorsement at index " + std::to_string(outcome.release.leaf_index));

  const auto linkage = verify_linkage(client, outcome.release.build.binary_hash, builder_keys);
  rec.step("endorsement links to a logged provenance by a trusted builder", linkage.ok,
           "linkage verified",
           linkage.ok ? "linkage verified" : (linkage.notes.empty() ? "?" : linkage.notes[0]));

  auto policy = stage.policy(Level::L1);
  policy.now = now + 10;
  rec.verdict("auditor accepts the reproducibly built binary",
              audit(client, outcome.release.build.binary_hash, policy), true);

  // One compromised builder: the outputs disagree, the owner walks away,
  // and the attempt stays on the record.
  builders[2].dishonest = true;
  const auto before = client.latest_checkpoint().tree_size;
  std::string refusal = "release went through";
  try {
    trusted_build_release(stage.owner(), builders, patched_source(), kBuild, client,
                          release_at(now + 20));
  } catch (const TrustedBuildError& e) {
    refusal = e.what();
  }
  rec.step("disagreeing builders abort the release",
           refusal.find("disagree") != std::string::npos, "abort naming the disagreement",
           refusal);

  const auto after = client.latest_checkpoint().tree_size;
  rec.step("the abandoned attempt still logged its provenances", after == before + 3,
           "3 new provenance entries", std::to_string(after - before) + " new entries");

  const auto tampered = builders[2].build(patched_source(), kBuild);
  rec.verdict("nothing endorses the tampered output",
              audit(client, tampered.binary_hash, stage.policy(Level::L1)), false,
              "no endorsement");
  return rec.take();
}

ScenarioResult split_view_attack(std::int64_t now, std::uint64_t seed) {
  Recorder rec("split-view-attack");
  ServiceConfig config;
  config.mode = ServiceMode::split_view;
  config.fork_at = 2;
  config.victim_clients = {"victim-1"};
  Stage stage(std::move(config), now, seed);

  auto releaser = stage.client("releaser");
  auto victim_view = stage.client("victim-1");

  const auto v1 = release_l1(stage.owner(), {}, buggy_source(), kBuild, releaser,
                             release_at(now));
  release_l1(stage.owner(), {}, clean_source(), kBuild, releaser, release_at(now + 1));

  // The owner revokes v1; the log shows the victim a harmless decoy entry
  // in its place and keeps both branches impeccably signed.
  RevocationList rl;
  rl.issuer = stage.owner().identity;
  rl.issued_at = now + 20;
  rl.revoked_ids = {v1.endorsement_id};
  Statement revocation = rl;
  sign_statement(revocation, stage.owner_keys);

  Endorsement decoy;
  decoy.binary_hash = sha256(std::string_view("routine maintenance build"));
  decoy.claims = "maintenance notice";
  decoy.issued_at = now + 20;
  decoy.not_after = now + 100000;
  Statement decoy_statement = decoy;
  sign_statement(decoy_statement, stage.owner_keys);

  releaser.append_with_fork_payload(canonical_encode(revocation),
                                    canonical_encode(decoy_statement));

  auto policy = stage.policy(Level::L1);
  policy.now = now + 30;
  rec.verdict("clients on the real view reject the revoked v1",
              audit(releaser, v1.build.binary_hash, policy), false, "actively revoked");
  rec.verdict("the victim still accepts v1: the fork hides the revocation",
              audit(victim_view, v1.build.binary_hash, policy), true);

  std::vector<Monitor> monitors = {stage.monitor(0), stage.monitor(1), stage.monitor(2)};
  auto view_a = stage.client("monitor-a");
  auto view_b = stage.client("victim-1");
  auto view_c = stage.client("monitor-c");
  std::vector<LogView*> views = {&view_a, &view_b, &view_c};

  std::size_t poll_alarms = 0;
  for (std::size_t i = 0; i < monitors.size(); ++i)
    poll_alarms += monitors[i].poll(*views[i]).alarms.size();
  rec.step("each branch looks flawless in isolation", poll_alarms == 0, "0 alarms",
           std::to_string(poll_alarms) + " alarms");

  const auto round = gossip_round(monitors, views);
  const MonitorAlarm* split = nullptr;
  for (const auto& alarm : round.alarms)
    if (alarm.kind == AlarmKind::split_view) split = &alarm;
  rec.step("one gossip round exposes the fork", split != nullptr, "split_view alarm",
           split ? "split_view alarm raised by " + split->monitor.name
                 : "no alarm in " + std::to_string(round.alarms.size()) + " alarms");
  if (!split) return rec.take();

  const auto list = collective_revocation(monitors, views, *split, 2, now + 40);
  rec.step("a monitor quorum countersigns a distrust statement",
           list.has_value() && list->distrust_origin == stage.service.main_log().origin() &&
               list->signatures.size() >= 2,
           "distrust of log.local signed by >= 2 monitors",
           list ? "distrust of " + list->distrust_origin.value_or("?") + " signed by " +
                      std::to_string(list->signatures.size()) + " monitors"
                : "no quorum");

  policy.crls = {*list};
  policy.monitor_threshold = 2;
  policy.now = now + 50;
  rec.verdict("with the distrust list even the victim's view is rejected wholesale",
              audit(victim_view, v1.build.binary_hash, policy), false, "log origin distrusted");
  return rec.take();
}

ScenarioResult delayed_visibility(std::int64_t now, std::uint64_t seed) {
  Recorder rec("delayed-visibility");
  ServiceConfig config;
  config.mode = ServiceMode::delayed_visibility;
  config.delay_entries = 2;
  config.victim_clients = {"victim-1"};
  const std::uint64_t delay = config.delay_entries;
  Stage stage(std::move(config), now, seed);

  auto releaser = stage.client("releaser");
  auto victim_view = stage.client("victim-1");

  const auto v1 = release_l1(stage.owner(), {}, clean_source(), kBuild, releaser,
                             release_at(now));

  auto policy = stage.policy(Level::L1);
  policy.now = now + 10;
  rec.verdict("the victim cannot see the fresh endorsement yet",
              audit(victim_view, v1.build.binary_hash, policy), false, "no endorsement");
  rec.verdict("everyone else already accepts it",
              audit(releaser, v1.build.binary_hash, policy), true);

  std::vector<Monitor> monitors = {stage.monitor(0), stage.monitor(1)};
  auto view_a = stage.client("monitor-a");
  std::vector<LogView*> views = {&view_a, &victim_view};
  std::size_t alarms = 0;
  std::size_t ahead_notices = 0;
  for (std::size_t i = 0; i < monitors.size(); ++i) alarms += monitors[i].poll(*views[i]).alarms.size();
  {
    const auto round = gossip_round(monitors, views);
    alarms += round.alarms.size();
    for (const auto& notice : round.notices)
      if (notice.find("ahead") != std::string::npos) ++ahead_notices;
  }
  rec.step("withholding produces notices, never a false split-view alarm",
           alarms == 0 && ahead_notices >= 1, "0 alarms, >= 1 lag notice",
           std::to_string(alarms) + " alarms, " + std::to_string(ahead_notices) +
               " lag notices");

  // Two more releases push the withheld entry into the victim's window.
  ReleaseParams v2 = release_at(now + 20);
  v2.claims = "v2";
  ReleaseParams v3 = release_at(now + 21);
  v3.claims = "v3";
  release_l1(stage.owner(), {}, clean_source(), kBuild, releaser, v2);
  release_l1(stage.owner(), {}, clean_source(), kBuild, releaser, v3);

  policy.now = now + 30;
  rec.verdict("once the window moves past it, the victim accepts v1",
              audit(victim_view, v1.build.binary_hash, policy), true);

  alarms = 0;
  for (std::size_t i = 0; i < monitors.size(); ++i) alarms += monitors[i].poll(*views[i]).alarms.size();
  alarms += gossip_round(monitors, views).alarms.size();
  rec.step("monitors still see a single consistent history", alarms == 0, "0 alarms",
           std::to_string(alarms) + " alarms");
  rec.step("the cost of withholding is latency, not safety",
           monitors[1].verified_size() + delay >= monitors[0].verified_size(),
           "victim watermark trails by at most the delay window",
           "victim at " + std::to_string(monitors[1].verified_size()) + ", honest at " +
               std::to_string(monitors[0].verified_size()));
  return rec.take();
}

using ScenarioFn = ScenarioResult (*)(std::int64_t, std::uint64_t);

const std::vector<std::pair<std::string, ScenarioFn>>& catalog() {
  static const std::vector<std::pair<std::string, ScenarioFn>> scenarios = {
      {"honest-l1", honest_l1},
      {"honest-l2", honest_l2},
      {"honest-l3", honest_l3},
      {"expired-endorsement", expired_endorsement},
      {"active-crl-revocation", active_crl_revocation},
      {"broken-promise", broken_promise},
      {"post-release-vuln", post_release_vuln},
      {"trusted-builder-flow", trusted_builder_flow},
      {"split-view-attack", split_view_attack},
      {"delayed-visibility", delayed_visibility},
  };
  return scenarios;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : catalog()) names.push_back(name);
  return names;
}

ScenarioResult run_scenario(std::string_view name, std::int64_t now, std::uint64_t seed) {
  for (const auto& [candidate, fn] : catalog()) {
    if (candidate == name) return fn(now, seed);
  }
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

std::string scenario_result_to_json(const ScenarioResult& result) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : result.steps) {
    steps.push_back({{"description", s.description},
                     {"expected", s.expected},
                     {"observed", s.observed},
                     {"ok", s.ok}});
  }
  return nlohmann::json{{"name", result.name}, {"ok", result.ok}, {"steps", steps}}.dump(2);
}

}  // namespace cct
