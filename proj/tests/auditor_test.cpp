// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cct/actors.hpp"
#include "cct/auditor.hpp"

using namespace cct;

namespace {

constexpr std::int64_t kNow = 1755400000;

const BuildConfig kConfig = {"cc-14.2", {"cc -c main.c", "cc -o app main.o"}, {"-O2", "--frozen"}};

// One released binary plus every party the policy might trust. The log is
// in memory; scenarios append what they need.
struct World {
  KeyPair op_keys = KeyPair::from_seed({200});
  KeyPair owner_keys = KeyPair::from_seed({21});
  KeyPair third_keys = KeyPair::from_seed({31});
  KeyPair community_keys = KeyPair::from_seed({32});
  KeyPair monitor_a = KeyPair::from_seed({41});
  KeyPair monitor_b = KeyPair::from_seed({42});

  MerkleLog log{"log.test", KeyPair::from_seed({200}), fixed_clock(kNow)};
  InProcessLogClient client{log};

  CodeOwner owner{{"acme", Role::code_owner, owner_keys.public_key()}, owner_keys};
  SourcePackage source = SourcePackage::make(to_bytes("int main() { return 0; }\n"), true);

  Certifier third_party{CertifierProfile::make("auditco", third_keys.public_key(),
                                               CertifierCategory::third_party,
                                               Methodology::reporting, Motivation::independent),
                        third_keys,
                        {}};
  Certifier community{CertifierProfile::make("coop", community_keys.public_key(),
                                             CertifierCategory::community,
                                             Methodology::reporting, Motivation::independent),
                      community_keys,
                      {}};

  AuditPolicy policy;

  World() {
    policy.trusted_log_key = op_keys.public_key();
    policy.trusted_first_party_keys = {owner_keys.public_key()};
    policy.trusted_third_party_keys = {third_keys.public_key()};
    policy.trusted_community_keys = {community_keys.public_key()};
    policy.trusted_monitor_keys = {monitor_a.public_key(), monitor_b.public_key()};
    policy.now = kNow + 100;
  }

  ReleaseOutcome release(ReleaseParams params = {}) {
    if (params.now == 0) params.now = kNow;
    return release_l1(owner, {}, source, kConfig, client, params);
  }

  void certify(const Certifier& certifier, const ReleaseOutcome& rel) {
    auto outcome = review_and_certify(certifier, source, rel.build.provenance, client, kNow + 5);
    REQUIRE(outcome.has_value());
  }
};

bool has_reason(const AuditVerdict& v, std::string_view needle) {
  for (const auto& r : v.reasons)
    if (r.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE("auditor") {

TEST_CASE("logged endorsement from a trusted owner reaches L1") {
  World w;
  const auto rel = w.release();
  const auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.accepted);
  CHECK(v.achieved_level == Level::L1);
  CHECK(v.reasons.empty());
  CHECK_FALSE(v.inconclusive);
  CHECK(v.checked_at == kNow + 100);
}

TEST_CASE("unlisted binary is rejected with no endorsement found") {
  World w;
  w.release();
  const auto v = audit(w.client, sha256(std::string_view("never released")), w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(v.achieved_level == Level::L0);
  CHECK(has_reason(v, "no endorsement"));
}

TEST_CASE("achieved level follows the endorsement and certificate mix") {
  struct Cell {
    bool endorse, third, community;
    Level expected;
  };
  const Cell cells[] = {
      {false, false, false, Level::L0}, {true, false, false, Level::L1},
      {false, true, false, Level::L0},  {false, false, true, Level::L0},
      {true, true, false, Level::L2},   {true, false, true, Level::L1},
      {false, true, true, Level::L0},   {true, true, true, Level::L3},
  };
  for (const auto& cell : cells) {
    CAPTURE(cell.endorse);
    CAPTURE(cell.third);
    CAPTURE(cell.community);
    World w;
    // The build exists either way; the cell controls what reaches the log.
    const auto build = run_build(w.source, kConfig, w.owner_keys);
    ReleaseOutcome rel;
    rel.build = build;
    if (cell.endorse) rel = w.release();
    if (cell.third) w.certify(w.third_party, rel);
    if (cell.community) w.certify(w.community, rel);

    w.policy.required_level = Level::L0;
    const auto v = audit(w.client, build.binary_hash, w.policy);
    CHECK(v.achieved_level == cell.expected);
    CHECK(v.accepted == cell.endorse);
  }
}

TEST_CASE("community review counts for L3 without third party only when allowed") {
  World w;
  const auto rel = w.release();
  w.certify(w.community, rel);

  auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.achieved_level == Level::L1);

  w.policy.l3_requires_third_party = false;
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.achieved_level == Level::L3);
}

TEST_CASE("acceptance at a level implies acceptance at every lower requirement") {
  World w;
  const auto rel = w.release();
  w.certify(w.third_party, rel);

  for (Level required : {Level::L0, Level::L1, Level::L2}) {
    w.policy.required_level = required;
    CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);
  }
  w.policy.required_level = Level::L3;
  const auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(v.achieved_level == Level::L2);
  CHECK(has_reason(v, "below required"));
}

TEST_CASE("endorsements expire passively and are not valid early") {
  World w;
  ReleaseParams params;
  params.now = kNow;
  params.validity_secs = 1000;
  const auto rel = w.release(params);

  w.policy.now = kNow + 999;
  CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);

  w.policy.now = kNow + 1000;  // expiry instant itself is already stale
  auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "passively revoked"));

  w.policy.now = kNow - 1;
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "not yet valid"));
}

TEST_CASE("signature thresholds count distinct trusted owner keys") {
  World w;
  const KeyPair second = KeyPair::from_seed({22});
  const KeyPair co_signers[] = {KeyPair::from_seed({22})};
  ReleaseParams params;
  params.now = kNow;
  const auto rel =
      release_l1(w.owner, {}, w.source, kConfig, w.client, params, co_signers);

  w.policy.first_party_threshold = 2;
  auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "signature threshold not met"));
  CHECK(has_reason(v, "1 of 2"));

  w.policy.trusted_first_party_keys.push_back(second.public_key());
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.accepted);
}

TEST_CASE("a logged revocation list from a trusted signer kills the endorsement") {
  World w;
  const auto rel = w.release();

  RevocationList rl;
  rl.issuer = w.owner.identity;
  rl.issued_at = kNow + 50;
  rl.revoked_ids = {rel.endorsement_id};
  Statement s = rl;
  sign_statement(s, w.owner_keys);
  w.client.append(canonical_encode(s));

  const auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "actively revoked"));
}

TEST_CASE("a revocation list signed by nobody the policy trusts changes nothing") {
  World w;
  const auto rel = w.release();

  RevocationList rl;
  const KeyPair stranger = KeyPair::from_seed({99});
  rl.issuer = {"stranger", Role::monitor, stranger.public_key()};
  rl.issued_at = kNow + 50;
  rl.revoked_ids = {rel.endorsement_id};
  Statement s = rl;
  sign_statement(s, stranger);
  w.client.append(canonical_encode(s));

  CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);
}

TEST_CASE("a monitor quorum distrusting the origin rejects everything on it") {
  World w;
  const auto rel = w.release();

  RevocationList rl;
  rl.issuer = {"monitor-a", Role::monitor, w.monitor_a.public_key()};
  rl.issued_at = kNow + 60;
  rl.distrust_origin = "log.test";
  Statement s = rl;
  sign_statement(s, w.monitor_a);

  w.policy.monitor_threshold = 2;
  w.policy.crls = {std::get<RevocationList>(s)};
  CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);  // one voice is not a quorum

  sign_statement(s, w.monitor_b);
  w.policy.crls = {std::get<RevocationList>(s)};
  const auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "log origin distrusted"));
}

TEST_CASE("certification promises elevate while pending and block once broken") {
  World w;
  ReleaseParams params;
  params.now = kNow;
  params.to_be_certified_by = kNow + 500;
  const auto rel = w.release(params);

  w.policy.required_level = Level::L2;
  w.policy.now = kNow + 100;
  auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.accepted);  // provisionally L2 on the owner's dated promise
  CHECK(v.achieved_level == Level::L2);

  w.policy.now = kNow + 501;
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "broken certification promise"));

  w.policy.enforce_promises = false;
  w.policy.required_level = Level::L1;
  CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);

  // A certificate arriving even after the deadline repairs the promise.
  w.policy.enforce_promises = true;
  w.policy.required_level = Level::L2;
  w.certify(w.third_party, rel);
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.accepted);
  CHECK(v.achieved_level == Level::L2);
}

TEST_CASE("an alert blocks until a follow-up lands on the same binary") {
  World w;
  SourcePackage buggy = SourcePackage::make(to_bytes("int main() { return 1; } // oops\n"), true,
                                            std::string("cve-tag"));
  ReleaseParams params;
  params.now = kNow;
  const auto rel = release_l1(w.owner, {}, buggy, kConfig, w.client, params);

  Certifier alerter{CertifierProfile::make("redteam", KeyPair::from_seed({33}).public_key(),
                                           CertifierCategory::third_party, Methodology::alerting,
                                           Motivation::independent),
                    KeyPair::from_seed({33}),
                    {"cve-tag"}};
  w.policy.trusted_third_party_keys.push_back(alerter.keys.public_key());

  const auto alert = review_and_certify(alerter, buggy, rel.build.provenance, w.client, kNow + 5);
  REQUIRE(alert.has_value());

  auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "unresolved alerting certificate"));

  // A follow-up naming the patched v2 binary does not clear the alert on v1.
  const auto patched = run_build(SourcePackage::make(to_bytes("int main() { return 0; } // fixed\n"), true),
                                 kConfig, w.owner_keys);
  issue_followup(w.third_party, alert->certificate_id, patched.binary_hash,
                 patched.provenance.source_hash, "fixed in v2", w.client, kNow + 10);
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);

  // A second opinion on the alerted binary itself does.
  issue_followup(w.third_party, alert->certificate_id, rel.build.binary_hash,
                 rel.build.provenance.source_hash, "mitigated by sandboxing", w.client, kNow + 11);
  v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK(v.accepted);
}

TEST_CASE("alerting can be advisory instead of blocking") {
  World w;
  SourcePackage buggy = SourcePackage::make(to_bytes("int main() { return 2; }\n"), true,
                                            std::string("bug"));
  ReleaseParams params;
  params.now = kNow;
  const auto rel = release_l1(w.owner, {}, buggy, kConfig, w.client, params);
  Certifier alerter{CertifierProfile::make("redteam", KeyPair::from_seed({34}).public_key(),
                                           CertifierCategory::third_party, Methodology::alerting,
                                           Motivation::independent),
                    KeyPair::from_seed({34}),
                    {"bug"}};
  w.policy.trusted_third_party_keys.push_back(alerter.keys.public_key());
  review_and_certify(alerter, buggy, rel.build.provenance, w.client, kNow + 5);

  w.policy.alerting_blocks = false;
  CHECK(audit(w.client, rel.build.binary_hash, w.policy).accepted);
}

TEST_CASE("a checkpoint signed by the wrong key is flagged as log misbehavior") {
  World w;
  const auto rel = w.release();
  w.policy.trusted_log_key = KeyPair::from_seed({77}).public_key();
  const auto v = audit(w.client, rel.build.binary_hash, w.policy);
  CHECK_FALSE(v.accepted);
  CHECK_FALSE(v.inconclusive);
  CHECK(has_reason(v, "checkpoint signature invalid"));
  CHECK(has_reason(v, "[class II]"));
}

TEST_CASE("an unreachable log is inconclusive rather than a rejection") {
  struct DownLog : LogView {
    Checkpoint latest_checkpoint() override { throw TransportError("connection refused"); }
    std::vector<Bytes> entries(std::uint64_t, std::uint64_t) override {
      throw TransportError("connection refused");
    }
    InclusionProof inclusion_proof(std::uint64_t, std::uint64_t) override {
      throw TransportError("connection refused");
    }
    ConsistencyProof consistency_proof(std::uint64_t, std::uint64_t) override {
      throw TransportError("connection refused");
    }
  } down;
  AuditPolicy policy;
  policy.now = kNow;
  const auto v = audit(down, sha256(std::string_view("x")), policy);
  CHECK_FALSE(v.accepted);
  CHECK(v.inconclusive);
  CHECK(has_reason(v, "log unreachable"));
}

TEST_CASE("policy files round-trip and pull in revocation lists") {
  World w;
  const auto rel = w.release();

  RevocationList rl;
  rl.issuer = w.owner.identity;
  rl.issued_at = kNow + 50;
  rl.revoked_ids = {rel.endorsement_id};
  Statement s = rl;
  sign_statement(s, w.owner_keys);

  const auto dir = std::filesystem::temp_directory_path() / "cct_auditor_policy";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    const Bytes crl = canonical_encode(s);
    std::ofstream out(dir / "owner.crl", std::ios::binary);
    out.write(reinterpret_cast<const char*>(crl.data()), static_cast<std::streamsize>(crl.size()));
  }
  w.policy.crl_files = {"owner.crl"};
  w.policy.required_level = Level::L1;
  {
    std::ofstream out(dir / "policy.json");
    out << policy_to_json(w.policy);
  }

  const AuditPolicy loaded = load_policy(dir / "policy.json");
  CHECK(loaded.trusted_log_key == w.policy.trusted_log_key);
  CHECK(loaded.required_level == Level::L1);
  CHECK(loaded.now == w.policy.now);
  REQUIRE(loaded.crls.size() == 1);

  const auto v = audit(w.client, rel.build.binary_hash, loaded);
  CHECK_FALSE(v.accepted);
  CHECK(has_reason(v, "actively revoked"));
}

TEST_CASE("malformed policies are refused with the offending field") {
  CHECK_THROWS_AS(policy_from_json("not json"), PolicyError);
  CHECK_THROWS_AS(policy_from_json("{}"), PolicyError);
  CHECK_THROWS_WITH_AS(
      policy_from_json(R"({"trusted_log_key":"AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA=","typo_field":1})"),
      doctest::Contains("typo_field"), PolicyError);
  CHECK_THROWS_WITH_AS(
      policy_from_json(R"({"trusted_log_key":"AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA=","required_level":"L9"})"),
      doctest::Contains("required_level"), PolicyError);
  CHECK_THROWS_WITH_AS(
      policy_from_json(R"({"trusted_log_key":"AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA=","first_party_threshold":0})"),
      doctest::Contains("first_party_threshold"), PolicyError);
  CHECK_THROWS_AS(load_policy("/nonexistent/policy.json"), PolicyError);
}

TEST_CASE("verdicts serialize with stable field names") {
  AuditVerdict v;
  v.accepted = true;
  v.achieved_level = Level::L2;
  v.checked_at = kNow;
  v.reasons = {"note"};
  const std::string j = verdict_to_json(v);
  CHECK(j.find("\"accepted\": true") != std::string::npos);
  CHECK(j.find("\"achieved_level\": \"L2\"") != std::string::npos);
  CHECK(j.find("\"checked_at\": 1755400000") != std::string::npos);
  CHECK(j.find("\"inconclusive\": false") != std::string::npos);
  CHECK(j.find("note") != std::string::npos);
}

}  // TEST_SUITE
