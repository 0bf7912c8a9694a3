// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/auditor.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cct/bytes.hpp"

namespace cct {

namespace {

using nlohmann::json;

std::string short_id(const Hash32& id) { return hex_encode(id).substr(0, 8); }

bool contains_key(std::span<const PublicKey> keys, const PublicKey& key) {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

/// Distinct keys that both verify and appear in `trusted`.
std::size_t distinct_trusted_signers(const Statement& s, std::span<const PublicKey> trusted) {
  std::set<PublicKey> seen;
  for (const auto& st : verify_statement_signatures(s)) {
    if (st.valid && contains_key(trusted, st.key)) seen.insert(st.key);
  }
  return seen.size();
}

/// A revocation list found on the log counts once somebody the policy
/// already trusts has signed it. Lists the verifier fetched itself
/// (policy.crls) are trusted by configuration.
bool logged_revocation_trusted(const RevocationList& rl, const AuditPolicy& policy) {
  const Statement s = rl;
  return distinct_trusted_signers(s, policy.trusted_first_party_keys) > 0 ||
         distinct_trusted_signers(s, policy.trusted_monitor_keys) > 0;
}

/// True when `rl` declares the whole log untrustworthy and enough distinct
/// monitors the policy trusts have countersigned that declaration.
bool distrusts_origin(const RevocationList& rl, const std::string& origin,
                      const AuditPolicy& policy) {
  if (!rl.distrust_origin.has_value() || *rl.distrust_origin != origin) return false;
  return distinct_trusted_signers(rl, policy.trusted_monitor_keys) >= policy.monitor_threshold;
}

struct Candidate {
  std::uint64_t index = 0;
  Endorsement endorsement;
  Hash32 id{};
  std::vector<std::string> problems;
  bool pending_promise = false;
};

json keys_to_json(const std::vector<PublicKey>& keys) {
  json arr = json::array();
  for (const auto& k : keys) arr.push_back(base64_encode(k));
  return arr;
}

std::vector<PublicKey> keys_from_json(const json& arr, const char* field) {
  if (!arr.is_array()) throw PolicyError(std::string(field) + " must be an array");
  std::vector<PublicKey> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw PolicyError(std::string(field) + " entries must be strings");
    auto key = hash32_from_base64(item.get<std::string>());
    if (!key) throw PolicyError(std::string(field) + " holds an invalid key");
    out.push_back(*key);
  }
  return out;
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::L0: return "L0";
    case Level::L1: return "L1";
    case Level::L2: return "L2";
    case Level::L3: return "L3";
  }
  return "L0";
}

std::optional<Level> level_from_name(std::string_view name) {
  if (name == "L0") return Level::L0;
  if (name == "L1") return Level::L1;
  if (name == "L2") return Level::L2;
  if (name == "L3") return Level::L3;
  return std::nullopt;
}

std::string policy_to_json(const AuditPolicy& p) {
  json j;
  j["alerting_blocks"] = p.alerting_blocks;
  j["community_threshold"] = p.community_threshold;
  j["crl_files"] = p.crl_files;
  j["enforce_promises"] = p.enforce_promises;
  j["first_party_threshold"] = p.first_party_threshold;
  j["l3_requires_third_party"] = p.l3_requires_third_party;
  j["monitor_threshold"] = p.monitor_threshold;
  j["now"] = p.now;
  j["required_level"] = std::string(level_name(p.required_level));
  j["third_party_threshold"] = p.third_party_threshold;
  j["trusted_community_keys"] = keys_to_json(p.trusted_community_keys);
  j["trusted_first_party_keys"] = keys_to_json(p.trusted_first_party_keys);
  j["trusted_log_key"] = base64_encode(p.trusted_log_key);
  j["trusted_monitor_keys"] = keys_to_json(p.trusted_monitor_keys);
  j["trusted_third_party_keys"] = keys_to_json(p.trusted_third_party_keys);
  return j.dump(2);
}

AuditPolicy policy_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw PolicyError("policy is not a JSON object");

  static const std::set<std::string> known = {
      "alerting_blocks",        "community_threshold",      "crl_files",
      "enforce_promises",       "first_party_threshold",    "l3_requires_third_party",
      "monitor_threshold",      "now",                      "required_level",
      "third_party_threshold",  "trusted_community_keys",   "trusted_first_party_keys",
      "trusted_log_key",        "trusted_monitor_keys",     "trusted_third_party_keys"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw PolicyError("unknown policy field: " + key);
  }

  AuditPolicy p;
  if (!j.contains("trusted_log_key") || !j["trusted_log_key"].is_string())
    throw PolicyError("policy needs a trusted_log_key");
  auto log_key = hash32_from_base64(j["trusted_log_key"].get<std::string>());
  if (!log_key) throw PolicyError("trusted_log_key is not a valid key");
  p.trusted_log_key = *log_key;

  if (j.contains("trusted_first_party_keys"))
    p.trusted_first_party_keys = keys_from_json(j["trusted_first_party_keys"], "trusted_first_party_keys");
  if (j.contains("trusted_third_party_keys"))
    p.trusted_third_party_keys = keys_from_json(j["trusted_third_party_keys"], "trusted_third_party_keys");
  if (j.contains("trusted_community_keys"))
    p.trusted_community_keys = keys_from_json(j["trusted_community_keys"], "trusted_community_keys");
  if (j.contains("trusted_monitor_keys"))
    p.trusted_monitor_keys = keys_from_json(j["trusted_monitor_keys"], "trusted_monitor_keys");

  auto threshold = [&](const char* field, std::size_t fallback) -> std::size_t {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_unsigned() || j[field].get<std::uint64_t>() == 0)
      throw PolicyError(std::string(field) + " must be a positive integer");
    return j[field].get<std::size_t>();
  };
  p.first_party_threshold = threshold("first_party_threshold", 1);
  p.third_party_threshold = threshold("third_party_threshold", 1);
  p.community_threshold = threshold("community_threshold", 1);
  p.monitor_threshold = threshold("monitor_threshold", 1);

  if (j.contains("required_level")) {
    if (!j["required_level"].is_string()) throw PolicyError("required_level must be a string");
    auto level = level_from_name(j["required_level"].get<std::string>());
    if (!level) throw PolicyError("required_level must be one of L0..L3");
    p.required_level = *level;
  }
  if (j.contains("now")) {
    if (!j["now"].is_number_integer()) throw PolicyError("now must be an integer");
    p.now = j["now"].get<std::int64_t>();
  }
  if (j.contains("crl_files")) {
    if (!j["crl_files"].is_array()) throw PolicyError("crl_files must be an array");
    for (const auto& item : j["crl_files"]) {
      if (!item.is_string()) throw PolicyError("crl_files entries must be strings");
      p.crl_files.push_back(item.get<std::string>());
    }
  }
  auto flag = [&](const char* field, bool fallback) -> bool {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_boolean()) throw PolicyError(std::string(field) + " must be a boolean");
    return j[field].get<bool>();
  };
  p.enforce_promises = flag("enforce_promises", true);
  p.alerting_blocks = flag("alerting_blocks", true);
  p.l3_requires_third_party = flag("l3_requires_third_party", true);
  return p;
}

AuditPolicy load_policy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PolicyError("cannot read policy file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  AuditPolicy policy = policy_from_json(buf.str());

  for (const auto& name : policy.crl_files) {
    std::filesystem::path crl_path(name);
    if (crl_path.is_relative()) crl_path = path.parent_path() / crl_path;
    std::ifstream crl_in(crl_path, std::ios::binary);
    if (!crl_in) throw PolicyError("cannot read revocation list: " + crl_path.string());
    std::stringstream crl_buf;
    crl_buf << crl_in.rdbuf();
    const std::string text = crl_buf.str();
    Statement s;
    try {
      s = decode_statement(to_bytes(text));
    } catch (const DecodeError& e) {
      throw PolicyError("revocation list " + crl_path.string() + ": " + e.what());
    }
    auto* rl = std::get_if<RevocationList>(&s);
    if (!rl) throw PolicyError("not a revocation list: " + crl_path.string());
    const auto problems = statement_problems(s);
    if (!problems.empty())
      throw PolicyError("revocation list " + crl_path.string() + ": " + problems.front());
    policy.crls.push_back(std::move(*rl));
  }
  return policy;
}

std::string verdict_to_json(const AuditVerdict& v) {
  json j;
  j["accepted"] = v.accepted;
  j["achieved_level"] = std::string(level_name(v.achieved_level));
  j["checked_at"] = v.checked_at;
  j["inconclusive"] = v.inconclusive;
  j["reasons"] = v.reasons;
  return j.dump(2);
}

AuditVerdict audit(LogView& log, const Hash32& binary_hash, const AuditPolicy& policy) {
  AuditVerdict verdict;
  verdict.checked_at = policy.now != 0 ? policy.now : wall_clock()();
  const std::int64_t now = verdict.checked_at;

  Checkpoint cp;
  std::vector<Bytes> raw;
  try {
    cp = log.latest_checkpoint();
    raw = log.entries(0, cp.tree_size);

    if (!verify_checkpoint(cp, policy.trusted_log_key)) {
      verdict.reasons.push_back("checkpoint signature invalid [class II]");
      return verdict;
    }
    if (raw.size() != cp.tree_size) {
      verdict.reasons.push_back("log served " + std::to_string(raw.size()) +
                                " entries against a checkpoint for " +
                                std::to_string(cp.tree_size) + " [class II]");
      return verdict;
    }

    // One decode pass; everything below works off these buckets.
    std::vector<Candidate> candidates;
    std::set<PublicKey> third_party_signers;
    std::set<PublicKey> community_signers;
    std::vector<Hash32> open_alerts;
    std::vector<Hash32> followed_up_alerts;
    std::vector<RevocationList> logged_lists;

    for (std::uint64_t i = 0; i < raw.size(); ++i) {
      Statement s;
      try {
        s = decode_statement(raw[i]);
      } catch (const DecodeError&) {
        continue;  // monitors complain about garbage entries; auditors skip them
      }
      if (auto* e = std::get_if<Endorsement>(&s)) {
        if (e->binary_hash == binary_hash)
          candidates.push_back({i, *e, statement_id(s), {}, false});
      } else if (auto* cert = std::get_if<ReviewCertificate>(&s)) {
        if (cert->subject_binary_hash != binary_hash) continue;
        if (!statement_problems(s).empty()) continue;
        const PublicKey& signer = cert->certifier.public_key;
        switch (cert->kind()) {
          case CertKind::reporting:
            if (cert->certifier.category == CertifierCategory::third_party &&
                contains_key(policy.trusted_third_party_keys, signer))
              third_party_signers.insert(signer);
            if (cert->certifier.category == CertifierCategory::community &&
                contains_key(policy.trusted_community_keys, signer))
              community_signers.insert(signer);
            break;
          case CertKind::alerting:
            if (contains_key(policy.trusted_third_party_keys, signer) ||
                contains_key(policy.trusted_community_keys, signer))
              open_alerts.push_back(statement_id(s));
            break;
          case CertKind::follow_up:
            if (contains_key(policy.trusted_third_party_keys, signer) ||
                contains_key(policy.trusted_community_keys, signer))
              followed_up_alerts.push_back(std::get<FollowUpBody>(cert->body).alert_ref);
            break;
        }
      } else if (auto* rl = std::get_if<RevocationList>(&s)) {
        logged_lists.push_back(*rl);
      }
    }

    // The log itself can be declared rotten by enough monitors; nothing it
    // serves is then worth checking.
    for (const auto& rl : policy.crls) {
      if (distrusts_origin(rl, cp.origin, policy)) {
        verdict.reasons.push_back("log origin distrusted by monitor quorum [class II]");
        return verdict;
      }
    }
    for (const auto& rl : logged_lists) {
      if (distrusts_origin(rl, cp.origin, policy)) {
        verdict.reasons.push_back("log origin distrusted by monitor quorum [class II]");
        return verdict;
      }
    }

    std::set<Hash32> revoked;
    for (const auto& rl : policy.crls)
      revoked.insert(rl.revoked_ids.begin(), rl.revoked_ids.end());
    for (const auto& rl : logged_lists) {
      if (logged_revocation_trusted(rl, policy))
        revoked.insert(rl.revoked_ids.begin(), rl.revoked_ids.end());
    }

    const std::size_t n_third = third_party_signers.size();
    const std::size_t n_community = community_signers.size();

    for (auto& c : candidates) {
      for (auto& problem : statement_problems(c.endorsement))
        c.problems.push_back("endorsement " + short_id(c.id) + ": " + std::move(problem));

      if (now < c.endorsement.issued_at)
        c.problems.push_back("endorsement " + short_id(c.id) + " not yet valid");
      if (now >= c.endorsement.not_after)
        c.problems.push_back("passively revoked: endorsement " + short_id(c.id) +
                             " expired at " + std::to_string(c.endorsement.not_after));

      const std::size_t signers =
          distinct_trusted_signers(c.endorsement, policy.trusted_first_party_keys);
      if (signers < policy.first_party_threshold)
        c.problems.push_back("signature threshold not met: " + std::to_string(signers) + " of " +
                             std::to_string(policy.first_party_threshold) +
                             " required first-party signatures");

      try {
        const auto proof = log.inclusion_proof(c.index, cp.tree_size);
        if (!verify_inclusion_against(cp, proof, raw[c.index]))
          c.problems.push_back("inclusion proof invalid for entry " + std::to_string(c.index) +
                               " [class II]");
      } catch (const ProofUnavailableError&) {
        c.problems.push_back("inclusion proof invalid: log refused to prove entry " +
                             std::to_string(c.index) + " [class II]");
      }

      if (revoked.count(c.id))
        c.problems.push_back("actively revoked: endorsement " + short_id(c.id) + " [class I]");

      if (c.endorsement.to_be_certified_by.has_value() && policy.enforce_promises &&
          n_third < policy.third_party_threshold) {
        if (now > *c.endorsement.to_be_certified_by) {
          c.problems.push_back("broken certification promise: deadline " +
                               std::to_string(*c.endorsement.to_be_certified_by) +
                               " passed without a third-party certificate [class I]");
        } else {
          c.pending_promise = true;
        }
      }
    }

    const auto chosen = std::find_if(candidates.begin(), candidates.end(),
                                     [](const Candidate& c) { return c.problems.empty(); });
    const bool endorsed = chosen != candidates.end();

    if (endorsed) {
      verdict.achieved_level = Level::L1;
      const bool l2 = n_third >= policy.third_party_threshold ||
                      (chosen->pending_promise && policy.enforce_promises);
      if (l2) verdict.achieved_level = Level::L2;
      const bool l3 = n_community >= policy.community_threshold &&
                      (!policy.l3_requires_third_party ||
                       n_third >= policy.third_party_threshold);
      if (l3) verdict.achieved_level = Level::L3;
    } else if (candidates.empty()) {
      verdict.reasons.push_back("no endorsement for this binary on the log");
    } else {
      for (const auto& c : candidates)
        for (const auto& problem : c.problems)
          if (std::find(verdict.reasons.begin(), verdict.reasons.end(), problem) ==
              verdict.reasons.end())
            verdict.reasons.push_back(problem);
    }

    bool alert_blocked = false;
    for (const auto& alert_id : open_alerts) {
      const bool resolved = std::find(followed_up_alerts.begin(), followed_up_alerts.end(),
                                      alert_id) != followed_up_alerts.end();
      if (!resolved && policy.alerting_blocks) {
        verdict.reasons.push_back("unresolved alerting certificate " + short_id(alert_id) +
                                  " [class I]");
        alert_blocked = true;
      }
    }

    verdict.accepted = endorsed && !alert_blocked &&
                       verdict.achieved_level >= policy.required_level;
    if (endorsed && verdict.achieved_level < policy.required_level)
      verdict.reasons.push_back("achieved " + std::string(level_name(verdict.achieved_level)) +
                                " below required " +
                                std::string(level_name(policy.required_level)));
    return verdict;
  } catch (const TransportError& e) {
    verdict.accepted = false;
    verdict.inconclusive = true;
    verdict.reasons.push_back(std::string("log unreachable: ") + e.what());
    return verdict;
  }
}

}  // namespace cct
