// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cct/log.hpp"
#include "cct/statements.hpp"

namespace cct {

/// Assurance ladder for a binary. L1 is a logged, endorsed release; L2 adds
/// independent third-party certification; L3 adds community review on top.
enum class Level { L0, L1, L2, L3 };

std::string_view level_name(Level level);
std::optional<Level> level_from_name(std::string_view name);

class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything the verifier decides locally: which keys it trusts for each
/// role, how many distinct signers each role needs, which assurance level a
/// binary must reach, and which revocation lists it has fetched out of band.
struct AuditPolicy {
  PublicKey trusted_log_key{};

  std::vector<PublicKey> trusted_first_party_keys;
  std::size_t first_party_threshold = 1;
  std::vector<PublicKey> trusted_third_party_keys;
  std::size_t third_party_threshold = 1;
  std::vector<PublicKey> trusted_community_keys;
  std::size_t community_threshold = 1;
  std::vector<PublicKey> trusted_monitor_keys;
  std::size_t monitor_threshold = 1;

  Level required_level = Level::L1;

  /// Verification time; 0 means "now" at the moment audit() runs.
  std::int64_t now = 0;

  /// Revocation lists distributed outside the log (files named in
  /// crl_files, loaded by load_policy). Lists found on the log itself are
  /// picked up during the audit.
  std::vector<std::string> crl_files;
  std::vector<RevocationList> crls;

  /// A dated certification promise past its deadline with no matching
  /// certificate on the log blocks acceptance.
  bool enforce_promises = true;
  /// An alerting certificate with no follow-up on the same binary blocks
  /// acceptance.
  bool alerting_blocks = true;
  /// L3 keeps requiring the third-party threshold alongside community
  /// review.
  bool l3_requires_third_party = true;
};

std::string policy_to_json(const AuditPolicy& policy);
AuditPolicy policy_from_json(std::string_view text);

/// Reads a policy file and the revocation list files it names (relative
/// paths resolve against the policy file's directory). Throws PolicyError
/// when the policy or a named list is unreadable or malformed.
AuditPolicy load_policy(const std::filesystem::path& path);

/// The outcome of one audit. `inconclusive` is set when the log could not
/// be reached; that is an availability fact, never evidence for or against
/// the binary. Reasons are human-readable; entries caused by log
/// misbehavior carry a "[class II]" marker, entries caused by actor
/// misbehavior visible on the log carry "[class I]".
struct AuditVerdict {
  bool accepted = false;
  Level achieved_level = Level::L0;
  std::vector<std::string> reasons;
  std::int64_t checked_at = 0;
  bool inconclusive = false;
};

std::string verdict_to_json(const AuditVerdict& v);

/// Decides whether `binary_hash` is acceptable to run under `policy`,
/// using only what the log serves plus the policy's out-of-band revocation
/// lists. Never throws for log-side problems; those become reasons or an
/// inconclusive verdict.
AuditVerdict audit(LogView& log, const Hash32& binary_hash, const AuditPolicy& policy);

}  // namespace cct
