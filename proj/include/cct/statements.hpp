// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cct/crypto.hpp"

namespace cct {

// Statements are exchanged as canonical JSON: object keys sorted, no
// whitespace, UTF-8, byte fields base64. Signatures cover the canonical
// encoding with the signature field(s) left out; the statement id is the
// SHA-256 of the full canonical encoding, signatures included.

enum class Role {
  code_owner,
  first_party,
  third_party,
  community,
  builder,
  log_operator,
  monitor,
};

std::string_view role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

struct Identity {
  std::string name;
  Role role = Role::code_owner;
  PublicKey public_key{};
};

enum class CertifierCategory { first_party, third_party, community };
enum class Methodology { reporting, alerting };
enum class Motivation { affiliated, independent };

std::string_view category_name(CertifierCategory c);
std::optional<CertifierCategory> category_from_name(std::string_view name);
std::string_view methodology_name(Methodology m);
std::optional<Methodology> methodology_from_name(std::string_view name);
std::string_view motivation_name(Motivation m);
std::optional<Motivation> motivation_from_name(std::string_view name);

/// Who performed a review and under which rules. A first-party certifier is
/// by definition affiliated with the code owner; make() refuses the
/// contradictory combination.
struct CertifierProfile {
  std::string name;
  PublicKey public_key{};
  CertifierCategory category = CertifierCategory::third_party;
  Methodology methodology = Methodology::reporting;
  Motivation motivation = Motivation::independent;

  static CertifierProfile make(std::string name, PublicKey key, CertifierCategory category,
                               Methodology methodology, Motivation motivation);
};

struct SignatureEntry {
  PublicKey public_key{};
  Signature signature{};
};

/// The release statement: the code owner stands behind this binary until
/// not_after. Several owners may co-sign; consumers decide how many
/// signatures they require. A promise to obtain third-party certification
/// by a date can be attached, as can a pointer to a logged provenance
/// statement.
struct Endorsement {
  Hash32 binary_hash{};
  std::string claims;
  std::int64_t issued_at = 0;
  std::int64_t not_after = 0;
  std::optional<std::int64_t> to_be_certified_by;
  std::optional<Hash32> provenance_ref;
  std::vector<SignatureEntry> signatures;
};

/// How a binary was produced: source, toolchain, and the exact commands and
/// flags, signed by the builder that ran them.
struct Provenance {
  Hash32 source_hash{};
  std::string toolchain_id;
  std::vector<std::string> build_commands;
  std::vector<std::string> build_flags;
  Hash32 output_binary_hash{};
  PublicKey builder{};
  std::optional<Signature> signature;
};

enum class CertKind { reporting, alerting, follow_up };

std::string_view cert_kind_name(CertKind k);

struct ReportingBody {
  std::string scope;
  std::string findings;
};

struct AlertingBody {
  std::string vuln_type;
  std::string root_cause;
  std::string impact;
  std::vector<std::string> references;
};

struct FollowUpBody {
  Hash32 alert_ref{};
  std::string opinion;
};

/// Review outcome over a (source, binary) pair. Reporting certificates
/// describe an audit; alerting certificates flag a defect; follow-ups
/// reference an earlier alert by statement id.
struct ReviewCertificate {
  CertifierProfile certifier;
  Hash32 subject_binary_hash{};
  Hash32 subject_source_hash{};
  std::int64_t issued_at = 0;
  std::variant<ReportingBody, AlertingBody, FollowUpBody> body;
  std::optional<Signature> signature;

  CertKind kind() const { return static_cast<CertKind>(body.index()); }
};

/// Active revocation. revoked_ids lists statement ids withdrawn before their
/// natural expiry. When several monitors countersign a list naming a
/// distrust_origin, the list distrusts that whole log rather than individual
/// statements.
struct RevocationList {
  Identity issuer;
  std::int64_t issued_at = 0;
  std::vector<Hash32> revoked_ids;
  std::optional<std::string> distrust_origin;
  std::vector<SignatureEntry> signatures;
};

using Statement = std::variant<Endorsement, Provenance, ReviewCertificate, RevocationList>;

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes canonical_encode(const Statement& s);
Statement decode_statement(std::span<const std::uint8_t> data);

/// Canonical encoding with the signature field(s) omitted; this is what
/// gets signed.
Bytes signing_body(const Statement& s);

Hash32 statement_id(const Statement& s);
std::string_view statement_type_name(const Statement& s);

/// Adds a signature by `keys` (appends for multi-signature statements,
/// overwrites for single-signature ones).
void sign_statement(Statement& s, const KeyPair& keys);

struct SignerStatus {
  PublicKey key{};
  bool valid = false;
};

/// Cryptographic check of every signature a statement carries, against the
/// keys named inside the statement itself. Trust in those keys is the
/// caller's policy question.
std::vector<SignerStatus> verify_statement_signatures(const Statement& s);

/// Structural complaints a monitor or auditor should raise: inverted
/// validity windows, missing or broken signatures, contradictory certifier
/// traits. Empty means well-formed.
std::vector<std::string> statement_problems(const Statement& s);

bool is_revoked(const Hash32& id, std::span<const RevocationList> lists);

std::string identity_to_json(const Identity& id);
std::optional<Identity> identity_from_json(std::string_view text);

class KeyFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Key files are two lines: "role: <role>" then one base64 line (the 32-byte
// seed in .key files, the 32-byte public key in .pub files).
void save_private_key(const std::filesystem::path& path, Role role, const KeyPair& keys);
void save_public_key(const std::filesystem::path& path, Role role, const PublicKey& key);

struct LoadedPrivateKey {
  Role role = Role::code_owner;
  KeyPair keys = KeyPair::from_seed({});
};

struct LoadedPublicKey {
  Role role = Role::code_owner;
  PublicKey key{};
};

LoadedPrivateKey load_private_key(const std::filesystem::path& path);
LoadedPublicKey load_public_key(const std::filesystem::path& path);

}  // namespace cct
