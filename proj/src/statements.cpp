// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/statements.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace cct {
namespace {

using nlohmann::json;

std::string b64(std::span<const std::uint8_t> data) {
  return base64_encode(data);
}

json signatures_to_json(const std::vector<SignatureEntry>& sigs) {
  json arr = json::array();
  for (const auto& s : sigs) {
    arr.push_back(json{{"public_key", b64(s.public_key)}, {"signature", b64(s.signature)}});
  }
  return arr;
}

json certifier_to_json(const CertifierProfile& c) {
  return json{{"category", category_name(c.category)},
              {"methodology", methodology_name(c.methodology)},
              {"motivation", motivation_name(c.motivation)},
              {"name", c.name},
              {"public_key", b64(c.public_key)}};
}

json identity_to_json_obj(const Identity& id) {
  return json{{"name", id.name}, {"public_key", b64(id.public_key)}, {"role", role_name(id.role)}};
}

json body_to_json(const ReviewCertificate& cert) {
  switch (cert.kind()) {
    case CertKind::reporting: {
      const auto& b = std::get<ReportingBody>(cert.body);
      return json{{"findings", b.findings}, {"scope", b.scope}};
    }
    case CertKind::alerting: {
      const auto& b = std::get<AlertingBody>(cert.body);
      return json{{"impact", b.impact},
                  {"references", b.references},
                  {"root_cause", b.root_cause},
                  {"vuln_type", b.vuln_type}};
    }
    case CertKind::follow_up: {
      const auto& b = std::get<FollowUpBody>(cert.body);
      return json{{"alert_ref", b64(b.alert_ref)}, {"opinion", b.opinion}};
    }
  }
  throw EncodingError("unknown certificate kind");
}

json encode_endorsement(const Endorsement& e, bool with_signatures) {
  json j{{"binary_hash", b64(e.binary_hash)},
         {"claims", e.claims},
         {"issued_at", e.issued_at},
         {"not_after", e.not_after},
         {"statement_type", "endorsement"}};
  if (e.to_be_certified_by) j["to_be_certified_by"] = *e.to_be_certified_by;
  if (e.provenance_ref) j["provenance_ref"] = b64(*e.provenance_ref);
  if (with_signatures) j["signatures"] = signatures_to_json(e.signatures);
  return j;
}

json encode_provenance(const Provenance& p, bool with_signatures) {
  json j{{"build_commands", p.build_commands},
         {"build_flags", p.build_flags},
         {"builder", b64(p.builder)},
         {"output_binary_hash", b64(p.output_binary_hash)},
         {"source_hash", b64(p.source_hash)},
         {"statement_type", "provenance"},
         {"toolchain_id", p.toolchain_id}};
  if (with_signatures && p.signature) j["signature"] = b64(*p.signature);
  return j;
}

json encode_certificate(const ReviewCertificate& c, bool with_signatures) {
  json j{{"body", body_to_json(c)},
         {"certifier", certifier_to_json(c.certifier)},
         {"issued_at", c.issued_at},
         {"kind", cert_kind_name(c.kind())},
         {"statement_type", "review_certificate"},
         {"subject_binary_hash", b64(c.subject_binary_hash)},
         {"subject_source_hash", b64(c.subject_source_hash)}};
  if (with_signatures && c.signature) j["signature"] = b64(*c.signature);
  return j;
}

json encode_revocation(const RevocationList& r, bool with_signatures) {
  std::vector<Hash32> ids = r.revoked_ids;
  std::sort(ids.begin(), ids.end());
  json id_arr = json::array();
  for (const auto& id : ids) id_arr.push_back(b64(id));
  json j{{"issued_at", r.issued_at},
         {"issuer", identity_to_json_obj(r.issuer)},
         {"revoked_ids", id_arr},
         {"statement_type", "revocation_list"}};
  if (r.distrust_origin) j["distrust_origin"] = *r.distrust_origin;
  if (with_signatures) j["signatures"] = signatures_to_json(r.signatures);
  return j;
}

json encode_statement(const Statement& s, bool with_signatures) {
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Endorsement>) {
          return encode_endorsement(v, with_signatures);
        } else if constexpr (std::is_same_v<T, Provenance>) {
          return encode_provenance(v, with_signatures);
        } else if constexpr (std::is_same_v<T, ReviewCertificate>) {
          return encode_certificate(v, with_signatures);
        } else {
          return encode_revocation(v, with_signatures);
        }
      },
      s);
}

Bytes dump_canonical(const json& j) {
  try {
    return to_bytes(j.dump(-1, ' ', false, json::error_handler_t::strict));
  } catch (const json::exception& e) {
    throw EncodingError(std::string("statement is not canonically encodable: ") + e.what());
  }
}

// Strict field access for decoding. Every helper throws DecodeError with the
// offending key so a monitor can report exactly what is wrong with an entry.

[[noreturn]] void bad(const std::string& what) {
  throw DecodeError("malformed statement: " + what);
}

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field ") + key);
  return *it;
}

std::string need_string(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) bad(std::string(key) + " is not a string");
  return v.get<std::string>();
}

std::int64_t need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) bad(std::string(key) + " is not an integer");
  return v.get<std::int64_t>();
}

Hash32 need_hash(const json& j, const char* key) {
  auto h = hash32_from_base64(need_string(j, key));
  if (!h) bad(std::string(key) + " is not a base64 32-byte digest");
  return *h;
}

PublicKey need_pubkey(const json& j, const char* key) {
  auto h = need_hash(j, key);
  PublicKey k;
  std::copy(h.begin(), h.end(), k.begin());
  return k;
}

Signature need_signature_value(const json& v, const char* key) {
  if (!v.is_string()) bad(std::string(key) + " is not a string");
  auto raw = base64_decode(v.get<std::string>());
  if (!raw || raw->size() != kSignatureSize) bad(std::string(key) + " is not a base64 signature");
  Signature sig;
  std::copy(raw->begin(), raw->end(), sig.begin());
  return sig;
}

std::vector<std::string> need_string_list(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array()) bad(std::string(key) + " is not a list");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) bad(std::string(key) + " contains a non-string");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<SignatureEntry> need_signatures(const json& j) {
  const json& v = need(j, "signatures");
  if (!v.is_array()) bad("signatures is not a list");
  std::vector<SignatureEntry> out;
  for (const auto& item : v) {
    if (!item.is_object()) bad("signatures contains a non-object");
    SignatureEntry e;
    e.public_key = need_pubkey(item, "public_key");
    e.signature = need_signature_value(need(item, "signature"), "signature");
    out.push_back(e);
  }
  return out;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) bad("unexpected field " + it.key());
  }
}

Endorsement parse_endorsement(const json& j) {
  reject_unknown_keys(j, {"binary_hash", "claims", "issued_at", "not_after", "provenance_ref",
                          "signatures", "statement_type", "to_be_certified_by"});
  Endorsement e;
  e.binary_hash = need_hash(j, "binary_hash");
  e.claims = need_string(j, "claims");
  e.issued_at = need_int(j, "issued_at");
  e.not_after = need_int(j, "not_after");
  if (j.contains("to_be_certified_by")) e.to_be_certified_by = need_int(j, "to_be_certified_by");
  if (j.contains("provenance_ref")) e.provenance_ref = need_hash(j, "provenance_ref");
  e.signatures = need_signatures(j);
  return e;
}

Provenance parse_provenance(const json& j) {
  reject_unknown_keys(j, {"build_commands", "build_flags", "builder", "output_binary_hash",
                          "signature", "source_hash", "statement_type", "toolchain_id"});
  Provenance p;
  p.build_commands = need_string_list(j, "build_commands");
  p.build_flags = need_string_list(j, "build_flags");
  p.builder = need_pubkey(j, "builder");
  p.output_binary_hash = need_hash(j, "output_binary_hash");
  p.source_hash = need_hash(j, "source_hash");
  p.toolchain_id = need_string(j, "toolchain_id");
  if (j.contains("signature")) p.signature = need_signature_value(j["signature"], "signature");
  return p;
}

CertifierProfile parse_certifier(const json& j) {
  if (!j.is_object()) bad("certifier is not an object");
  reject_unknown_keys(j, {"category", "methodology", "motivation", "name", "public_key"});
  CertifierProfile c;
  c.name = need_string(j, "name");
  c.public_key = need_pubkey(j, "public_key");
  auto cat = category_from_name(need_string(j, "category"));
  auto met = methodology_from_name(need_string(j, "methodology"));
  auto mot = motivation_from_name(need_string(j, "motivation"));
  if (!cat) bad("unknown certifier category");
  if (!met) bad("unknown certifier methodology");
  if (!mot) bad("unknown certifier motivation");
  c.category = *cat;
  c.methodology = *met;
  c.motivation = *mot;
  return c;
}

ReviewCertificate parse_certificate(const json& j) {
  reject_unknown_keys(j, {"body", "certifier", "issued_at", "kind", "signature", "statement_type",
                          "subject_binary_hash", "subject_source_hash"});
  ReviewCertificate c;
  c.certifier = parse_certifier(need(j, "certifier"));
  c.subject_binary_hash = need_hash(j, "subject_binary_hash");
  c.subject_source_hash = need_hash(j, "subject_source_hash");
  c.issued_at = need_int(j, "issued_at");
  const std::string kind = need_string(j, "kind");
  const json& body = need(j, "body");
  if (!body.is_object()) bad("body is not an object");
  if (kind == "reporting") {
    reject_unknown_keys(body, {"findings", "scope"});
    ReportingBody b;
    b.findings = need_string(body, "findings");
    b.scope = need_string(body, "scope");
    c.body = std::move(b);
  } else if (kind == "alerting") {
    reject_unknown_keys(body, {"impact", "references", "root_cause", "vuln_type"});
    AlertingBody b;
    b.impact = need_string(body, "impact");
    b.references = need_string_list(body, "references");
    b.root_cause = need_string(body, "root_cause");
    b.vuln_type = need_string(body, "vuln_type");
    c.body = std::move(b);
  } else if (kind == "follow_up") {
    reject_unknown_keys(body, {"alert_ref", "opinion"});
    FollowUpBody b;
    b.alert_ref = need_hash(body, "alert_ref");
    b.opinion = need_string(body, "opinion");
    c.body = std::move(b);
  } else {
    bad("unknown certificate kind " + kind);
  }
  if (j.contains("signature")) c.signature = need_signature_value(j["signature"], "signature");
  return c;
}

RevocationList parse_revocation(const json& j) {
  reject_unknown_keys(
      j, {"distrust_origin", "issued_at", "issuer", "revoked_ids", "signatures", "statement_type"});
  RevocationList r;
  const json& issuer = need(j, "issuer");
  if (!issuer.is_object()) bad("issuer is not an object");
  reject_unknown_keys(issuer, {"name", "public_key", "role"});
  r.issuer.name = need_string(issuer, "name");
  r.issuer.public_key = need_pubkey(issuer, "public_key");
  auto role = role_from_name(need_string(issuer, "role"));
  if (!role) bad("unknown issuer role");
  r.issuer.role = *role;
  r.issued_at = need_int(j, "issued_at");
  const json& ids = need(j, "revoked_ids");
  if (!ids.is_array()) bad("revoked_ids is not a list");
  for (const auto& item : ids) {
    if (!item.is_string()) bad("revoked_ids contains a non-string");
    auto h = hash32_from_base64(item.get<std::string>());
    if (!h) bad("revoked_ids contains a bad digest");
    r.revoked_ids.push_back(*h);
  }
  if (j.contains("distrust_origin")) r.distrust_origin = need_string(j, "distrust_origin");
  r.signatures = need_signatures(j);
  return r;
}

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::code_owner: return "code_owner";
    case Role::first_party: return "first_party";
    case Role::third_party: return "third_party";
    case Role::community: return "community";
    case Role::builder: return "builder";
    case Role::log_operator: return "log_operator";
    case Role::monitor: return "monitor";
  }
  return "code_owner";
}

std::optional<Role> role_from_name(std::string_view name) {
  for (Role r : {Role::code_owner, Role::first_party, Role::third_party, Role::community,
                 Role::builder, Role::log_operator, Role::monitor}) {
    if (role_name(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view category_name(CertifierCategory c) {
  switch (c) {
    case CertifierCategory::first_party: return "first_party";
    case CertifierCategory::third_party: return "third_party";
    case CertifierCategory::community: return "community";
  }
  return "third_party";
}

std::optional<CertifierCategory> category_from_name(std::string_view name) {
  for (auto c : {CertifierCategory::first_party, CertifierCategory::third_party,
                 CertifierCategory::community}) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view methodology_name(Methodology m) {
  return m == Methodology::reporting ? "reporting" : "alerting";
}

std::optional<Methodology> methodology_from_name(std::string_view name) {
  if (name == "reporting") return Methodology::reporting;
  if (name == "alerting") return Methodology::alerting;
  return std::nullopt;
}

std::string_view motivation_name(Motivation m) {
  return m == Motivation::affiliated ? "affiliated" : "independent";
}

std::optional<Motivation> motivation_from_name(std::string_view name) {
  if (name == "affiliated") return Motivation::affiliated;
  if (name == "independent") return Motivation::independent;
  return std::nullopt;
}

std::string_view cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::reporting: return "reporting";
    case CertKind::alerting: return "alerting";
    case CertKind::follow_up: return "follow_up";
  }
  return "reporting";
}

CertifierProfile CertifierProfile::make(std::string name, PublicKey key,
                                        CertifierCategory category, Methodology methodology,
                                        Motivation motivation) {
  if (category == CertifierCategory::first_party && motivation == Motivation::independent) {
    throw std::invalid_argument("a first-party certifier is affiliated by definition");
  }
  CertifierProfile c;
  c.name = std::move(name);
  c.public_key = key;
  c.category = category;
  c.methodology = methodology;
  c.motivation = motivation;
  return c;
}

Bytes canonical_encode(const Statement& s) {
  return dump_canonical(encode_statement(s, /*with_signatures=*/true));
}

Bytes signing_body(const Statement& s) {
  return dump_canonical(encode_statement(s, /*with_signatures=*/false));
}

Statement decode_statement(std::span<const std::uint8_t> data) {
  json j = json::parse(data.begin(), data.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) bad("payload is not a JSON object");
  const std::string type = need_string(j, "statement_type");
  if (type == "endorsement") return parse_endorsement(j);
  if (type == "provenance") return parse_provenance(j);
  if (type == "review_certificate") return parse_certificate(j);
  if (type == "revocation_list") return parse_revocation(j);
  bad("unknown statement_type " + type);
}

Hash32 statement_id(const Statement& s) {
  return sha256(canonical_encode(s));
}

std::string_view statement_type_name(const Statement& s) {
  switch (s.index()) {
    case 0: return "endorsement";
    case 1: return "provenance";
    case 2: return "review_certificate";
    default: return "revocation_list";
  }
}

void sign_statement(Statement& s, const KeyPair& keys) {
  // Single-signature statements name their signer inside the signed body, so
  // the key has to be stamped in before the body is computed.
  std::visit(
      [&](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Provenance>) {
          v.builder = keys.public_key();
        } else if constexpr (std::is_same_v<T, ReviewCertificate>) {
          v.certifier.public_key = keys.public_key();
        }
      },
      s);
  const Bytes body = signing_body(s);
  const Signature sig = keys.sign(body);
  std::visit(
      [&](auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Endorsement> || std::is_same_v<T, RevocationList>) {
          v.signatures.push_back(SignatureEntry{keys.public_key(), sig});
        } else {
          v.signature = sig;
        }
      },
      s);
}

std::vector<SignerStatus> verify_statement_signatures(const Statement& s) {
  const Bytes body = signing_body(s);
  std::vector<SignerStatus> out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Endorsement> || std::is_same_v<T, RevocationList>) {
          for (const auto& e : v.signatures) {
            out.push_back({e.public_key, verify_signature(e.public_key, body, e.signature)});
          }
        } else if constexpr (std::is_same_v<T, Provenance>) {
          if (v.signature) {
            out.push_back({v.builder, verify_signature(v.builder, body, *v.signature)});
          }
        } else {
          if (v.signature) {
            out.push_back({v.certifier.public_key,
                           verify_signature(v.certifier.public_key, body, *v.signature)});
          }
        }
      },
      s);
  return out;
}

std::vector<std::string> statement_problems(const Statement& s) {
  std::vector<std::string> problems;
  const auto signers = verify_statement_signatures(s);
  for (std::size_t i = 0; i < signers.size(); ++i) {
    if (!signers[i].valid) {
      problems.push_back("signature " + std::to_string(i) + " does not verify");
    }
  }
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Endorsement>) {
          if (v.issued_at >= v.not_after) problems.push_back("validity window is inverted or empty");
          if (v.signatures.empty()) problems.push_back("endorsement carries no signatures");
          if (v.to_be_certified_by && *v.to_be_certified_by < v.issued_at) {
            problems.push_back("certification promise predates issuance");
          }
        } else if constexpr (std::is_same_v<T, Provenance>) {
          if (!v.signature) problems.push_back("provenance is unsigned");
        } else if constexpr (std::is_same_v<T, ReviewCertificate>) {
          if (!v.signature) problems.push_back("certificate is unsigned");
          if (v.certifier.category == CertifierCategory::first_party &&
              v.certifier.motivation == Motivation::independent) {
            problems.push_back("first-party certifier cannot be independent");
          }
        } else {
          if (v.signatures.empty()) problems.push_back("revocation list carries no signatures");
          if (v.distrust_origin && v.distrust_origin->empty()) {
            problems.push_back("distrust_origin is empty");
          }
        }
      },
      s);
  return problems;
}

bool is_revoked(const Hash32& id, std::span<const RevocationList> lists) {
  for (const auto& list : lists) {
    if (std::find(list.revoked_ids.begin(), list.revoked_ids.end(), id) !=
        list.revoked_ids.end()) {
      return true;
    }
  }
  return false;
}

std::string identity_to_json(const Identity& id) {
  return identity_to_json_obj(id).dump();
}

std::optional<Identity> identity_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (!j.is_object()) return std::nullopt;
  try {
    Identity id;
    id.name = need_string(j, "name");
    id.public_key = need_pubkey(j, "public_key");
    auto role = role_from_name(need_string(j, "role"));
    if (!role) return std::nullopt;
    id.role = *role;
    return id;
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

void save_private_key(const std::filesystem::path& path, Role role, const KeyPair& keys) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw KeyFileError("cannot write " + path.string());
  out << "role: " << role_name(role) << "\n" << base64_encode(keys.seed()) << "\n";
}

void save_public_key(const std::filesystem::path& path, Role role, const PublicKey& key) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw KeyFileError("cannot write " + path.string());
  out << "role: " << role_name(role) << "\n" << base64_encode(key) << "\n";
}

namespace {

std::pair<Role, Bytes> read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeyFileError("cannot read " + path.string());
  std::string role_line, key_line;
  std::getline(in, role_line);
  std::getline(in, key_line);
  if (role_line.rfind("role: ", 0) != 0) {
    throw KeyFileError(path.string() + ": first line must be \"role: <role>\"");
  }
  auto role = role_from_name(role_line.substr(6));
  if (!role) throw KeyFileError(path.string() + ": unknown role");
  auto raw = base64_decode(key_line);
  if (!raw || raw->size() != 32) {
    throw KeyFileError(path.string() + ": second line must be 32 base64 bytes");
  }
  return {*role, *raw};
}

}  // namespace

LoadedPrivateKey load_private_key(const std::filesystem::path& path) {
  auto [role, raw] = read_key_file(path);
  Seed seed;
  std::copy(raw.begin(), raw.end(), seed.begin());
  return {role, KeyPair::from_seed(seed)};
}

LoadedPublicKey load_public_key(const std::filesystem::path& path) {
  auto [role, raw] = read_key_file(path);
  LoadedPublicKey out;
  out.role = role;
  std::copy(raw.begin(), raw.end(), out.key.begin());
  return out;
}

}  // namespace cct
