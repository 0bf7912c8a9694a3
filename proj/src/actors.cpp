// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/actors.hpp"

#include <json.hpp>

#include <algorithm>

namespace cct {
namespace {

using nlohmann::json;

Provenance make_provenance(const SourcePackage& source, const BuildConfig& config,
                           const Hash32& binary_hash) {
  Provenance p;
  p.source_hash = source.source_hash;
  p.toolchain_id = config.toolchain_id;
  p.build_commands = config.build_commands;
  p.build_flags = config.build_flags;
  p.output_binary_hash = binary_hash;
  return p;
}

bool config_matches(const Provenance& p, const BuildConfig& config) {
  return p.toolchain_id == config.toolchain_id && p.build_commands == config.build_commands &&
         p.build_flags == config.build_flags;
}

}  // namespace

SourcePackage SourcePackage::make(Bytes content, bool open_sourced,
                                  std::optional<std::string> planted_defect) {
  SourcePackage s;
  s.source_hash = sha256(content);
  s.content = std::move(content);
  s.open_sourced = open_sourced;
  s.planted_defect = std::move(planted_defect);
  return s;
}

Bytes canonical_config(const BuildConfig& config) {
  json j{{"build_commands", config.build_commands},
         {"build_flags", config.build_flags},
         {"toolchain_id", config.toolchain_id}};
  return to_bytes(j.dump());
}

BuildResult run_build(const SourcePackage& source, const BuildConfig& config,
                      const KeyPair& builder_keys) {
  const Bytes cfg = canonical_config(config);
  const Hash32 binary_hash = sha256(concat({to_bytes("bin"), source.source_hash, cfg}));
  BuildResult result;
  result.binary_hash = binary_hash;
  result.provenance = make_provenance(source, config, binary_hash);
  Statement s = result.provenance;
  sign_statement(s, builder_keys);
  result.provenance = std::get<Provenance>(s);
  return result;
}

ReviewVerdict Certifier::review(const SourcePackage& source) const {
  ReviewVerdict v;
  if (source.planted_defect &&
      std::find(detects.begin(), detects.end(), *source.planted_defect) != detects.end()) {
    v.approved = false;
    v.discovered_defect = source.planted_defect;
    v.findings = "found defect: " + *source.planted_defect;
  } else {
    v.findings = "no findings";
  }
  return v;
}

ReleaseOutcome release_l1(const CodeOwner& owner, std::span<const Certifier> internal_reviewers,
                          const SourcePackage& source, const BuildConfig& config, LogClient& log,
                          const ReleaseParams& params, std::span<const KeyPair> co_signers) {
  for (const Certifier& reviewer : internal_reviewers) {
    const ReviewVerdict v = reviewer.review(source);
    if (!v.approved) {
      throw ReleaseBlockedError("internal review by " + reviewer.profile.name +
                                " blocked the release: " + v.findings);
    }
  }

  ReleaseOutcome out;
  out.build = run_build(source, config, owner.keys);

  Endorsement e;
  e.binary_hash = out.build.binary_hash;
  e.claims = params.claims;
  e.issued_at = params.now;
  e.not_after = params.now + params.validity_secs;
  e.to_be_certified_by = params.to_be_certified_by;

  Statement s = e;
  sign_statement(s, owner.keys);
  for (const KeyPair& co : co_signers) sign_statement(s, co);
  out.endorsement = std::get<Endorsement>(s);
  out.endorsement_id = statement_id(s);
  out.leaf_index = log.append(canonical_encode(s));
  return out;
}

std::optional<CertificationOutcome> review_and_certify(const Certifier& certifier,
                                                       const SourcePackage& source,
                                                       const Provenance& provenance,
                                                       LogClient& log, std::int64_t now) {
  if (certifier.profile.category == CertifierCategory::community && !source.open_sourced) {
    throw CertificationError("community review requires published source");
  }
  if (source.source_hash != provenance.source_hash) {
    throw BuildMismatchError("reviewed source does not match the provenance source");
  }

  BuildConfig config{provenance.toolchain_id, provenance.build_commands, provenance.build_flags};
  const BuildResult rebuilt = run_build(source, config, certifier.keys);
  if (rebuilt.binary_hash != provenance.output_binary_hash) {
    throw BuildMismatchError("rebuild produced " + hex_encode(rebuilt.binary_hash) +
                             " but the provenance attests " +
                             hex_encode(provenance.output_binary_hash));
  }

  const ReviewVerdict verdict = certifier.review(source);

  ReviewCertificate cert;
  cert.certifier = certifier.profile;
  cert.subject_binary_hash = provenance.output_binary_hash;
  cert.subject_source_hash = source.source_hash;
  cert.issued_at = now;

  if (certifier.profile.methodology == Methodology::reporting) {
    cert.body = ReportingBody{"full source audit", verdict.findings};
  } else {
    // Alerting certifiers keep quiet unless there is something to say.
    if (verdict.approved) return std::nullopt;
    cert.body = AlertingBody{*verdict.discovered_defect, "scripted defect marker",
                             "see vulnerability tag", {}};
  }

  Statement s = cert;
  sign_statement(s, certifier.keys);

  CertificationOutcome out;
  out.certificate = std::get<ReviewCertificate>(s);
  out.certificate_id = statement_id(s);
  out.leaf_index = log.append(canonical_encode(s));
  return out;
}

CertificationOutcome issue_followup(const Certifier& certifier, const Hash32& alert_id,
                                    const Hash32& subject_binary, const Hash32& subject_source,
                                    std::string opinion, LogClient& log, std::int64_t now) {
  ReviewCertificate cert;
  cert.certifier = certifier.profile;
  cert.subject_binary_hash = subject_binary;
  cert.subject_source_hash = subject_source;
  cert.issued_at = now;
  cert.body = FollowUpBody{alert_id, std::move(opinion)};

  Statement s = cert;
  sign_statement(s, certifier.keys);

  CertificationOutcome out;
  out.certificate = std::get<ReviewCertificate>(s);
  out.certificate_id = statement_id(s);
  out.leaf_index = log.append(canonical_encode(s));
  return out;
}

BuildResult TrustedBuilder::build(const SourcePackage& source, const BuildConfig& config) const {
  if (!dishonest) return run_build(source, config, keys);

  // A tampering builder produces a different binary but attests it with a
  // perfectly valid signature; only cross-builder comparison exposes it.
  BuildResult result = run_build(source, config, keys);
  result.binary_hash =
      sha256(concat({to_bytes("bin-tampered"), source.source_hash, canonical_config(config)}));
  result.provenance.output_binary_hash = result.binary_hash;
  Statement s = make_provenance(source, config, result.binary_hash);
  sign_statement(s, keys);
  result.provenance = std::get<Provenance>(s);
  return result;
}

TrustedBuildOutcome trusted_build_release(const CodeOwner& owner,
                                          std::span<const TrustedBuilder> builders,
                                          const SourcePackage& source, const BuildConfig& config,
                                          LogClient& log, const ReleaseParams& params) {
  if (builders.empty()) throw TrustedBuildError("no builders supplied");

  TrustedBuildOutcome out;
  std::vector<BuildResult> results;
  for (const TrustedBuilder& b : builders) {
    BuildResult r = b.build(source, config);
    Statement s = r.provenance;
    out.provenance_ids.push_back(statement_id(s));
    out.provenance_indices.push_back(log.append(canonical_encode(s)));
    results.push_back(std::move(r));
  }

  // The owner accepts the build only if every builder attested the same
  // binary for exactly the requested source and configuration.
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Provenance& p = results[i].provenance;
    Statement s = p;
    if (!statement_problems(s).empty()) {
      throw TrustedBuildError("provenance from " + builders[i].identity.name + " is malformed");
    }
    if (p.builder != builders[i].identity.public_key) {
      throw TrustedBuildError("provenance from " + builders[i].identity.name +
                              " is signed by an unexpected key");
    }
    if (p.source_hash != source.source_hash || !config_matches(p, config)) {
      throw TrustedBuildError("provenance from " + builders[i].identity.name +
                              " describes a different build input");
    }
    if (results[i].binary_hash != results[0].binary_hash) {
      throw TrustedBuildError("builders disagree on the binary: " + builders[i].identity.name +
                              " attests " + hex_encode(results[i].binary_hash) + ", " +
                              builders[0].identity.name + " attests " +
                              hex_encode(results[0].binary_hash));
    }
  }

  Endorsement e;
  e.binary_hash = results[0].binary_hash;
  e.claims = params.claims;
  e.issued_at = params.now;
  e.not_after = params.now + params.validity_secs;
  e.to_be_certified_by = params.to_be_certified_by;
  e.provenance_ref = out.provenance_ids[0];

  Statement s = e;
  sign_statement(s, owner.keys);
  out.release.endorsement = std::get<Endorsement>(s);
  out.release.endorsement_id = statement_id(s);
  out.release.leaf_index = log.append(canonical_encode(s));
  out.release.build = results[0];
  return out;
}

LinkageReport verify_linkage(LogView& log, const Hash32& binary_hash,
                             std::span<const PublicKey> trusted_builders) {
  LinkageReport report;
  const Checkpoint cp = log.latest_checkpoint();
  const auto entries = log.entries(0, cp.tree_size);

  std::optional<Endorsement> endorsement;
  std::vector<std::pair<Hash32, Provenance>> provenances;
  for (const Bytes& payload : entries) {
    try {
      Statement s = decode_statement(payload);
      if (auto* e = std::get_if<Endorsement>(&s); e && e->binary_hash == binary_hash) {
        endorsement = *e;
      } else if (auto* p = std::get_if<Provenance>(&s)) {
        provenances.emplace_back(statement_id(s), *p);
      }
    } catch (const DecodeError&) {
      continue;
    }
  }

  if (!endorsement) {
    report.notes.push_back("no endorsement for this binary on the log");
    return report;
  }
  if (!endorsement->provenance_ref) {
    report.notes.push_back("endorsement does not reference a provenance statement");
    return report;
  }
  const auto it = std::find_if(provenances.begin(), provenances.end(), [&](const auto& pair) {
    return pair.first == *endorsement->provenance_ref;
  });
  if (it == provenances.end()) {
    report.notes.push_back("referenced provenance statement is not on the log");
    return report;
  }
  const Provenance& p = it->second;
  if (p.output_binary_hash != binary_hash) {
    report.notes.push_back("provenance attests a different binary");
    return report;
  }
  Statement s = p;
  if (!statement_problems(s).empty()) {
    report.notes.push_back("provenance statement is malformed or badly signed");
    return report;
  }
  if (std::find(trusted_builders.begin(), trusted_builders.end(), p.builder) ==
      trusted_builders.end()) {
    report.notes.push_back("provenance builder key is not trusted");
    return report;
  }
  report.ok = true;
  return report;
}

}  // namespace cct
