// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "cct/log.hpp"
#include "cct/statements.hpp"

namespace cct {

/// A source tree, reduced to what the flows need: its content hash, whether
/// it is published, and an optional scripted flaw that simulated reviews can
/// discover.
struct SourcePackage {
  Bytes content;
  Hash32 source_hash{};
  bool open_sourced = false;
  std::optional<std::string> planted_defect;

  static SourcePackage make(Bytes content, bool open_sourced = false,
                            std::optional<std::string> planted_defect = std::nullopt);
};

struct BuildConfig {
  std::string toolchain_id;
  std::vector<std::string> build_commands;
  std::vector<std::string> build_flags;
};

/// Canonical JSON of the build configuration, the encoding the simulated
/// compiler mixes into the output hash.
Bytes canonical_config(const BuildConfig& config);

struct BuildResult {
  Hash32 binary_hash{};
  Provenance provenance;
};

/// Simulated deterministic compile: the output is a hash over the source
/// and the canonical build configuration, so identical inputs give an
/// identical "binary" on any machine. The provenance is signed by the
/// builder key.
BuildResult run_build(const SourcePackage& source, const BuildConfig& config,
                      const KeyPair& builder_keys);

struct ReviewVerdict {
  bool approved = true;
  std::string findings;
  std::optional<std::string> discovered_defect;
};

/// A reviewer with a fixed detection repertoire: the review finds the
/// planted defect iff its tag appears in `detects`.
struct Certifier {
  CertifierProfile profile;
  KeyPair keys;
  std::vector<std::string> detects;

  ReviewVerdict review(const SourcePackage& source) const;
};

struct CodeOwner {
  Identity identity;
  KeyPair keys;
};

class ReleaseBlockedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BuildMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrustedBuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReleaseParams {
  std::int64_t now = 0;
  std::int64_t validity_secs = 30 * 24 * 3600;
  std::string claims = "production release";
  std::optional<std::int64_t> to_be_certified_by;
};

struct ReleaseOutcome {
  std::uint64_t leaf_index = 0;
  Hash32 endorsement_id{};
  Endorsement endorsement;
  BuildResult build;
};

/// The basic release flow: internal review, deterministic build, signed
/// endorsement, appended to the log. Internal reviewers that find the
/// planted defect block the release. Extra first-party keys in `co_signers`
/// countersign the endorsement.
ReleaseOutcome release_l1(const CodeOwner& owner, std::span<const Certifier> internal_reviewers,
                          const SourcePackage& source, const BuildConfig& config, LogClient& log,
                          const ReleaseParams& params, std::span<const KeyPair> co_signers = {});

struct CertificationOutcome {
  std::uint64_t leaf_index = 0;
  Hash32 certificate_id{};
  ReviewCertificate certificate;
};

/// Independent review against a release's provenance: reproduce the build,
/// compare outputs, then review the source. Reporting certifiers always
/// publish a certificate; alerting certifiers publish only when they find a
/// defect (nullopt otherwise). Community certifiers refuse sources that are
/// not open.
std::optional<CertificationOutcome> review_and_certify(const Certifier& certifier,
                                                       const SourcePackage& source,
                                                       const Provenance& provenance,
                                                       LogClient& log, std::int64_t now);

/// Publishes a follow-up to a logged alerting certificate, referencing it by
/// statement id and naming the (typically fixed) subject.
CertificationOutcome issue_followup(const Certifier& certifier, const Hash32& alert_id,
                                    const Hash32& subject_binary, const Hash32& subject_source,
                                    std::string opinion, LogClient& log, std::int64_t now);

struct TrustedBuilder {
  Identity identity;
  KeyPair keys;
  bool dishonest = false;

  BuildResult build(const SourcePackage& source, const BuildConfig& config) const;
};

struct TrustedBuildOutcome {
  ReleaseOutcome release;
  std::vector<std::uint64_t> provenance_indices;
  std::vector<Hash32> provenance_ids;
};

/// Release through independent builders: every builder compiles the same
/// source, signs and logs a provenance statement, and returns the binary.
/// The owner endorses only if all builders attest the identical binary;
/// the endorsement carries a reference to the logged provenance. Builder
/// provenances reach the log even when the release is then abandoned, which
/// is the point: the attempt is public.
TrustedBuildOutcome trusted_build_release(const CodeOwner& owner,
                                          std::span<const TrustedBuilder> builders,
                                          const SourcePackage& source, const BuildConfig& config,
                                          LogClient& log, const ReleaseParams& params);

struct LinkageReport {
  bool ok = false;
  std::vector<std::string> notes;
};

/// Client-side check that a binary's endorsement points at a logged
/// provenance signed by a trusted builder, without rebuilding anything.
LinkageReport verify_linkage(LogView& log, const Hash32& binary_hash,
                             std::span<const PublicKey> trusted_builders);

}  // namespace cct
