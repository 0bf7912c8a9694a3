// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

// Command line front end. Every subcommand delegates to the library; the
// value added here is flag parsing, key and policy file handling, and exit
// codes that CI can branch on:
//   0  accepted / clean / done
//   1  rejected, alarmed, or refused
//   2  inconclusive, the log could not be reached
//   64 usage error
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cct/actors.hpp"
#include "cct/auditor.hpp"
#include "cct/logservice.hpp"
#include "cct/monitor.hpp"
#include "cct/scenario.hpp"

namespace {

using namespace cct;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

std::int64_t now_or_wall(std::int64_t now) {
  if (now != 0) return now;
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// 64 hex characters are taken as the raw seed; anything else is hashed, so
// "--seed release-signer-2026" is stable across runs without being guessable
// from the key file name.
Seed seed_from_text(const std::string& text) {
  if (auto raw = hash32_from_hex(text)) return *raw;
  return sha256(to_bytes(text));
}

Hash32 parse_hash_arg(const std::string& text) {
  if (auto h = hash32_from_hex(text)) return *h;
  if (auto h = hash32_from_base64(text)) return *h;
  throw std::invalid_argument("--hash wants a 32-byte digest in hex or base64");
}

Bytes read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Reports land under a temporary name first so a reader polling for the
// file never sees a half-written document.
void write_report(const std::filesystem::path& path, std::string_view text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  std::filesystem::rename(tmp, path);
}

void maybe_write_report(const std::string& out_path, const std::string& text) {
  if (!out_path.empty()) write_report(out_path, text);
}

nlohmann::json statement_as_json(const Statement& s) {
  return nlohmann::json::parse(to_string(canonical_encode(s)));
}

KeyPair load_signer(const std::string& path) { return load_private_key(path).keys; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transparency toolkit: append-only log, signed release statements, auditing"};
  app.require_subcommand(1);
  int rc = kExitAccept;

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate an Ed25519 key pair and write key files");
  struct {
    std::string role = "code_owner";
    std::string seed;
    std::string out;
  } kg;
  keygen->add_option("--role", kg.role,
                     "code_owner, first_party, third_party, community, builder, log_operator, "
                     "or monitor");
  keygen->add_option("--seed", kg.seed,
                     "deterministic seed; 64 hex chars are used raw, anything else is hashed");
  keygen->add_option("--out", kg.out, "private key path; the public half goes to <out>.pub")
      ->required();
  keygen->callback([&] {
    const auto role = role_from_name(kg.role);
    if (!role) throw std::invalid_argument("unknown role " + kg.role);
    const KeyPair keys =
        kg.seed.empty() ? KeyPair::generate() : KeyPair::from_seed(seed_from_text(kg.seed));
    save_private_key(kg.out, *role, keys);
    save_public_key(kg.out + ".pub", *role, keys.public_key());
    std::cout << "role: " << role_name(*role) << "\n"
              << "public_key: " << base64_encode(keys.public_key()) << "\n"
              << "wrote: " << kg.out << " and " << kg.out << ".pub\n";
  });

  // serve
  auto* serve = app.add_subcommand("serve", "run the log operator's HTTP service");
  struct {
    std::string key_file;
    std::string origin = "log.local";
    std::string listen = "127.0.0.1";
    int port = 0;
    std::string mode = "honest";
    std::uint64_t fork_at = 0;
    std::vector<std::string> victims;
    std::uint64_t delay = 0;
    std::string storage;
    std::int64_t run_seconds = 0;
    std::string out;
  } sv;
  serve->add_option("--key-file", sv.key_file, "operator private key; a fresh one when omitted");
  serve->add_option("--origin", sv.origin, "log identity stamped into checkpoints");
  serve->add_option("--listen", sv.listen, "listen address");
  serve->add_option("--port", sv.port, "listen port; 0 picks a free one (see --out)");
  serve->add_option("--mode", sv.mode, "honest, split_view, or delayed_visibility");
  serve->add_option("--fork-at", sv.fork_at, "split_view: tree size where the fork diverges");
  serve->add_option("--victim", sv.victims, "client id routed to the dishonest view (repeatable)");
  serve->add_option("--delay", sv.delay, "delayed_visibility: entries withheld from victims");
  serve->add_option("--storage", sv.storage, "persist the log under this directory");
  serve->add_option("--run-seconds", sv.run_seconds, "exit after this long; 0 runs until killed");
  serve->add_option("--out", sv.out, "write base_url, port, origin, and public key as JSON");
  serve->callback([&] {
    ServiceConfig config;
    const auto mode = service_mode_from_name(sv.mode);
    if (!mode) throw std::invalid_argument("unknown mode " + sv.mode);
    config.listen_address = sv.listen;
    config.port = sv.port;
    config.mode = *mode;
    config.fork_at = sv.fork_at;
    config.victim_clients = sv.victims;
    config.delay_entries = sv.delay;
    if (!sv.storage.empty()) config.storage = sv.storage;
    config.origin = sv.origin;
    const KeyPair keys = sv.key_file.empty() ? KeyPair::generate() : load_signer(sv.key_file);

    LogService service(std::move(config), keys);
    service.start();
    std::cout << "listening on " << service.base_url() << " origin=" << sv.origin
              << " mode=" << sv.mode << "\n"
              << std::flush;
    nlohmann::json report{{"base_url", service.base_url()},
                          {"origin", sv.origin},
                          {"mode", sv.mode},
                          {"port", service.port()},
                          {"public_key", base64_encode(service.operator_key())}};
    maybe_write_report(sv.out, report.dump(2) + "\n");
    if (sv.run_seconds > 0) {
      std::this_thread::sleep_for(std::chrono::seconds(sv.run_seconds));
    } else {
      for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
    }
    service.stop();
  });

  // submit
  auto* submit = app.add_subcommand("submit", "append a raw payload to the log");
  struct {
    std::string url;
    std::string payload;
    std::string payload_file;
    std::string payload_b64;
    std::string fork_payload_b64;
    std::string client;
    std::string out;
  } sb;
  submit->add_option("--log-url", sb.url)->required();
  submit->add_option("--payload", sb.payload, "payload as a literal string");
  submit->add_option("--payload-file", sb.payload_file, "payload read from a file");
  submit->add_option("--payload-b64", sb.payload_b64, "payload as base64");
  submit->add_option("--fork-payload-b64", sb.fork_payload_b64,
                     "what a split_view log should append to the forked branch instead");
  submit->add_option("--client-id", sb.client, "value for the X-Client-Id header");
  submit->add_option("--out", sb.out, "write {\"index\": N} here");
  submit->callback([&] {
    Bytes data;
    if (!sb.payload_file.empty()) {
      data = read_file_bytes(sb.payload_file);
    } else if (!sb.payload_b64.empty()) {
      auto decoded = base64_decode(sb.payload_b64);
      if (!decoded) throw std::invalid_argument("--payload-b64 is not valid base64");
      data = *decoded;
    } else if (!sb.payload.empty()) {
      data = to_bytes(sb.payload);
    } else {
      throw std::invalid_argument("one of --payload, --payload-file, --payload-b64 is required");
    }
    HttpLogClient log(sb.url, sb.client);
    std::uint64_t index = 0;
    if (!sb.fork_payload_b64.empty()) {
      auto fork = base64_decode(sb.fork_payload_b64);
      if (!fork) throw std::invalid_argument("--fork-payload-b64 is not valid base64");
      index = log.append_with_fork_payload(data, *fork);
    } else {
      index = log.append(std::move(data));
    }
    std::cout << "index: " << index << "\n";
    maybe_write_report(sb.out, nlohmann::json{{"index", index}}.dump(2) + "\n");
  });

  // checkpoint
  auto* checkpoint = app.add_subcommand("checkpoint", "fetch the latest signed checkpoint");
  struct {
    std::string url;
    std::string log_key_file;
    std::string client;
    std::string out;
  } cp;
  checkpoint->add_option("--log-url", cp.url)->required();
  checkpoint->add_option("--log-key-file", cp.log_key_file,
                         "operator public key; when given the signature is checked");
  checkpoint->add_option("--client-id", cp.client, "value for the X-Client-Id header");
  checkpoint->add_option("--out", cp.out, "write the checkpoint JSON here");
  checkpoint->callback([&] {
    HttpLogClient log(cp.url, cp.client);
    const Checkpoint c = log.latest_checkpoint();
    const std::string text = checkpoint_to_json(c);
    std::cout << text << "\n";
    maybe_write_report(cp.out, text + "\n");
    if (!cp.log_key_file.empty()) {
      const LoadedPublicKey key = load_public_key(cp.log_key_file);
      const bool ok = verify_checkpoint(c, key.key);
      std::cout << "signature: " << (ok ? "valid" : "INVALID") << "\n";
      if (!ok) rc = kExitReject;
    }
  });

  // prove
  auto* prove = app.add_subcommand("prove", "fetch an inclusion or consistency proof");
  struct {
    std::string url;
    std::string client;
    std::string out;
    std::int64_t index = -1;
    std::int64_t size = -1;
    std::int64_t from = -1;
    std::int64_t to = -1;
  } pv;
  prove->add_option("--log-url", pv.url)->required();
  prove->add_option("--index", pv.index, "leaf index (inclusion)");
  prove->add_option("--size", pv.size, "tree size the inclusion proof targets");
  prove->add_option("--from", pv.from, "old tree size (consistency)");
  prove->add_option("--to", pv.to, "new tree size (consistency)");
  prove->add_option("--client-id", pv.client, "value for the X-Client-Id header");
  prove->add_option("--out", pv.out, "write the proof JSON here");
  prove->callback([&] {
    HttpLogClient log(pv.url, pv.client);
    std::string text;
    if (pv.index >= 0 && pv.size >= 0) {
      text = inclusion_proof_to_json(log.inclusion_proof(static_cast<std::uint64_t>(pv.index),
                                                         static_cast<std::uint64_t>(pv.size)));
    } else if (pv.from >= 0 && pv.to >= 0) {
      text = consistency_proof_to_json(log.consistency_proof(static_cast<std::uint64_t>(pv.from),
                                                             static_cast<std::uint64_t>(pv.to)));
    } else {
      throw std::invalid_argument("pass --index with --size, or --from with --to");
    }
    std::cout << text << "\n";
    maybe_write_report(pv.out, text + "\n");
  });

  // endorse
  auto* endorse = app.add_subcommand(
      "endorse", "build a source tree deterministically and log a signed endorsement");
  struct {
    std::string url;
    std::string key_file;
    std::string name = "owner";
    std::string source;
    std::string claims = "production release";
    std::string client;
    std::string out;
    bool open_source = false;
    std::int64_t now = 0;
    std::int64_t validity = 30 * 24 * 3600;
    std::int64_t promise_by = 0;
    std::vector<std::string> co_sign;
    std::string toolchain = "dev-cc";
    std::vector<std::string> build_commands;
    std::vector<std::string> build_flags;
  } ed;
  endorse->add_option("--log-url", ed.url)->required();
  endorse->add_option("--key-file", ed.key_file, "code owner private key")->required();
  endorse->add_option("--name", ed.name, "owner name stamped into the statement");
  endorse->add_option("--source", ed.source, "source file the release is built from")->required();
  endorse->add_option("--claims", ed.claims, "what the owner asserts about this binary");
  endorse->add_flag("--open-source", ed.open_source, "mark the source as published");
  endorse->add_option("--now", ed.now, "issuance time, seconds since epoch; 0 = wall clock");
  endorse->add_option("--validity", ed.validity, "endorsement lifetime in seconds");
  endorse->add_option("--promise-by", ed.promise_by,
                      "promise third-party certification by this time (0 = no promise)");
  endorse->add_option("--co-sign", ed.co_sign, "additional first-party key file (repeatable)");
  endorse->add_option("--toolchain", ed.toolchain, "toolchain id recorded in the provenance");
  endorse->add_option("--build-command", ed.build_commands, "build command (repeatable)");
  endorse->add_option("--build-flag", ed.build_flags, "build flag (repeatable)");
  endorse->add_option("--client-id", ed.client, "value for the X-Client-Id header");
  endorse->add_option("--out", ed.out, "write index, binary hash, endorsement, and provenance");
  endorse->callback([&] {
    const LoadedPrivateKey loaded = load_private_key(ed.key_file);
    const CodeOwner owner{Identity{ed.name, loaded.role, loaded.keys.public_key()}, loaded.keys};
    const SourcePackage source = SourcePackage::make(read_file_bytes(ed.source), ed.open_source);
    BuildConfig config;
    config.toolchain_id = ed.toolchain;
    config.build_commands = ed.build_commands.empty()
                                ? std::vector<std::string>{"cc -o app main.c"}
                                : ed.build_commands;
    config.build_flags = ed.build_flags;
    ReleaseParams params;
    params.now = now_or_wall(ed.now);
    params.validity_secs = ed.validity;
    params.claims = ed.claims;
    if (ed.promise_by != 0) params.to_be_certified_by = ed.promise_by;
    std::vector<KeyPair> co_signers;
    for (const auto& path : ed.co_sign) co_signers.push_back(load_signer(path));

    HttpLogClient log(ed.url, ed.client);
    const ReleaseOutcome outcome = release_l1(owner, {}, source, config, log, params, co_signers);
    std::cout << "binary_hash: " << hex_encode(outcome.build.binary_hash) << "\n"
              << "endorsement_id: " << hex_encode(outcome.endorsement_id) << "\n"
              << "index: " << outcome.leaf_index << "\n";
    nlohmann::json report{{"index", outcome.leaf_index},
                          {"binary_hash", hex_encode(outcome.build.binary_hash)},
                          {"endorsement", statement_as_json(outcome.endorsement)},
                          {"provenance", statement_as_json(outcome.build.provenance)}};
    maybe_write_report(ed.out, report.dump(2) + "\n");
  });

  // certify
  auto* certify = app.add_subcommand(
      "certify", "reproduce a logged release from its provenance, review it, log a certificate");
  struct {
    std::string url;
    std::string key_file;
    std::string name = "certifier";
    std::string category = "third_party";
    std::string methodology = "reporting";
    std::string motivation = "independent";
    std::string source;
    std::string provenance_file;
    std::string client;
    std::string out;
    bool open_source = false;
    std::vector<std::string> detects;
    std::int64_t now = 0;
  } cf;
  certify->add_option("--log-url", cf.url)->required();
  certify->add_option("--key-file", cf.key_file, "certifier private key")->required();
  certify->add_option("--name", cf.name, "certifier name stamped into the certificate");
  certify->add_option("--category", cf.category, "first_party, third_party, or community");
  certify->add_option("--methodology", cf.methodology, "reporting or alerting");
  certify->add_option("--motivation", cf.motivation, "affiliated or independent");
  certify->add_option("--source", cf.source, "source file to review")->required();
  certify->add_flag("--open-source", cf.open_source, "the source under review is published");
  certify->add_option("--provenance-file", cf.provenance_file,
                      "provenance statement JSON, or an endorse --out report holding one")
      ->required();
  certify->add_option("--detects", cf.detects, "defect tag this reviewer can find (repeatable)");
  certify->add_option("--now", cf.now, "issuance time, seconds since epoch; 0 = wall clock");
  certify->add_option("--client-id", cf.client, "value for the X-Client-Id header");
  certify->add_option("--out", cf.out, "write index and certificate as JSON");
  certify->callback([&] {
    const LoadedPrivateKey loaded = load_private_key(cf.key_file);
    const auto category = category_from_name(cf.category);
    if (!category) throw std::invalid_argument("unknown category " + cf.category);
    const auto methodology = methodology_from_name(cf.methodology);
    if (!methodology) throw std::invalid_argument("unknown methodology " + cf.methodology);
    const auto motivation = motivation_from_name(cf.motivation);
    if (!motivation) throw std::invalid_argument("unknown motivation " + cf.motivation);
    const Certifier certifier{CertifierProfile::make(cf.name, loaded.keys.public_key(), *category,
                                                     *methodology, *motivation),
                              loaded.keys, cf.detects};
    const SourcePackage source = SourcePackage::make(read_file_bytes(cf.source), cf.open_source);

    nlohmann::json doc = nlohmann::json::parse(to_string(read_file_bytes(cf.provenance_file)));
    if (doc.contains("provenance")) doc = doc["provenance"];
    const Statement statement = decode_statement(to_bytes(doc.dump()));
    const auto* provenance = std::get_if<Provenance>(&statement);
    if (!provenance) {
      throw std::invalid_argument(cf.provenance_file + " does not hold a provenance statement");
    }

    HttpLogClient log(cf.url, cf.client);
    const auto outcome = review_and_certify(certifier, source, *provenance, log, now_or_wall(cf.now));
    if (!outcome) {
      std::cout << "no certificate published (alerting review found nothing)\n";
      return;
    }
    std::cout << "certificate_id: " << hex_encode(outcome->certificate_id) << "\n"
              << "index: " << outcome->leaf_index << "\n"
              << "kind: " << cert_kind_name(outcome->certificate.kind()) << "\n";
    nlohmann::json report{{"index", outcome->leaf_index},
                          {"certificate", statement_as_json(outcome->certificate)}};
    maybe_write_report(cf.out, report.dump(2) + "\n");
  });

  // verify-binary
  auto* verify = app.add_subcommand("verify-binary",
                                    "audit a binary hash against the log under a policy");
  struct {
    std::string url;
    std::string hash;
    std::string policy_file;
    std::string client;
    std::string out;
    std::int64_t now = 0;
  } vb;
  verify->add_option("--log-url", vb.url)->required();
  verify->add_option("--hash", vb.hash, "binary hash, hex or base64")->required();
  verify->add_option("--policy-file", vb.policy_file, "trust anchors and thresholds")->required();
  verify->add_option("--now", vb.now, "verification time; overrides the policy when nonzero");
  verify->add_option("--client-id", vb.client, "value for the X-Client-Id header");
  verify->add_option("--out", vb.out, "write the verdict JSON here");
  verify->callback([&] {
    const Hash32 binary = parse_hash_arg(vb.hash);
    AuditPolicy policy = load_policy(vb.policy_file);
    if (vb.now != 0) policy.now = vb.now;
    HttpLogClient log(vb.url, vb.client);
    const AuditVerdict verdict = audit(log, binary, policy);
    std::cout << "accepted: " << (verdict.accepted ? "yes" : "no") << "\n"
              << "achieved_level: " << level_name(verdict.achieved_level) << "\n";
    for (const auto& reason : verdict.reasons) std::cout << "reason: " << reason << "\n";
    if (verdict.inconclusive) std::cout << "inconclusive: the log could not be reached\n";
    maybe_write_report(vb.out, verdict_to_json(verdict) + "\n");
    rc = verdict.inconclusive ? kExitInconclusive
                              : (verdict.accepted ? kExitAccept : kExitReject);
  });

  // monitor
  auto* monitor_cmd = app.add_subcommand("monitor", "poll a log and raise alarms on misbehavior");
  struct {
    std::string url;
    std::string key_file;
    std::string log_key_file;
    std::string client;
    std::string out;
    std::string name = "monitor-cli";
    std::int64_t rounds = 1;
    std::int64_t interval_ms = 1000;
    std::int64_t now = 0;
  } mn;
  monitor_cmd->add_option("--log-url", mn.url)->required();
  monitor_cmd->add_option("--key-file", mn.key_file,
                          "monitor private key for signing alarms; a fresh one when omitted");
  monitor_cmd->add_option("--log-key-file", mn.log_key_file,
                          "operator public key; fetched unauthenticated when omitted");
  monitor_cmd->add_option("--name", mn.name, "monitor name stamped into alarms");
  monitor_cmd->add_option("--rounds", mn.rounds, "polls before exiting; 0 runs until killed");
  monitor_cmd->add_option("--interval-ms", mn.interval_ms, "sleep between polls");
  monitor_cmd->add_option("--now", mn.now, "fixed alarm timestamp; 0 = wall clock");
  monitor_cmd->add_option("--client-id", mn.client, "value for the X-Client-Id header");
  monitor_cmd->add_option("--out", mn.out, "write alarms, notices, and verified size as JSON");
  monitor_cmd->callback([&] {
    const KeyPair keys = mn.key_file.empty() ? KeyPair::generate() : load_signer(mn.key_file);
    HttpLogClient log(mn.url, mn.client);
    PublicKey log_key{};
    if (!mn.log_key_file.empty()) {
      log_key = load_public_key(mn.log_key_file).key;
    } else {
      log_key = log.fetch_public_key();
      std::cout << "log key (fetched, unauthenticated): " << base64_encode(log_key) << "\n";
    }
    Monitor monitor(Identity{mn.name, Role::monitor, keys.public_key()}, keys, log_key,
                    mn.now != 0 ? fixed_clock(mn.now) : wall_clock());
    nlohmann::json alarms = nlohmann::json::array();
    nlohmann::json notices = nlohmann::json::array();
    bool alarmed = false;
    for (std::int64_t round = 0; mn.rounds == 0 || round < mn.rounds; ++round) {
      if (round > 0) std::this_thread::sleep_for(std::chrono::milliseconds(mn.interval_ms));
      const PollResult result = monitor.poll(log);
      for (const auto& alarm : result.alarms) {
        alarmed = true;
        const std::string text = alarm_to_json(alarm);
        std::cout << "alarm: " << text << "\n";
        alarms.push_back(nlohmann::json::parse(text));
      }
      for (const auto& notice : result.notices) {
        std::cout << "notice: " << notice << "\n";
        notices.push_back(notice);
      }
    }
    std::cout << "verified_size: " << monitor.verified_size() << "\n";
    nlohmann::json report{{"alarms", alarms},
                          {"notices", notices},
                          {"verified_size", monitor.verified_size()}};
    maybe_write_report(mn.out, report.dump(2) + "\n");
    if (alarmed) rc = kExitReject;
  });

  // gossip
  auto* gossip = app.add_subcommand(
      "gossip", "run several monitors that poll and exchange checkpoints, then cross-check");
  struct {
    std::vector<std::string> urls;
    std::vector<std::string> clients;
    std::string log_key_file;
    std::string out;
    std::int64_t rounds = 1;
    std::int64_t interval_ms = 200;
    std::int64_t now = 0;
    std::size_t quorum = 2;
  } gs;
  gossip->add_option("--log-url", gs.urls, "log to watch (repeatable; a single one is shared)")
      ->required();
  gossip->add_option("--client-id", gs.clients,
                     "X-Client-Id per monitor (repeatable); how a split view is provoked");
  gossip->add_option("--log-key-file", gs.log_key_file,
                     "operator public key; fetched unauthenticated when omitted");
  gossip->add_option("--rounds", gs.rounds, "poll-and-exchange rounds");
  gossip->add_option("--interval-ms", gs.interval_ms, "sleep between rounds");
  gossip->add_option("--now", gs.now, "fixed timestamp for alarms and revocations");
  gossip->add_option("--quorum", gs.quorum, "confirmations needed for a collective distrust list");
  gossip->add_option("--out", gs.out, "write alarms and any distrust list as JSON");
  gossip->callback([&] {
    const std::size_t count = std::max<std::size_t>(
        {std::max(gs.urls.size(), gs.clients.size()), 2});
    std::vector<std::unique_ptr<HttpLogClient>> clients;
    std::vector<LogView*> views;
    for (std::size_t i = 0; i < count; ++i) {
      const std::string& url = gs.urls[std::min(i, gs.urls.size() - 1)];
      const std::string id = i < gs.clients.size() ? gs.clients[i] : "";
      clients.push_back(std::make_unique<HttpLogClient>(url, id));
      views.push_back(clients.back().get());
    }
    const PublicKey log_key = !gs.log_key_file.empty() ? load_public_key(gs.log_key_file).key
                                                       : clients.front()->fetch_public_key();
    const Clock clock = gs.now != 0 ? fixed_clock(gs.now) : wall_clock();
    std::vector<Monitor> monitors;
    for (std::size_t i = 0; i < count; ++i) {
      const std::string name = "gossip-" + std::to_string(i);
      const KeyPair keys = KeyPair::from_seed(seed_from_text(name));
      monitors.emplace_back(Identity{name, Role::monitor, keys.public_key()}, keys, log_key,
                            clock);
    }

    nlohmann::json alarms = nlohmann::json::array();
    bool alarmed = false;
    std::optional<MonitorAlarm> log_misbehavior;
    auto collect = [&](const PollResult& result) {
      for (const auto& alarm : result.alarms) {
        alarmed = true;
        const std::string text = alarm_to_json(alarm);
        std::cout << "alarm: " << text << "\n";
        alarms.push_back(nlohmann::json::parse(text));
        if (!log_misbehavior && (alarm.kind == AlarmKind::split_view ||
                                 alarm.kind == AlarmKind::append_only_violation)) {
          log_misbehavior = alarm;
        }
      }
      for (const auto& notice : result.notices) std::cout << "notice: " << notice << "\n";
    };
    for (std::int64_t round = 0; round < gs.rounds; ++round) {
      if (round > 0) std::this_thread::sleep_for(std::chrono::milliseconds(gs.interval_ms));
      for (std::size_t i = 0; i < count; ++i) collect(monitors[i].poll(*views[i]));
      collect(gossip_round(monitors, views));
    }

    nlohmann::json report{{"alarms", alarms}};
    if (log_misbehavior) {
      const auto list = collective_revocation(monitors, views, *log_misbehavior, gs.quorum,
                                              now_or_wall(gs.now));
      if (list) {
        std::cout << "collective distrust list issued for origin "
                  << list->distrust_origin.value_or("?") << " with " << list->signatures.size()
                  << " signatures\n";
        report["distrust_list"] = statement_as_json(*list);
      } else {
        std::cout << "no monitor quorum for a collective distrust list\n";
      }
    }
    maybe_write_report(gs.out, report.dump(2) + "\n");
    if (alarmed) rc = kExitReject;
  });

  // scenario
  auto* scenario = app.add_subcommand("scenario", "named end-to-end runs with expectations");
  scenario->require_subcommand(1);
  auto* scenario_list = scenario->add_subcommand("list", "print the built-in scenario names");
  scenario_list->callback([] {
    for (const auto& name : scenario_names()) std::cout << name << "\n";
  });
  struct {
    std::string name;
    std::string out;
    std::int64_t now = 1755400000;
    std::uint64_t seed = 7;
  } sr;
  auto* scenario_run = scenario->add_subcommand("run", "run one scenario, check every step");
  scenario_run->add_option("name", sr.name, "one of the names from `scenario list`")->required();
  scenario_run->add_option("--now", sr.now, "virtual start time of the scenario");
  scenario_run->add_option("--seed", sr.seed, "seed for all keys and identities");
  scenario_run->add_option("--out", sr.out, "write the step-by-step result JSON here");
  scenario_run->callback([&] {
    const ScenarioResult result = run_scenario(sr.name, sr.now, sr.seed);
    std::cout << "scenario: " << result.name << "\n";
    for (const auto& step : result.steps) {
      if (step.ok) {
        std::cout << "  ok    " << step.description << "\n";
      } else {
        std::cout << "  FAIL  " << step.description << "\n"
                  << "        expected: " << step.expected << "\n"
                  << "        observed: " << step.observed << "\n";
      }
    }
    std::cout << (result.ok ? "result: pass" : "result: FAIL") << "\n";
    maybe_write_report(sr.out, scenario_result_to_json(result) + "\n");
    if (!result.ok) rc = kExitReject;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "log unreachable: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const KeyFileError& e) {
    std::cerr << "key file: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PolicyError& e) {
    std::cerr << "policy: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DecodeError& e) {
    std::cerr << "statement: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitReject;
  }
  return rc;
}
