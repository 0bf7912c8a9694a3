// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/log.hpp"

#include <json.hpp>

#include <chrono>

namespace cct {
namespace {

using nlohmann::json;

// Upper bound on a single record. Statements are small; anything past this
// is interpreted as a damaged length field, not a giant payload.
constexpr std::uint32_t kMaxRecordLen = 16u << 20;

void put_be32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

std::optional<Signature> signature_from_base64(std::string_view text) {
  auto raw = base64_decode(text);
  if (!raw || raw->size() != kSignatureSize) return std::nullopt;
  Signature sig;
  std::copy(raw->begin(), raw->end(), sig.begin());
  return sig;
}

std::optional<std::vector<Hash32>> hash_list_from_json(const json& j) {
  if (!j.is_array()) return std::nullopt;
  std::vector<Hash32> out;
  for (const auto& item : j) {
    if (!item.is_string()) return std::nullopt;
    auto h = hash32_from_base64(item.get<std::string>());
    if (!h) return std::nullopt;
    out.push_back(*h);
  }
  return out;
}

json hash_list_to_json(const std::vector<Hash32>& hashes) {
  json arr = json::array();
  for (const auto& h : hashes) arr.push_back(base64_encode(h));
  return arr;
}

}  // namespace

Clock wall_clock() {
  return [] {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

Clock fixed_clock(std::int64_t now) {
  return [now] { return now; };
}

Bytes checkpoint_signing_body(const Checkpoint& cp) {
  std::string body = cp.origin + "\n" + std::to_string(cp.tree_size) + "\n" +
                     base64_encode(cp.root_hash) + "\n" + std::to_string(cp.timestamp) + "\n";
  return to_bytes(body);
}

bool verify_checkpoint(const Checkpoint& cp, const PublicKey& log_key) {
  return verify_signature(log_key, checkpoint_signing_body(cp), cp.signature);
}

std::string checkpoint_to_json(const Checkpoint& cp) {
  json j{{"origin", cp.origin},
         {"tree_size", cp.tree_size},
         {"root_hash", base64_encode(cp.root_hash)},
         {"timestamp", cp.timestamp},
         {"signature", base64_encode(cp.signature)}};
  return j.dump();
}

std::optional<Checkpoint> checkpoint_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object() || !j.contains("origin") || !j["origin"].is_string() ||
      !j.contains("tree_size") || !j["tree_size"].is_number_unsigned() ||
      !j.contains("root_hash") || !j["root_hash"].is_string() || !j.contains("timestamp") ||
      !j["timestamp"].is_number_integer() || !j.contains("signature") ||
      !j["signature"].is_string()) {
    return std::nullopt;
  }
  Checkpoint cp;
  cp.origin = j["origin"].get<std::string>();
  cp.tree_size = j["tree_size"].get<std::uint64_t>();
  cp.timestamp = j["timestamp"].get<std::int64_t>();
  auto root = hash32_from_base64(j["root_hash"].get<std::string>());
  auto sig = signature_from_base64(j["signature"].get<std::string>());
  if (!root || !sig) return std::nullopt;
  cp.root_hash = *root;
  cp.signature = *sig;
  return cp;
}

std::string inclusion_proof_to_json(const InclusionProof& p) {
  json j{{"leaf_index", p.leaf_index},
         {"tree_size", p.tree_size},
         {"audit_path", hash_list_to_json(p.audit_path)}};
  return j.dump();
}

std::optional<InclusionProof> inclusion_proof_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (!j.is_object() || !j.contains("leaf_index") || !j["leaf_index"].is_number_unsigned() ||
      !j.contains("tree_size") || !j["tree_size"].is_number_unsigned() ||
      !j.contains("audit_path")) {
    return std::nullopt;
  }
  auto path = hash_list_from_json(j["audit_path"]);
  if (!path) return std::nullopt;
  InclusionProof p;
  p.leaf_index = j["leaf_index"].get<std::uint64_t>();
  p.tree_size = j["tree_size"].get<std::uint64_t>();
  p.audit_path = std::move(*path);
  return p;
}

std::string consistency_proof_to_json(const ConsistencyProof& p) {
  json j{{"old_size", p.old_size}, {"new_size", p.new_size}, {"path", hash_list_to_json(p.path)}};
  return j.dump();
}

std::optional<ConsistencyProof> consistency_proof_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (!j.is_object() || !j.contains("old_size") || !j["old_size"].is_number_unsigned() ||
      !j.contains("new_size") || !j["new_size"].is_number_unsigned() || !j.contains("path")) {
    return std::nullopt;
  }
  auto path = hash_list_from_json(j["path"]);
  if (!path) return std::nullopt;
  ConsistencyProof p;
  p.old_size = j["old_size"].get<std::uint64_t>();
  p.new_size = j["new_size"].get<std::uint64_t>();
  p.path = std::move(*path);
  return p;
}

bool verify_inclusion_against(const Checkpoint& cp, const InclusionProof& proof,
                              std::span<const std::uint8_t> payload) {
  if (proof.tree_size != cp.tree_size) return false;
  return merkle::verify_inclusion(merkle::leaf_hash(payload), proof.leaf_index, proof.tree_size,
                                  proof.audit_path, cp.root_hash);
}

bool verify_consistency_against(const Checkpoint& older, const Checkpoint& newer,
                                const ConsistencyProof& proof) {
  if (proof.old_size != older.tree_size || proof.new_size != newer.tree_size) return false;
  if (older.origin != newer.origin) return false;
  return merkle::verify_consistency(proof.old_size, proof.new_size, proof.path, older.root_hash,
                                    newer.root_hash);
}

MerkleLog::MerkleLog(std::string origin, KeyPair operator_keys, Clock clock)
    : origin_(std::move(origin)), keys_(std::move(operator_keys)), clock_(std::move(clock)) {}

MerkleLog::MerkleLog(MerkleLog&& other) noexcept
    : origin_(std::move(other.origin_)),
      keys_(other.keys_),
      clock_(std::move(other.clock_)),
      payloads_(std::move(other.payloads_)),
      leaf_hashes_(std::move(other.leaf_hashes_)),
      latest_(std::move(other.latest_)),
      root_cache_(std::move(other.root_cache_)),
      dir_(std::move(other.dir_)),
      out_(std::move(other.out_)) {}

MerkleLog MerkleLog::open(const std::filesystem::path& dir, std::string origin,
                          KeyPair operator_keys, Clock clock, LoadReport* report) {
  MerkleLog log(std::move(origin), std::move(operator_keys), std::move(clock));
  LoadReport rep;

  std::filesystem::create_directories(dir);
  const auto entries_path = dir / "entries.log";

  if (std::filesystem::exists(entries_path)) {
    std::ifstream in(entries_path, std::ios::binary);
    if (!in) throw StorageError("cannot read " + entries_path.string(), 0);
    Bytes buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t off = 0;
    std::optional<std::size_t> cut;
    while (off < buf.size()) {
      if (buf.size() - off < 4) {
        cut = off;
        break;
      }
      const std::uint32_t len = get_be32(buf.data() + off);
      if (len == 0 || len > kMaxRecordLen) {
        throw StorageError("entries.log: impossible record length at byte offset " +
                               std::to_string(off),
                           off);
      }
      if (buf.size() - off - 4 < len) {
        cut = off;
        break;
      }
      log.payloads_.emplace_back(buf.begin() + off + 4, buf.begin() + off + 4 + len);
      log.leaf_hashes_.push_back(merkle::leaf_hash(log.payloads_.back()));
      off += 4 + len;
    }
    if (cut) {
      std::filesystem::resize_file(entries_path, *cut);
      rep.truncated_tail = true;
      rep.truncated_at = *cut;
    }
    rep.entries_recovered = log.payloads_.size();
  }

  const auto cp_path = dir / "checkpoint.json";
  if (std::filesystem::exists(cp_path)) {
    std::ifstream in(cp_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto cp = checkpoint_from_json(text);
    rep.checkpoint_recovered = cp && cp->origin == log.origin_ &&
                               cp->tree_size <= log.payloads_.size() &&
                               verify_checkpoint(*cp, log.keys_.public_key()) &&
                               log.root_locked(cp->tree_size) == cp->root_hash;
  }

  log.dir_ = dir;
  log.out_.open(entries_path, std::ios::binary | std::ios::app);
  if (!log.out_) throw StorageError("cannot open " + entries_path.string() + " for append", 0);

  // The sibling checkpoint file follows a latest-wins rule: whatever it held
  // before, it is rewritten now to describe the recovered tree.
  log.latest_ = log.sign_checkpoint_locked(log.payloads_.size());
  log.write_checkpoint_file_locked();

  if (report) *report = rep;
  return log;
}

std::uint64_t MerkleLog::append(Bytes payload) {
  if (payload.empty()) throw std::invalid_argument("refusing to append an empty payload");
  std::unique_lock lock(mu_);
  payloads_.push_back(std::move(payload));
  leaf_hashes_.push_back(merkle::leaf_hash(payloads_.back()));
  if (dir_) append_record_locked(payloads_.back());
  latest_ = sign_checkpoint_locked(payloads_.size());
  if (dir_) write_checkpoint_file_locked();
  return payloads_.size() - 1;
}

std::uint64_t MerkleLog::size() const {
  std::shared_lock lock(mu_);
  return payloads_.size();
}

Bytes MerkleLog::payload(std::uint64_t index) const {
  std::shared_lock lock(mu_);
  if (index >= payloads_.size()) throw std::out_of_range("leaf index past end of log");
  return payloads_[index];
}

std::vector<Bytes> MerkleLog::entries(std::uint64_t start, std::uint64_t end) const {
  std::shared_lock lock(mu_);
  if (start > end || end > payloads_.size())
    throw std::out_of_range("entry range outside the log");
  return std::vector<Bytes>(payloads_.begin() + start, payloads_.begin() + end);
}

Hash32 MerkleLog::root_at(std::uint64_t tree_size) const {
  std::shared_lock lock(mu_);
  if (tree_size > payloads_.size()) throw std::out_of_range("tree size past end of log");
  return root_locked(tree_size);
}

Checkpoint MerkleLog::latest_checkpoint() const {
  std::shared_lock lock(mu_);
  if (latest_) return *latest_;
  return sign_checkpoint_locked(payloads_.size());
}

Checkpoint MerkleLog::sign_checkpoint(std::uint64_t tree_size) const {
  std::shared_lock lock(mu_);
  if (tree_size > payloads_.size()) throw std::out_of_range("tree size past end of log");
  return sign_checkpoint_locked(tree_size);
}

InclusionProof MerkleLog::prove_inclusion(std::uint64_t leaf_index,
                                          std::uint64_t tree_size) const {
  std::shared_lock lock(mu_);
  if (tree_size > payloads_.size()) throw std::out_of_range("tree size past end of log");
  if (leaf_index >= tree_size) throw std::out_of_range("leaf index outside the tree");
  InclusionProof p;
  p.leaf_index = leaf_index;
  p.tree_size = tree_size;
  p.audit_path = merkle::inclusion_path(
      leaf_index, std::span<const Hash32>(leaf_hashes_.data(), tree_size));
  return p;
}

ConsistencyProof MerkleLog::prove_consistency(std::uint64_t old_size,
                                              std::uint64_t new_size) const {
  std::shared_lock lock(mu_);
  if (new_size > payloads_.size()) throw std::out_of_range("tree size past end of log");
  if (old_size > new_size) throw std::out_of_range("old size exceeds new size");
  ConsistencyProof p;
  p.old_size = old_size;
  p.new_size = new_size;
  p.path = merkle::consistency_path(old_size,
                                    std::span<const Hash32>(leaf_hashes_.data(), new_size));
  return p;
}

MerkleLog MerkleLog::clone_prefix(std::uint64_t n) const {
  std::shared_lock lock(mu_);
  if (n > payloads_.size()) throw std::out_of_range("prefix longer than the log");
  MerkleLog copy(origin_, keys_, clock_);
  copy.payloads_.assign(payloads_.begin(), payloads_.begin() + n);
  copy.leaf_hashes_.assign(leaf_hashes_.begin(), leaf_hashes_.begin() + n);
  copy.latest_ = copy.sign_checkpoint_locked(n);
  return copy;
}

void MerkleLog::persist() {
  std::unique_lock lock(mu_);
  if (!dir_) return;
  out_.flush();
  latest_ = sign_checkpoint_locked(payloads_.size());
  write_checkpoint_file_locked();
}

void MerkleLog::append_record_locked(const Bytes& payload) {
  Bytes rec;
  rec.reserve(payload.size() + 4);
  put_be32(rec, static_cast<std::uint32_t>(payload.size()));
  rec.insert(rec.end(), payload.begin(), payload.end());
  out_.write(reinterpret_cast<const char*>(rec.data()), rec.size());
  out_.flush();
  if (!out_) throw StorageError("short write to entries.log", 0);
}

Checkpoint MerkleLog::sign_checkpoint_locked(std::uint64_t tree_size) const {
  Checkpoint cp;
  cp.origin = origin_;
  cp.tree_size = tree_size;
  cp.root_hash = root_locked(tree_size);
  cp.timestamp = clock_();
  cp.signature = keys_.sign(checkpoint_signing_body(cp));
  return cp;
}

Hash32 MerkleLog::root_locked(std::uint64_t tree_size) const {
  std::lock_guard cache_lock(cache_mu_);
  auto it = root_cache_.find(tree_size);
  if (it != root_cache_.end()) return it->second;
  Hash32 root =
      merkle::root_from_leaf_hashes(std::span<const Hash32>(leaf_hashes_.data(), tree_size));
  root_cache_.emplace(tree_size, root);
  return root;
}

void MerkleLog::write_checkpoint_file_locked() {
  if (!dir_) return;
  std::ofstream out(*dir_ / "checkpoint.json", std::ios::trunc);
  out << checkpoint_to_json(*latest_) << "\n";
}

Checkpoint InProcessLogClient::latest_checkpoint() {
  return log_->latest_checkpoint();
}

std::vector<Bytes> InProcessLogClient::entries(std::uint64_t start, std::uint64_t end) {
  try {
    return log_->entries(start, end);
  } catch (const std::out_of_range& e) {
    throw ProofUnavailableError(e.what());
  }
}

InclusionProof InProcessLogClient::inclusion_proof(std::uint64_t leaf_index,
                                                   std::uint64_t tree_size) {
  try {
    return log_->prove_inclusion(leaf_index, tree_size);
  } catch (const std::out_of_range& e) {
    throw ProofUnavailableError(e.what());
  }
}

ConsistencyProof InProcessLogClient::consistency_proof(std::uint64_t old_size,
                                                       std::uint64_t new_size) {
  try {
    return log_->prove_consistency(old_size, new_size);
  } catch (const std::out_of_range& e) {
    throw ProofUnavailableError(e.what());
  }
}

std::uint64_t InProcessLogClient::append(Bytes payload) {
  return log_->append(std::move(payload));
}

}  // namespace cct
