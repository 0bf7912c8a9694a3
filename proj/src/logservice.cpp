// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/logservice.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "cct/bytes.hpp"

namespace cct {

namespace {

using nlohmann::json;

std::optional<std::uint64_t> param_u64(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const std::string text = req.get_param_value(name);
  try {
    std::size_t pos = 0;
    const std::uint64_t value = std::stoull(text, &pos);
    if (pos != text.size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void answer_json(httplib::Response& res, std::string body) {
  res.set_content(std::move(body), "application/json");
}

void answer_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  answer_json(res, json{{"error", message}}.dump());
}

Bytes flip_last_byte(Bytes payload) {
  if (!payload.empty()) payload.back() ^= 0x01;
  return payload;
}

MerkleLog open_main(const ServiceConfig& config, KeyPair keys, const Clock& clock) {
  if (config.storage)
    return MerkleLog::open(*config.storage, config.origin, std::move(keys), clock);
  return MerkleLog(config.origin, std::move(keys), clock);
}

}  // namespace

std::string_view service_mode_name(ServiceMode mode) {
  switch (mode) {
    case ServiceMode::honest: return "honest";
    case ServiceMode::split_view: return "split_view";
    case ServiceMode::delayed_visibility: return "delayed_visibility";
  }
  return "honest";
}

std::optional<ServiceMode> service_mode_from_name(std::string_view name) {
  if (name == "honest") return ServiceMode::honest;
  if (name == "split_view") return ServiceMode::split_view;
  if (name == "delayed_visibility") return ServiceMode::delayed_visibility;
  return std::nullopt;
}

struct LogService::Impl {
  httplib::Server server;
};

struct LogService::Routed {
  MerkleLog* log = nullptr;
  // Set for delayed-visibility victims: the largest tree size this client
  // may learn about.
  std::optional<std::uint64_t> visible;
};

LogService::LogService(ServiceConfig config, KeyPair operator_keys, Clock clock)
    : config_(std::move(config)),
      clock_(std::move(clock)),
      main_(open_main(config_, std::move(operator_keys), clock_)),
      impl_(std::make_unique<Impl>()) {}

LogService::~LogService() { stop(); }

std::string LogService::base_url() const {
  return "http://" + config_.listen_address + ":" + std::to_string(port_);
}

LogService::Routed LogService::route(const std::string& client_id) {
  const bool victim = !client_id.empty() &&
                      std::find(config_.victim_clients.begin(), config_.victim_clients.end(),
                                client_id) != config_.victim_clients.end();
  std::lock_guard lock(mu_);
  if (victim && config_.mode == ServiceMode::split_view && fork_) return {&*fork_, std::nullopt};
  if (victim && config_.mode == ServiceMode::delayed_visibility) {
    const std::uint64_t size = main_.size();
    const std::uint64_t visible =
        size > config_.delay_entries ? size - config_.delay_entries : 0;
    return {&main_, visible};
  }
  return {&main_, std::nullopt};
}

std::uint64_t LogService::handle_append(const Bytes& payload,
                                        const std::optional<Bytes>& fork_payload) {
  std::lock_guard lock(mu_);
  const std::uint64_t index = main_.append(payload);
  if (config_.mode == ServiceMode::split_view) {
    if (!fork_ && main_.size() > config_.fork_at) {
      fork_.emplace(main_.clone_prefix(config_.fork_at));
      // Entries appended before the service was up still need fork twins.
      for (std::uint64_t i = config_.fork_at; i + 1 < main_.size(); ++i)
        fork_->append(flip_last_byte(main_.payload(i)));
    }
    if (fork_) fork_->append(fork_payload ? *fork_payload : flip_last_byte(payload));
  }
  return index;
}

void LogService::start() {
  auto& server = impl_->server;

  server.Get("/public-key", [this](const httplib::Request&, httplib::Response& res) {
    answer_json(res, json{{"origin", config_.origin},
                          {"public_key", base64_encode(main_.operator_key())}}
                         .dump());
  });

  server.Get("/checkpoint", [this](const httplib::Request& req, httplib::Response& res) {
    const auto routed = route(req.get_header_value("X-Client-Id"));
    const Checkpoint cp = routed.visible ? routed.log->sign_checkpoint(*routed.visible)
                                         : routed.log->latest_checkpoint();
    answer_json(res, checkpoint_to_json(cp));
  });

  server.Get("/entries", [this](const httplib::Request& req, httplib::Response& res) {
    const auto start = param_u64(req, "start");
    const auto end = param_u64(req, "end");
    if (!start || !end) return answer_error(res, 400, "start and end must be integers");
    const auto routed = route(req.get_header_value("X-Client-Id"));
    if (routed.visible && *end > *routed.visible)
      return answer_error(res, 404, "range not yet visible");
    try {
      json list = json::array();
      for (const auto& payload : routed.log->entries(*start, *end))
        list.push_back(base64_encode(payload));
      answer_json(res, json{{"entries", std::move(list)}}.dump());
    } catch (const std::out_of_range& e) {
      answer_error(res, 404, e.what());
    }
  });

  server.Get("/proof/inclusion", [this](const httplib::Request& req, httplib::Response& res) {
    const auto index = param_u64(req, "index");
    const auto size = param_u64(req, "size");
    if (!index || !size) return answer_error(res, 400, "index and size must be integers");
    const auto routed = route(req.get_header_value("X-Client-Id"));
    if (routed.visible && *size > *routed.visible)
      return answer_error(res, 404, "tree size not yet visible");
    try {
      answer_json(res, inclusion_proof_to_json(routed.log->prove_inclusion(*index, *size)));
    } catch (const std::out_of_range& e) {
      answer_error(res, 404, e.what());
    }
  });

  server.Get("/proof/consistency", [this](const httplib::Request& req, httplib::Response& res) {
    const auto from = param_u64(req, "from");
    const auto to = param_u64(req, "to");
    if (!from || !to) return answer_error(res, 400, "from and to must be integers");
    const auto routed = route(req.get_header_value("X-Client-Id"));
    if (routed.visible && *to > *routed.visible)
      return answer_error(res, 404, "tree size not yet visible");
    try {
      answer_json(res, consistency_proof_to_json(routed.log->prove_consistency(*from, *to)));
    } catch (const std::out_of_range& e) {
      answer_error(res, 404, e.what());
    }
  });

  server.Post("/entries", [this](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("payload") ||
        !body["payload"].is_string())
      return answer_error(res, 400, "body must be {\"payload\": base64}");
    const auto payload = base64_decode(body["payload"].get<std::string>());
    if (!payload) return answer_error(res, 400, "payload is not valid base64");

    std::optional<Bytes> fork_payload;
    if (req.has_header("X-Fork-Payload")) {
      fork_payload = base64_decode(req.get_header_value("X-Fork-Payload"));
      if (!fork_payload) return answer_error(res, 400, "X-Fork-Payload is not valid base64");
    }
    try {
      const std::uint64_t index = handle_append(*payload, fork_payload);
      answer_json(res, json{{"index", index}}.dump());
    } catch (const std::invalid_argument& e) {
      answer_error(res, 400, e.what());
    }
  });

  if (config_.port == 0) {
    port_ = impl_->server.bind_to_any_port(config_.listen_address);
    if (port_ <= 0) throw std::runtime_error("cannot bind " + config_.listen_address);
  } else {
    if (!impl_->server.bind_to_port(config_.listen_address, config_.port))
      throw std::runtime_error("cannot bind " + config_.listen_address + ":" +
                               std::to_string(config_.port));
    port_ = config_.port;
  }
  server_thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void LogService::stop() {
  if (server_thread_.joinable()) {
    impl_->server.stop();
    server_thread_.join();
  }
}

struct HttpLogClient::Impl {
  explicit Impl(const std::string& base_url) : client(base_url) {
    client.set_connection_timeout(2, 0);
    client.set_read_timeout(10, 0);
  }
  httplib::Client client;
};

HttpLogClient::HttpLogClient(std::string base_url, std::string client_id)
    : base_url_(std::move(base_url)),
      client_id_(std::move(client_id)),
      impl_(std::make_unique<Impl>(base_url_)) {}

HttpLogClient::~HttpLogClient() = default;

std::string HttpLogClient::get(const std::string& path) {
  httplib::Headers headers;
  if (!client_id_.empty()) headers.emplace("X-Client-Id", client_id_);
  const auto res = impl_->client.Get(path, headers);
  if (!res) throw TransportError("GET " + path + ": " + httplib::to_string(res.error()));
  if (res->status >= 400) throw ProofUnavailableError("log refused " + path + ": " + res->body);
  return res->body;
}

std::string HttpLogClient::post(const std::string& path, const std::string& body,
                                const std::optional<Bytes>& fork_payload) {
  httplib::Headers headers;
  if (!client_id_.empty()) headers.emplace("X-Client-Id", client_id_);
  if (fork_payload) headers.emplace("X-Fork-Payload", base64_encode(*fork_payload));
  const auto res = impl_->client.Post(path, headers, body, "application/json");
  if (!res) throw TransportError("POST " + path + ": " + httplib::to_string(res.error()));
  if (res->status >= 400) throw ProofUnavailableError("log refused " + path + ": " + res->body);
  return res->body;
}

Checkpoint HttpLogClient::latest_checkpoint() {
  auto cp = checkpoint_from_json(get("/checkpoint"));
  if (!cp) throw TransportError("malformed checkpoint from " + base_url_);
  return *cp;
}

std::vector<Bytes> HttpLogClient::entries(std::uint64_t start, std::uint64_t end) {
  const json body = json::parse(
      get("/entries?start=" + std::to_string(start) + "&end=" + std::to_string(end)), nullptr,
      false);
  if (body.is_discarded() || !body.is_object() || !body.contains("entries") ||
      !body["entries"].is_array())
    throw TransportError("malformed entries response from " + base_url_);
  std::vector<Bytes> out;
  for (const auto& item : body["entries"]) {
    if (!item.is_string()) throw TransportError("malformed entry in response");
    auto payload = base64_decode(item.get<std::string>());
    if (!payload) throw TransportError("entry payload is not valid base64");
    out.push_back(std::move(*payload));
  }
  return out;
}

InclusionProof HttpLogClient::inclusion_proof(std::uint64_t leaf_index, std::uint64_t tree_size) {
  auto proof = inclusion_proof_from_json(get("/proof/inclusion?index=" +
                                             std::to_string(leaf_index) +
                                             "&size=" + std::to_string(tree_size)));
  if (!proof) throw TransportError("malformed inclusion proof from " + base_url_);
  return *proof;
}

ConsistencyProof HttpLogClient::consistency_proof(std::uint64_t old_size,
                                                  std::uint64_t new_size) {
  auto proof = consistency_proof_from_json(get("/proof/consistency?from=" +
                                               std::to_string(old_size) +
                                               "&to=" + std::to_string(new_size)));
  if (!proof) throw TransportError("malformed consistency proof from " + base_url_);
  return *proof;
}

namespace {

std::uint64_t parse_index_response(const std::string& text, const std::string& base_url) {
  const json body = json::parse(text, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("index") ||
      !body["index"].is_number_unsigned())
    throw TransportError("malformed append response from " + base_url);
  return body["index"].get<std::uint64_t>();
}

}  // namespace

std::uint64_t HttpLogClient::append(Bytes payload) {
  return parse_index_response(
      post("/entries", json{{"payload", base64_encode(payload)}}.dump(), std::nullopt),
      base_url_);
}

std::uint64_t HttpLogClient::append_with_fork_payload(const Bytes& payload,
                                                      const Bytes& fork_payload) {
  return parse_index_response(
      post("/entries", json{{"payload", base64_encode(payload)}}.dump(), fork_payload),
      base_url_);
}

PublicKey HttpLogClient::fetch_public_key() {
  const json body = json::parse(get("/public-key"), nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("public_key") ||
      !body["public_key"].is_string())
    throw TransportError("malformed public-key response from " + base_url_);
  const auto key = hash32_from_base64(body["public_key"].get<std::string>());
  if (!key) throw TransportError("public key is not a valid key");
  return *key;
}

}  // namespace cct
