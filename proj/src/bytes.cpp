// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/bytes.hpp"

#include <sodium.h>

namespace cct {

Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

std::string to_string(std::span<const std::uint8_t> b) {
  return std::string(b.begin(), b.end());
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(sodium_base64_encoded_len(data.size(), sodium_base64_VARIANT_ORIGINAL), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(),
                    sodium_base64_VARIANT_ORIGINAL);
  out.resize(out.find('\0'));
  return out;
}

std::optional<Bytes> base64_decode(std::string_view text) {
  Bytes out(text.size() / 4 * 3 + 3);
  std::size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(),
                        /*ignore=*/nullptr, &written, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0) {
    return std::nullopt;
  }
  if (end != text.data() + text.size()) return std::nullopt;
  out.resize(written);
  return out;
}

std::string hex_encode(std::span<const std::uint8_t> data) {
  std::string out(data.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), data.data(), data.size());
  out.resize(data.size() * 2);
  return out;
}

std::optional<Bytes> hex_decode(std::string_view text) {
  Bytes out(text.size() / 2 + 1);
  std::size_t written = 0;
  const char* end = nullptr;
  if (sodium_hex2bin(out.data(), out.size(), text.data(), text.size(),
                     /*ignore=*/nullptr, &written, &end) != 0) {
    return std::nullopt;
  }
  if (end != text.data() + text.size()) return std::nullopt;
  out.resize(written);
  return out;
}

std::optional<Hash32> hash32_from_bytes(std::span<const std::uint8_t> b) {
  if (b.size() != 32) return std::nullopt;
  Hash32 h;
  std::copy(b.begin(), b.end(), h.begin());
  return h;
}

std::optional<Hash32> hash32_from_base64(std::string_view text) {
  auto raw = base64_decode(text);
  if (!raw) return std::nullopt;
  return hash32_from_bytes(*raw);
}

std::optional<Hash32> hash32_from_hex(std::string_view text) {
  auto raw = hex_decode(text);
  if (!raw) return std::nullopt;
  return hash32_from_bytes(*raw);
}

Bytes concat(std::initializer_list<std::span<const std::uint8_t>> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  Bytes out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace cct
