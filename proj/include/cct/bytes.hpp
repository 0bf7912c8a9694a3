// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cct {

using Bytes = std::vector<std::uint8_t>;
using Hash32 = std::array<std::uint8_t, 32>;

Bytes to_bytes(std::string_view s);
std::string to_string(std::span<const std::uint8_t> b);

std::string base64_encode(std::span<const std::uint8_t> data);
std::optional<Bytes> base64_decode(std::string_view text);

std::string hex_encode(std::span<const std::uint8_t> data);
std::optional<Bytes> hex_decode(std::string_view text);

/// Strict length-checked conversions for 32-byte digests.
std::optional<Hash32> hash32_from_bytes(std::span<const std::uint8_t> b);
std::optional<Hash32> hash32_from_base64(std::string_view text);
std::optional<Hash32> hash32_from_hex(std::string_view text);

Bytes concat(std::initializer_list<std::span<const std::uint8_t>> parts);

}  // namespace cct
