// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>

#include "cct/bytes.hpp"

namespace cct {

inline constexpr std::size_t kSeedSize = 32;
inline constexpr std::size_t kPublicKeySize = 32;
inline constexpr std::size_t kSignatureSize = 64;

using Seed = std::array<std::uint8_t, kSeedSize>;
using PublicKey = std::array<std::uint8_t, kPublicKeySize>;
using Signature = std::array<std::uint8_t, kSignatureSize>;

Hash32 sha256(std::span<const std::uint8_t> data);
Hash32 sha256(std::string_view data);

/// Ed25519 signing key. Derived deterministically from a 32-byte seed so that
/// actors in scripted scenarios are reproducible.
class KeyPair {
 public:
  static KeyPair generate();
  static KeyPair from_seed(const Seed& seed);

  const Seed& seed() const { return seed_; }
  const PublicKey& public_key() const { return public_; }

  Signature sign(std::span<const std::uint8_t> message) const;

 private:
  KeyPair() = default;

  Seed seed_{};
  PublicKey public_{};
  std::array<std::uint8_t, 64> secret_{};
};

bool verify_signature(const PublicKey& key, std::span<const std::uint8_t> message,
                      const Signature& sig);

}  // namespace cct
