// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "cct/bytes.hpp"

namespace cct::merkle {

/// Hash of a leaf payload: SHA-256(0x00 || payload). The prefix byte keeps
/// leaves and interior nodes in separate hash domains, so a leaf can never be
/// reinterpreted as a subtree root (second-preimage hardening).
Hash32 leaf_hash(std::span<const std::uint8_t> payload);

/// Hash of an interior node: SHA-256(0x01 || left || right).
Hash32 node_hash(const Hash32& left, const Hash32& right);

/// Root of the empty tree: SHA-256 of the empty string.
Hash32 empty_root();

/// Largest power of two strictly less than n. Requires n >= 2.
std::uint64_t split_point(std::uint64_t n);

/// Root over already-hashed leaves, via the recursive split at split_point.
Hash32 root_from_leaf_hashes(std::span<const Hash32> leaves);

/// Audit path proving that leaf `index` is covered by the root over `leaves`.
/// Ordered from the leaf's sibling up towards the root.
std::vector<Hash32> inclusion_path(std::uint64_t index, std::span<const Hash32> leaves);

/// Path proving that the tree over the first old_size leaves is a prefix of
/// the tree over all of `leaves`. Empty when old_size == leaves.size() or
/// old_size == 0.
std::vector<Hash32> consistency_path(std::uint64_t old_size, std::span<const Hash32> leaves);

bool verify_inclusion(const Hash32& leaf, std::uint64_t leaf_index, std::uint64_t tree_size,
                      std::span<const Hash32> path, const Hash32& root);

bool verify_consistency(std::uint64_t old_size, std::uint64_t new_size,
                        std::span<const Hash32> path, const Hash32& old_root,
                        const Hash32& new_root);

}  // namespace cct::merkle
