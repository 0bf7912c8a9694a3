// Copyright 2026 The cct authors
// SPDX-License-Identifier: Apache-2.0

#include "cct/merkle.hpp"

#include <bit>

#include "cct/crypto.hpp"

namespace cct::merkle {
namespace {

constexpr std::uint8_t kLeafPrefix = 0x00;
constexpr std::uint8_t kNodePrefix = 0x01;

// SUBPROOF from the classic recursive definition. `complete` tracks whether
// the old tree is still a complete subtree of the range under consideration;
// once the recursion descends right, the old root itself must be supplied.
void subproof(std::uint64_t m, std::span<const Hash32> leaves, bool complete,
              std::vector<Hash32>& out) {
  const std::uint64_t n = leaves.size();
  if (m == n) {
    if (!complete) out.push_back(root_from_leaf_hashes(leaves));
    return;
  }
  const std::uint64_t k = split_point(n);
  if (m <= k) {
    subproof(m, leaves.first(k), complete, out);
    out.push_back(root_from_leaf_hashes(leaves.subspan(k)));
  } else {
    subproof(m - k, leaves.subspan(k), false, out);
    out.push_back(root_from_leaf_hashes(leaves.first(k)));
  }
}

}  // namespace

Hash32 leaf_hash(std::span<const std::uint8_t> payload) {
  Bytes buf;
  buf.reserve(payload.size() + 1);
  buf.push_back(kLeafPrefix);
  buf.insert(buf.end(), payload.begin(), payload.end());
  return sha256(buf);
}

Hash32 node_hash(const Hash32& left, const Hash32& right) {
  std::array<std::uint8_t, 65> buf;
  buf[0] = kNodePrefix;
  std::copy(left.begin(), left.end(), buf.begin() + 1);
  std::copy(right.begin(), right.end(), buf.begin() + 33);
  return sha256(buf);
}

Hash32 empty_root() {
  return sha256(std::span<const std::uint8_t>{});
}

std::uint64_t split_point(std::uint64_t n) {
  return std::bit_floor(n - 1);
}

Hash32 root_from_leaf_hashes(std::span<const Hash32> leaves) {
  if (leaves.empty()) return empty_root();
  if (leaves.size() == 1) return leaves[0];
  const std::uint64_t k = split_point(leaves.size());
  return node_hash(root_from_leaf_hashes(leaves.first(k)),
                   root_from_leaf_hashes(leaves.subspan(k)));
}

std::vector<Hash32> inclusion_path(std::uint64_t index, std::span<const Hash32> leaves) {
  std::vector<Hash32> path;
  if (index >= leaves.size()) return path;

  // PATH(m, D[n]): recurse into the half containing the leaf, emit the other
  // half's root on the way back up.
  std::vector<std::pair<std::uint64_t, std::span<const Hash32>>> stack;
  std::uint64_t m = index;
  std::span<const Hash32> range = leaves;
  while (range.size() > 1) {
    const std::uint64_t k = split_point(range.size());
    if (m < k) {
      stack.emplace_back(0, range.subspan(k));
      range = range.first(k);
    } else {
      stack.emplace_back(0, range.first(k));
      m -= k;
      range = range.subspan(k);
    }
  }
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    path.push_back(root_from_leaf_hashes(it->second));
  }
  return path;
}

std::vector<Hash32> consistency_path(std::uint64_t old_size, std::span<const Hash32> leaves) {
  std::vector<Hash32> path;
  if (old_size == 0 || old_size >= leaves.size()) return path;
  subproof(old_size, leaves, true, path);
  return path;
}

bool verify_inclusion(const Hash32& leaf, std::uint64_t leaf_index, std::uint64_t tree_size,
                      std::span<const Hash32> path, const Hash32& root) {
  if (leaf_index >= tree_size) return false;

  // Iterative check: fn walks up from the leaf position, sn from the last
  // leaf. A set low bit in fn means the current node is a right child; equal
  // counters mean the node sits on the right edge of the tree. Both take the
  // sibling from the proof on the left.
  std::uint64_t fn = leaf_index;
  std::uint64_t sn = tree_size - 1;
  Hash32 r = leaf;
  for (const Hash32& p : path) {
    if (sn == 0) return false;
    if ((fn & 1) != 0 || fn == sn) {
      r = node_hash(p, r);
      if ((fn & 1) == 0) {
        // Right-edge node of an unbalanced subtree: skip the levels at which
        // it was promoted without a sibling.
        while (fn != 0 && (fn & 1) == 0) {
          fn >>= 1;
          sn >>= 1;
        }
      }
    } else {
      r = node_hash(r, p);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return sn == 0 && r == root;
}

bool verify_consistency(std::uint64_t old_size, std::uint64_t new_size,
                        std::span<const Hash32> path, const Hash32& old_root,
                        const Hash32& new_root) {
  if (old_size > new_size) return false;
  if (old_size == new_size) return path.empty() && old_root == new_root;
  if (old_size == 0) return path.empty();

  // When the old tree is a complete subtree its root is a node of the new
  // tree and the proof omits it; reinsert it so both recomputations below
  // start from the same first element.
  std::vector<Hash32> full;
  full.reserve(path.size() + 1);
  if (std::has_single_bit(old_size)) full.push_back(old_root);
  full.insert(full.end(), path.begin(), path.end());
  if (full.empty()) return false;

  std::uint64_t fn = old_size - 1;
  std::uint64_t sn = new_size - 1;
  while ((fn & 1) != 0) {
    fn >>= 1;
    sn >>= 1;
  }

  // fr recomputes the old root, sr the new root, from the shared proof
  // nodes. Nodes outside the old tree only feed sr.
  Hash32 fr = full[0];
  Hash32 sr = full[0];
  for (std::size_t i = 1; i < full.size(); ++i) {
    const Hash32& c = full[i];
    if (sn == 0) return false;
    if ((fn & 1) != 0 || fn == sn) {
      fr = node_hash(c, fr);
      sr = node_hash(c, sr);
      if ((fn & 1) == 0) {
        while (fn != 0 && (fn & 1) == 0) {
          fn >>= 1;
          sn >>= 1;
        }
      }
    } else {
      sr = node_hash(sr, c);
    }
    fn >>= 1;
    sn >>= 1;
  }
  return fr == old_root && sr == new_root && sn == 0;
}

}  // namespace cct::merkle
