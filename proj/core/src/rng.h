#pragma once

// Seed derivation shared by every randomised component.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace feduhd::detail {

// Engine seeded from an ordered tuple of 64-bit words through std::seed_seq,
// whose mixing is fully specified by the standard.
inline std::mt19937_64 make_engine(std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> parts;
  parts.reserve(words.size() * 2);
  for (std::uint64_t w : words) {
    parts.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
    parts.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(parts.begin(), parts.end());
  return std::mt19937_64(seq);
}

// Stream tags keep independent consumers of one seed apart.
enum StreamTag : std::uint64_t {
  kTagProjection = 0x70726f6a,
  kTagInit = 0x696e6974,
  kTagPartition = 0x70617274,
  kTagChannel = 0x6368616e,
  kTagBlobs = 0x626c6f62,
  kTagSplit = 0x73706c74,
};

}  // namespace feduhd::detail
