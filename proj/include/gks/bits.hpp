// bits.hpp -- packed bit strings and small combinatorial helpers.
//
// Short bit strings (table rows, block words) are packed into a Mask:
// bit p of the mask holds position p. All positions and row indices in
// this library are 0-based; text I/O and reports render them 1-based.

#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gks {

using Mask = std::uint32_t;

// Longest bit string representable as a Mask. Large enough for any table
// whose occupancy set (2^m entries) is still tractable.
inline constexpr int kMaxBits = 24;

inline int popcount(Mask m) { return std::popcount(m); }

inline bool has_bit(Mask m, int pos) { return (m >> pos) & 1u; }

inline Mask flip_bit(Mask m, int pos) { return m ^ (Mask{1} << pos); }

// "0100..." with position 0 first.
inline std::string mask_to_string(Mask m, int length) {
  std::string s(length, '0');
  for (int p = 0; p < length; ++p) {
    if (has_bit(m, p)) s[p] = '1';
  }
  return s;
}

// Positions of set bits, ascending.
inline std::vector<int> mask_positions(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline Mask mask_from_positions(std::span<const int> positions) {
  Mask m = 0;
  for (int p : positions) m |= Mask{1} << p;
  return m;
}

// Packs word[0..length) of 0/1 values, word[i] -> bit i.
inline Mask pack_word(std::span<const std::uint8_t> word) {
  assert(word.size() <= 32);
  Mask m = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i]) m |= Mask{1} << i;
  }
  return m;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

// All k-subsets of {0..n-1} as masks in increasing numeric order, which on
// fixed-popcount masks is colexicographic order on the subsets.
inline std::vector<Mask> subsets_colex(int n, int k) {
  assert(n >= 0 && n < 32);
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  out.reserve(binomial(n, k));
  const Mask limit = Mask{1} << n;
  for (Mask v = (Mask{1} << k) - 1; v < limit;) {
    out.push_back(v);
    // Gosper's hack: next mask with the same popcount.
    Mask c = v & (~v + 1);
    Mask r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

}  // namespace gks
