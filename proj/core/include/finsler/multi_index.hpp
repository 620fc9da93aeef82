#pragma once

#include <cstdint>
#include <vector>

namespace finsler {

/// Packed monomial exponents for a jet in up to 8 base dimensions.
/// Nibble i (i < 8) holds the exponent of the i-th x-variable, nibble 8+i the
/// exponent of the i-th y-variable. Monomial product is plain integer addition
/// as long as no exponent reaches 16, which the truncation orders guarantee.
using MonomialKey = std::uint64_t;

inline constexpr int kMaxDim = 8;

inline MonomialKey x_monomial(int i) { return MonomialKey{1} << (4 * i); }
inline MonomialKey y_monomial(int i) { return MonomialKey{1} << (4 * (8 + i)); }

inline int exponent_of(MonomialKey key, int nibble) {
  return static_cast<int>((key >> (4 * nibble)) & 0xF);
}

inline int x_exponent(MonomialKey key, int i) { return exponent_of(key, i); }
inline int y_exponent(MonomialKey key, int i) { return exponent_of(key, 8 + i); }

// Nibble sums are safe: each partial sum stays below 16 because total degrees
// are capped well under 15 by the truncation orders.
inline int x_degree(MonomialKey key) {
  std::uint32_t lo = static_cast<std::uint32_t>(key & 0xFFFFFFFFu);
  return static_cast<int>(((lo * 0x11111111u) >> 28) & 0xFu);
}
inline int y_degree(MonomialKey key) {
  std::uint32_t hi = static_cast<std::uint32_t>(key >> 32);
  return static_cast<int>(((hi * 0x11111111u) >> 28) & 0xFu);
}

/// A multi-index over the base dimensions, one entry per coordinate.
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

inline MonomialKey pack_key(const MultiIndex& ax, const MultiIndex& ay) {
  MonomialKey key = 0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    key += static_cast<MonomialKey>(ax[i]) << (4 * i);
  for (std::size_t i = 0; i < ay.size(); ++i)
    key += static_cast<MonomialKey>(ay[i]) << (4 * (8 + i));
  return key;
}

inline double factorial_of(const MultiIndex& alpha) {
  double f = 1.0;
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) f *= k;
  return f;
}

}  // namespace finsler
