#pragma once

#include <cstdint>
#include <random>

#include "finsler/geometry.hpp"

namespace finsler {

/// Deterministic sampling built on mt19937_64 with explicit bit-to-double
/// conversion, so identical seeds reproduce byte-identical streams on every
/// platform (std::uniform_real_distribution is implementation-defined and is
/// deliberately not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vec uniform_vec(const Vec& lo, const Vec& hi) {
    Vec v(lo.size());
    for (int i = 0; i < v.size(); ++i) v[i] = uniform(lo[i], hi[i]);
    return v;
  }

  /// Nonzero direction with components in [-1, 1], infinity norm >= 0.2.
  Vec direction(int n) {
    while (true) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = uniform(-1.0, 1.0);
      if (v.lpNorm<Eigen::Infinity>() >= 0.2) return v;
    }
  }

  Vec point_in(const ChartBox& box, double margin_fraction = 0.15) {
    Vec lo = box.lo, hi = box.hi;
    Vec pad = margin_fraction * box.extent();
    return uniform_vec(lo + pad, hi - pad);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace finsler
