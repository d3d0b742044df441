#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace pgkit {

// Fixed-width bitset sized in 64-bit words at compile time. Two words cover
// every supported point count (<= 91) and six words every line count
// (<= 357), so masks are small value types: disjointness and cover tests in
// the enumeration kernels reduce to a handful of word operations.
template <unsigned Words>
struct FixedBitset {
  std::array<std::uint64_t, Words> w{};

  static constexpr int capacity() { return static_cast<int>(Words) * 64; }

  static FixedBitset all_below(int n) {
    FixedBitset m;
    for (unsigned i = 0; i < Words; ++i) {
      int lo = static_cast<int>(i) * 64;
      if (n <= lo) break;
      int k = n - lo;
      m.w[i] = (k >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
    }
    return m;
  }

  void set(int i) { w[static_cast<unsigned>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[static_cast<unsigned>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[static_cast<unsigned>(i) >> 6] >> (i & 63)) & 1u; }

  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }

  bool intersects(const FixedBitset& o) const {
    for (unsigned i = 0; i < Words; ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }

  // All bits of o also set here.
  bool contains(const FixedBitset& o) const {
    for (unsigned i = 0; i < Words; ++i)
      if (o.w[i] & ~w[i]) return false;
    return true;
  }

  // Index of the least set bit, -1 when empty.
  int lowest() const {
    for (unsigned i = 0; i < Words; ++i)
      if (w[i]) return static_cast<int>(i) * 64 + std::countr_zero(w[i]);
    return -1;
  }

  FixedBitset& operator|=(const FixedBitset& o) {
    for (unsigned i = 0; i < Words; ++i) w[i] |= o.w[i];
    return *this;
  }
  FixedBitset& operator&=(const FixedBitset& o) {
    for (unsigned i = 0; i < Words; ++i) w[i] &= o.w[i];
    return *this;
  }
  friend FixedBitset operator|(FixedBitset a, const FixedBitset& b) { return a |= b; }
  friend FixedBitset operator&(FixedBitset a, const FixedBitset& b) { return a &= b; }

  FixedBitset and_not(const FixedBitset& o) const {
    FixedBitset r;
    for (unsigned i = 0; i < Words; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }

  friend bool operator==(const FixedBitset&, const FixedBitset&) = default;

  // Visits set bits in ascending index order.
  template <typename Fn>
  void for_each(Fn fn) const {
    for (unsigned i = 0; i < Words; ++i) {
      std::uint64_t x = w[i];
      while (x) {
        fn(static_cast<int>(i) * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }

  std::vector<int> to_indices() const {
    std::vector<int> v;
    v.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { v.push_back(i); });
    return v;
  }
};

using PointSet = FixedBitset<2>;  // up to 128 points
using LineSet = FixedBitset<6>;   // up to 384 lines

}  // namespace pgkit
