#pragma once

#include <cstdint>

namespace pgkit {

// Binomial coefficient; exact for every size this library touches.
constexpr std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// 0-based rank of the pair (a < b) in lexicographic enumeration of all
// pairs from [0, n).
constexpr std::uint64_t pair_rank(int a, int b, int n) {
  std::uint64_t r = 0;
  for (int x = 0; x < a; ++x) r += static_cast<std::uint64_t>(n - 1 - x);
  return r + static_cast<std::uint64_t>(b - a - 1);
}

// 0-based rank of the triple (a < b < c) in lexicographic enumeration of all
// triples from [0, n).
constexpr std::uint64_t triple_rank(int a, int b, int c, int n) {
  std::uint64_t r = 0;
  for (int x = 0; x < a; ++x) r += binom(n - 1 - x, 2);
  for (int y = a + 1; y < b; ++y) r += static_cast<std::uint64_t>(n - 1 - y);
  return r + static_cast<std::uint64_t>(c - b - 1);
}

}  // namespace pgkit
