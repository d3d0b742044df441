#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgkit/geometry.hpp"

namespace pgkit {

// A spread: q^2+1 pairwise disjoint lines partitioning the point set.
struct Spread {
  std::vector<int> lines;  // sorted ascending
  PointSet covered;        // equals the all-points mask

  friend bool operator==(const Spread&, const Spread&) = default;
};

// A packing: q^2+q+1 pairwise line-disjoint spreads partitioning the line
// set. Spread indices refer to the enumerated spread list.
struct Packing {
  std::vector<int> spreads;  // sorted ascending
  LineSet covered;           // equals the all-lines mask

  friend bool operator==(const Packing&, const Packing&) = default;
};

struct EnumOptions {
  int jobs = 1;  // >1 splits the first branching level across workers
};

// True iff the given lines partition the point set (pairwise disjoint with
// full cover). Throws Error for out-of-range indices.
bool is_spread(const Geometry& g, std::span<const int> lines);

// True iff the given spreads (indices into `all`) partition the line set.
bool is_packing(const Geometry& g, const std::vector<Spread>& all,
                std::span<const int> spreads);

// All spreads, each with sorted line indices, the sequence sorted
// lexicographically. Exact-cover backtracking with forced choice: always
// branch on the lowest uncovered point, which eliminates permutation
// duplicates by construction. Requires a PG(3,q)-shaped geometry.
std::vector<Spread> enumerate_spreads(const Geometry& g, const EnumOptions& opt = {});

// All packings over the enumerated spread list, sorted lexicographically;
// forced choice on the lowest uncovered line.
std::vector<Packing> enumerate_packings(const Geometry& g, const std::vector<Spread>& spreads,
                                        const EnumOptions& opt = {});

// Independent spread oracle for q = 2: scans all C(num_lines, 5) quintuples
// and filters through is_spread. Returns the surviving spreads (same order
// as enumerate_spreads) and reports the number of quintuples scanned.
// Throws Error when the geometry's order is not 2.
struct QuintupleScan {
  std::vector<Spread> spreads;
  std::uint64_t scanned = 0;
};
QuintupleScan spread_oracle_quintuples(const Geometry& g, const EnumOptions& opt = {});

// Independent packing oracle: enumerates all (q^2+q+1)-cliques of the
// spread-disjointness graph in ascending vertex order. Returns packings in
// the same order as enumerate_packings.
std::vector<Packing> packing_oracle_cliques(const Geometry& g, const std::vector<Spread>& spreads,
                                            const EnumOptions& opt = {});

}  // namespace pgkit
