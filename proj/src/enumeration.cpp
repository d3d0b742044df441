#include "pgkit/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pgkit/parallel.hpp"

namespace pgkit {

namespace {

// Generic forced-choice exact cover: rows are masks over a column universe;
// at each step branch only on rows covering the lowest uncovered column.
// Each solution (a set of rows) is produced exactly once.
template <typename Mask>
void cover_recurse(const std::vector<Mask>& row_mask,
                   const std::vector<std::vector<int>>& rows_on_col, const Mask& full,
                   const Mask& covered, std::vector<int>& partial,
                   std::vector<std::vector<int>>& out) {
  if (covered == full) {
    std::vector<int> sol = partial;
    std::sort(sol.begin(), sol.end());
    out.push_back(std::move(sol));
    return;
  }
  int col = full.and_not(covered).lowest();
  for (int r : rows_on_col[static_cast<std::size_t>(col)]) {
    if (row_mask[static_cast<std::size_t>(r)].intersects(covered)) continue;
    partial.push_back(r);
    cover_recurse(row_mask, rows_on_col, full, covered | row_mask[static_cast<std::size_t>(r)],
                  partial, out);
    partial.pop_back();
  }
}

// Runs exact cover, splitting the first branching level across workers when
// jobs > 1; the result is sorted lexicographically either way.
template <typename Mask>
std::vector<std::vector<int>> exact_cover(const std::vector<Mask>& row_mask,
                                          const std::vector<std::vector<int>>& rows_on_col,
                                          const Mask& full, int jobs) {
  std::vector<std::vector<int>> solutions;
  if (full.none()) return solutions;
  if (jobs > 1) {
    int col = full.lowest();
    const std::vector<int>& first = rows_on_col[static_cast<std::size_t>(col)];
    auto branches = run_blocks<std::vector<std::vector<int>>>(
        static_cast<int>(first.size()), jobs, [&](int i) {
          std::vector<std::vector<int>> local;
          std::vector<int> partial{first[static_cast<std::size_t>(i)]};
          cover_recurse(row_mask, rows_on_col, full,
                        row_mask[static_cast<std::size_t>(first[static_cast<std::size_t>(i)])],
                        partial, local);
          return local;
        });
    for (auto& b : branches)
      for (auto& sol : b) solutions.push_back(std::move(sol));
  } else {
    std::vector<int> partial;
    cover_recurse(row_mask, rows_on_col, full, Mask{}, partial, solutions);
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

void require_pg3_shape(const Geometry& g) {
  int q = g.order();
  if (g.num_points() != (q * q + 1) * (q + 1) ||
      g.num_lines() != (q * q + q + 1) * (q * q + 1))
    throw Error("spread/packing enumeration requires a PG(3,q) geometry; got " +
                std::to_string(g.num_points()) + " points / " +
                std::to_string(g.num_lines()) + " lines with " +
                std::to_string(g.points_per_line()) + " points per line");
}

}  // namespace

bool is_spread(const Geometry& g, std::span<const int> lines) {
  PointSet acc;
  int covered_total = 0;
  for (int l : lines) {
    const LineRec& rec = g.line(l);  // range-checked
    covered_total += static_cast<int>(rec.point_list.size());
    acc |= rec.points;
  }
  // Full cover with no overlap (and no duplicate member): the union equals
  // the whole point set and the sizes add up exactly.
  return covered_total == g.num_points() && acc == g.all_points();
}

bool is_packing(const Geometry& g, const std::vector<Spread>& all, std::span<const int> spreads) {
  LineSet acc;
  int covered_total = 0;
  for (int s : spreads) {
    if (s < 0 || s >= static_cast<int>(all.size())) throw Error("spread index out of range");
    const Spread& sp = all[static_cast<std::size_t>(s)];
    covered_total += static_cast<int>(sp.lines.size());
    LineSet mask;
    for (int l : sp.lines) mask.set(l);
    acc |= mask;
  }
  return covered_total == g.num_lines() && acc == g.all_lines();
}

std::vector<Spread> enumerate_spreads(const Geometry& g, const EnumOptions& opt) {
  require_pg3_shape(g);
  std::vector<PointSet> row_mask;
  row_mask.reserve(static_cast<std::size_t>(g.num_lines()));
  for (const LineRec& rec : g.lines()) row_mask.push_back(rec.points);
  std::vector<std::vector<int>> rows_on_col(static_cast<std::size_t>(g.num_points()));
  for (const LineRec& rec : g.lines())
    for (int p : rec.point_list) rows_on_col[static_cast<std::size_t>(p)].push_back(rec.index);

  auto sols = exact_cover(row_mask, rows_on_col, g.all_points(), opt.jobs);
  std::vector<Spread> spreads;
  spreads.reserve(sols.size());
  for (auto& sol : sols) {
    Spread s;
    s.lines = std::move(sol);
    s.covered = g.all_points();
    spreads.push_back(std::move(s));
  }
  return spreads;
}

std::vector<Packing> enumerate_packings(const Geometry& g, const std::vector<Spread>& spreads,
                                        const EnumOptions& opt) {
  require_pg3_shape(g);
  std::vector<LineSet> row_mask(spreads.size());
  for (std::size_t i = 0; i < spreads.size(); ++i)
    for (int l : spreads[i].lines) row_mask[i].set(l);
  std::vector<std::vector<int>> rows_on_col(static_cast<std::size_t>(g.num_lines()));
  for (std::size_t i = 0; i < spreads.size(); ++i)
    for (int l : spreads[i].lines)
      rows_on_col[static_cast<std::size_t>(l)].push_back(static_cast<int>(i));

  auto sols = exact_cover(row_mask, rows_on_col, g.all_lines(), opt.jobs);
  std::vector<Packing> packings;
  packings.reserve(sols.size());
  for (auto& sol : sols) {
    Packing p;
    p.spreads = std::move(sol);
    p.covered = g.all_lines();
    packings.push_back(std::move(p));
  }
  return packings;
}

QuintupleScan spread_oracle_quintuples(const Geometry& g, const EnumOptions& opt) {
  require_pg3_shape(g);
  if (g.order() != 2)
    throw Error("the quintuple spread oracle is only defined for order 2 "
                "(subset scan is infeasible for larger orders)");
  const int L = g.num_lines();
  struct Block {
    std::uint64_t scanned = 0;
    std::vector<std::vector<int>> found;
  };
  auto blocks = run_blocks<Block>(L, opt.jobs, [&](int c0) {
    Block blk;
    int idx[5];
    idx[0] = c0;
    for (idx[1] = idx[0] + 1; idx[1] < L; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < L; ++idx[2])
        for (idx[3] = idx[2] + 1; idx[3] < L; ++idx[3])
          for (idx[4] = idx[3] + 1; idx[4] < L; ++idx[4]) {
            ++blk.scanned;
            if (is_spread(g, std::span<const int>(idx, 5)))
              blk.found.push_back({idx[0], idx[1], idx[2], idx[3], idx[4]});
          }
    return blk;
  });
  QuintupleScan result;
  for (auto& blk : blocks) {
    result.scanned += blk.scanned;
    for (auto& f : blk.found) {
      Spread s;
      s.lines = std::move(f);
      s.covered = g.all_points();
      result.spreads.push_back(std::move(s));
    }
  }
  // Blocks are emitted in ascending first-index order and each block scans in
  // lexicographic order, so the list is already sorted; keep the sort as a
  // safety net for determinism.
  std::sort(result.spreads.begin(), result.spreads.end(),
            [](const Spread& a, const Spread& b) { return a.lines < b.lines; });
  return result;
}

std::vector<Packing> packing_oracle_cliques(const Geometry& g, const std::vector<Spread>& spreads,
                                            const EnumOptions& opt) {
  require_pg3_shape(g);
  const int N = static_cast<int>(spreads.size());
  const int q = g.order();
  const int target = q * q + q + 1;
  const int words = (N + 63) / 64;

  std::vector<LineSet> line_mask(spreads.size());
  for (std::size_t i = 0; i < spreads.size(); ++i)
    for (int l : spreads[i].lines) line_mask[i].set(l);

  // Adjacency bitsets of the spread-disjointness graph.
  std::vector<std::vector<std::uint64_t>> adj(
      static_cast<std::size_t>(N), std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b)
      if (!line_mask[static_cast<std::size_t>(a)].intersects(line_mask[static_cast<std::size_t>(b)])) {
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b >> 6)] |= std::uint64_t{1}
                                                                              << (b & 63);
        adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a >> 6)] |= std::uint64_t{1}
                                                                              << (a & 63);
      }

  auto blocks = run_blocks<std::vector<std::vector<int>>>(N, opt.jobs, [&](int v0) {
    std::vector<std::vector<int>> found;
    std::vector<int> stack{v0};
    // cand: vertices adjacent to everything on the stack, greater than the
    // last chosen vertex (enforced by scanning ascending).
    std::vector<std::uint64_t> cand = adj[static_cast<std::size_t>(v0)];
    auto rec = [&](auto&& self, const std::vector<std::uint64_t>& c) -> void {
      if (static_cast<int>(stack.size()) == target) {
        found.push_back(stack);
        return;
      }
      int last = stack.back();
      int needed = target - static_cast<int>(stack.size());
      int avail = 0;
      for (int w = 0; w < words; ++w) avail += std::popcount(c[static_cast<std::size_t>(w)]);
      if (avail < needed) return;
      for (int v = last + 1; v < N; ++v) {
        if (!((c[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u)) continue;
        std::vector<std::uint64_t> next(static_cast<std::size_t>(words));
        for (int w = 0; w < words; ++w)
          next[static_cast<std::size_t>(w)] =
              c[static_cast<std::size_t>(w)] & adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
        stack.push_back(v);
        self(self, next);
        stack.pop_back();
      }
    };
    rec(rec, cand);
    return found;
  });

  std::vector<Packing> packings;
  for (auto& blk : blocks)
    for (auto& clique : blk) {
      Packing p;
      p.spreads = std::move(clique);
      p.covered = g.all_lines();
      packings.push_back(std::move(p));
    }
  std::sort(packings.begin(), packings.end(),
            [](const Packing& a, const Packing& b) { return a.spreads < b.spreads; });
  return packings;
}

}  // namespace pgkit
