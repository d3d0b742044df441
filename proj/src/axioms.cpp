#include "pgkit/axioms.hpp"

#include <algorithm>
#include <chrono>

#include "pgkit/combinat.hpp"
#include "pgkit/parallel.hpp"

namespace pgkit {

const char* axiom_name(AxiomId id) {
  switch (id) {
    case AxiomId::kA1Exists: return "a1_exists";
    case AxiomId::kUniqueness: return "uniqueness";
    case AxiomId::kA31: return "a3_1";
    case AxiomId::kA2: return "a2";
    case AxiomId::kA2Sym: return "a2_sym";
    case AxiomId::kA32: return "a3_2";
    case AxiomId::kA33: return "a3_3";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Per-block outcome of a check: the number of domain tuples this block
// visited (stopping at the first hit) and, if it hit, the tuple itself —
// a counterexample for universal axioms, a witness for a3_2.
struct BlockOut {
  std::uint64_t cases = 0;
  bool found = false;
  std::array<int, 6> tup{};
  int tup_len = 0;
};

BlockOut make_found(std::uint64_t cases, std::initializer_list<int> t) {
  BlockOut b;
  b.cases = cases;
  b.found = true;
  int i = 0;
  for (int v : t) b.tup[static_cast<std::size_t>(i++)] = v;
  b.tup_len = i;
  return b;
}

// Merges per-block results in ascending block order, reproducing the counts
// of a sequential scan with early exit; hence deterministic for any worker
// count.
AxiomReport reduce_blocks(AxiomId id, const std::vector<BlockOut>& blocks, bool exists_mode) {
  AxiomReport rep;
  rep.id = id;
  std::uint64_t cases = 0;
  for (const BlockOut& b : blocks) {
    cases += b.cases;
    if (b.found) {
      rep.cases_checked = cases;
      rep.holds = exists_mode;
      rep.counterexample.assign(b.tup.begin(), b.tup.begin() + b.tup_len);
      return rep;
    }
  }
  rep.cases_checked = cases;
  rep.holds = !exists_mode;
  return rep;
}

// For each line, the set of lines sharing at least one point with it
// (including itself) — the meets-relation driving a3_2 and a3_3.
std::vector<LineSet> meets_masks(const Geometry& g) {
  std::vector<LineSet> m(static_cast<std::size_t>(g.num_lines()));
  for (const LineRec& rec : g.lines()) {
    LineSet s;
    for (int p : rec.point_list) s |= g.lines_through(p);
    m[static_cast<std::size_t>(rec.index)] = s;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Optimized kernels, one block per value of the outermost quantifier.
// ---------------------------------------------------------------------------

BlockOut a1_exists_block(const Geometry& g, int A, bool prune) {
  BlockOut out;
  const int P = g.num_points();
  for (int B = prune ? A + 1 : 0; B < P; ++B) {
    ++out.cases;
    bool ok = (B == A) ? g.lines_through(A).any()
                       : g.lines_through(A).intersects(g.lines_through(B));
    if (!ok) return make_found(out.cases, {A, B});
  }
  return out;
}

BlockOut uniqueness_block(const Geometry& g, int A, bool prune) {
  BlockOut out;
  const int P = g.num_points();
  const std::uint64_t L = static_cast<std::uint64_t>(g.num_lines());
  const std::uint64_t inner_full = prune ? binom(static_cast<int>(L), 2) : L * L;
  for (int B = prune ? A + 1 : 0; B < P; ++B) {
    if (B == A) {
      // Conclusion A = B holds for every line pair.
      out.cases += inner_full;
      continue;
    }
    LineSet common = g.lines_through(A) & g.lines_through(B);
    if (common.count() >= 2) {
      int l1 = common.lowest();
      LineSet rest = common;
      rest.reset(l1);
      int l2 = rest.lowest();
      out.cases += prune ? pair_rank(l1, l2, static_cast<int>(L)) + 1
                         : static_cast<std::uint64_t>(l1) * L + static_cast<std::uint64_t>(l2) + 1;
      return make_found(out.cases, {A, B, l1, l2});
    }
    out.cases += inner_full;
  }
  return out;
}

BlockOut a3_1_block(const Geometry& g, int l) {
  BlockOut out;
  out.cases = 1;
  if (static_cast<int>(g.line(l).point_list.size()) < 3) return make_found(1, {l});
  return out;
}

BlockOut pasch_block(const Geometry& g, int A, bool sym, bool prune) {
  BlockOut out;
  const int P = g.num_points();
  const auto& lines = g.lines();
  auto meets = [&](int x, int y) {
    return lines[static_cast<std::size_t>(x)].points.intersects(
        lines[static_cast<std::size_t>(y)].points);
  };
  // The four (six when symmetrized) joining lines are the unique ones given
  // by line_through; a missing joining line (possible only for loaded
  // structures) makes the axiom's incidence hypotheses unsatisfiable, so the
  // tuple passes vacuously.
  auto body = [&](int B, int C, int D) -> bool {  // true = violation
    int lab = g.line_through_or_none(A, B);
    int lcd = g.line_through_or_none(C, D);
    if (lab < 0 || lcd < 0) return false;
    int lac = g.line_through_or_none(A, C);
    int lbd = g.line_through_or_none(B, D);
    if (lac < 0 || lbd < 0) return false;
    int lad = -1, lbc = -1;
    if (sym) {
      lad = g.line_through_or_none(A, D);
      lbc = g.line_through_or_none(B, C);
      if (lad < 0 || lbc < 0) return false;
    }
    if (!meets(lab, lcd)) return false;  // hypothesis fails
    if (!meets(lac, lbd)) return true;
    if (sym && !meets(lad, lbc)) return true;
    return false;
  };

  if (!prune) {
    for (int B = 0; B < P; ++B)
      for (int C = 0; C < P; ++C)
        for (int D = 0; D < P; ++D) {
          ++out.cases;
          if (A == B || A == C || A == D || B == C || B == D || C == D) continue;
          if (body(B, C, D)) return make_found(out.cases, {A, B, C, D});
        }
    return out;
  }
  if (!sym) {
    // Plain form: invariant under the Klein group of pair swaps
    // (A,B,C,D) ~ (B,A,D,C) ~ (C,D,A,B) ~ (D,C,B,A); exactly one orbit
    // member has the minimum in first position.
    for (int B = A + 1; B < P; ++B)
      for (int C = A + 1; C < P; ++C) {
        if (C == B) continue;
        for (int D = A + 1; D < P; ++D) {
          if (D == B || D == C) continue;
          ++out.cases;
          if (body(B, C, D)) return make_found(out.cases, {A, B, C, D});
        }
      }
    return out;
  }
  // Symmetrized form: invariant under the dihedral stabilizer of the pairing
  // {{A,B},{C,D}} (order 8); canonical representative has A < B, C < D, A < C.
  for (int B = A + 1; B < P; ++B)
    for (int C = A + 1; C < P; ++C) {
      if (C == B) continue;
      for (int D = C + 1; D < P; ++D) {
        if (D == B) continue;
        ++out.cases;
        if (body(B, C, D)) return make_found(out.cases, {A, B, C, D});
      }
    }
  return out;
}

BlockOut a3_2_block(const std::vector<LineSet>& meets, int l1, int L, bool prune) {
  BlockOut out;
  for (int l2 = prune ? l1 + 1 : 0; l2 < L; ++l2) {
    ++out.cases;
    if (!meets[static_cast<std::size_t>(l1)].test(l2))
      return make_found(out.cases, {l1, l2});  // witness: disjoint pair
  }
  return out;
}

BlockOut a3_3_block(const std::vector<LineSet>& meets, int l1, int L, bool prune) {
  BlockOut out;
  const LineSet& m1 = meets[static_cast<std::size_t>(l1)];
  if (prune) {
    for (int l2 = l1 + 1; l2 < L; ++l2) {
      LineSet m12 = m1 & meets[static_cast<std::size_t>(l2)];
      for (int l3 = l2 + 1; l3 < L; ++l3) {
        ++out.cases;
        if (!(m12 & meets[static_cast<std::size_t>(l3)]).any())
          return make_found(out.cases, {l1, l2, l3});
      }
    }
    return out;
  }
  for (int l2 = 0; l2 < L; ++l2) {
    if (l2 == l1) {
      // Every l3 gives a degenerate (vacuously true) triple.
      out.cases += static_cast<std::uint64_t>(L);
      continue;
    }
    LineSet m12 = m1 & meets[static_cast<std::size_t>(l2)];
    for (int l3 = 0; l3 < L; ++l3) {
      ++out.cases;
      if (l3 == l1 || l3 == l2) continue;
      if (!(m12 & meets[static_cast<std::size_t>(l3)]).any())
        return make_found(out.cases, {l1, l2, l3});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plain nested-loop reference implementations: literal translations of the
// quantifier structure, kept for testing and benchmarking the kernels.
// ---------------------------------------------------------------------------

AxiomReport ref_a1_exists(const Geometry& g, bool prune) {
  AxiomReport rep;
  rep.id = AxiomId::kA1Exists;
  const int P = g.num_points(), L = g.num_lines();
  for (int A = 0; A < P; ++A)
    for (int B = prune ? A + 1 : 0; B < P; ++B) {
      ++rep.cases_checked;
      bool ok = false;
      for (int l = 0; l < L && !ok; ++l) ok = g.incid(A, l) && g.incid(B, l);
      if (!ok) {
        rep.holds = false;
        rep.counterexample = {A, B};
        return rep;
      }
    }
  return rep;
}

AxiomReport ref_uniqueness(const Geometry& g, bool prune) {
  AxiomReport rep;
  rep.id = AxiomId::kUniqueness;
  const int P = g.num_points(), L = g.num_lines();
  for (int A = 0; A < P; ++A)
    for (int B = prune ? A + 1 : 0; B < P; ++B)
      for (int l1 = 0; l1 < L; ++l1)
        for (int l2 = prune ? l1 + 1 : 0; l2 < L; ++l2) {
          ++rep.cases_checked;
          if (A == B || l1 == l2) continue;
          if (g.incid(A, l1) && g.incid(B, l1) && g.incid(A, l2) && g.incid(B, l2)) {
            rep.holds = false;
            rep.counterexample = {A, B, l1, l2};
            return rep;
          }
        }
  return rep;
}

AxiomReport ref_a3_1(const Geometry& g) {
  AxiomReport rep;
  rep.id = AxiomId::kA31;
  const int P = g.num_points(), L = g.num_lines();
  for (int l = 0; l < L; ++l) {
    ++rep.cases_checked;
    int on_line = 0;
    for (int p = 0; p < P; ++p)
      if (g.incid(p, l)) ++on_line;
    if (on_line < 3) {
      rep.holds = false;
      rep.counterexample = {l};
      return rep;
    }
  }
  return rep;
}

AxiomReport ref_pasch(const Geometry& g, bool sym, bool prune) {
  AxiomReport rep;
  rep.id = sym ? AxiomId::kA2Sym : AxiomId::kA2;
  const int P = g.num_points(), L = g.num_lines();
  auto join = [&](int x, int y) {
    for (int l = 0; l < L; ++l)
      if (g.incid(x, l) && g.incid(y, l)) return l;
    return -1;
  };
  auto meets = [&](int x, int y) {
    for (int p = 0; p < P; ++p)
      if (g.incid(p, x) && g.incid(p, y)) return true;
    return false;
  };
  auto violation = [&](int A, int B, int C, int D) {
    int lab = join(A, B), lcd = join(C, D);
    if (lab < 0 || lcd < 0) return false;
    int lac = join(A, C), lbd = join(B, D);
    if (lac < 0 || lbd < 0) return false;
    int lad = -1, lbc = -1;
    if (sym) {
      lad = join(A, D);
      lbc = join(B, C);
      if (lad < 0 || lbc < 0) return false;
    }
    if (!meets(lab, lcd)) return false;
    if (!meets(lac, lbd)) return true;
    if (sym && !meets(lad, lbc)) return true;
    return false;
  };
  auto fail = [&](int A, int B, int C, int D) {
    rep.holds = false;
    rep.counterexample = {A, B, C, D};
  };
  if (!prune) {
    for (int A = 0; A < P; ++A)
      for (int B = 0; B < P; ++B)
        for (int C = 0; C < P; ++C)
          for (int D = 0; D < P; ++D) {
            ++rep.cases_checked;
            if (A == B || A == C || A == D || B == C || B == D || C == D) continue;
            if (violation(A, B, C, D)) {
              fail(A, B, C, D);
              return rep;
            }
          }
    return rep;
  }
  for (int A = 0; A < P; ++A) {
    if (!sym) {
      for (int B = A + 1; B < P; ++B)
        for (int C = A + 1; C < P; ++C) {
          if (C == B) continue;
          for (int D = A + 1; D < P; ++D) {
            if (D == B || D == C) continue;
            ++rep.cases_checked;
            if (violation(A, B, C, D)) {
              fail(A, B, C, D);
              return rep;
            }
          }
        }
    } else {
      for (int B = A + 1; B < P; ++B)
        for (int C = A + 1; C < P; ++C) {
          if (C == B) continue;
          for (int D = C + 1; D < P; ++D) {
            if (D == B) continue;
            ++rep.cases_checked;
            if (violation(A, B, C, D)) {
              fail(A, B, C, D);
              return rep;
            }
          }
        }
    }
  }
  return rep;
}

AxiomReport ref_a3_2(const Geometry& g, bool prune) {
  AxiomReport rep;
  rep.id = AxiomId::kA32;
  const int P = g.num_points(), L = g.num_lines();
  for (int l1 = 0; l1 < L; ++l1)
    for (int l2 = prune ? l1 + 1 : 0; l2 < L; ++l2) {
      ++rep.cases_checked;
      bool share = false;
      for (int p = 0; p < P && !share; ++p) share = g.incid(p, l1) && g.incid(p, l2);
      if (!share) {
        rep.holds = true;
        rep.counterexample = {l1, l2};  // witness pair
        return rep;
      }
    }
  rep.holds = false;
  return rep;
}

AxiomReport ref_a3_3(const Geometry& g, bool prune) {
  AxiomReport rep;
  rep.id = AxiomId::kA33;
  const int P = g.num_points(), L = g.num_lines();
  auto meets = [&](int x, int y) {
    for (int p = 0; p < P; ++p)
      if (g.incid(p, x) && g.incid(p, y)) return true;
    return false;
  };
  auto has_transversal = [&](int l1, int l2, int l3) {
    for (int l4 = 0; l4 < L; ++l4)
      if (meets(l1, l4) && meets(l2, l4) && meets(l3, l4)) return true;
    return false;
  };
  for (int l1 = 0; l1 < L; ++l1) {
    int b2 = prune ? l1 + 1 : 0;
    for (int l2 = b2; l2 < L; ++l2) {
      int b3 = prune ? l2 + 1 : 0;
      for (int l3 = b3; l3 < L; ++l3) {
        ++rep.cases_checked;
        if (l1 == l2 || l1 == l3 || l2 == l3) continue;
        if (!has_transversal(l1, l2, l3)) {
          rep.holds = false;
          rep.counterexample = {l1, l2, l3};
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace

AxiomReport check_a1_exists(const Geometry& g, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_a1_exists(g, opt.prune);
  } else {
    auto blocks = run_blocks<BlockOut>(g.num_points(), opt.jobs,
                                       [&](int A) { return a1_exists_block(g, A, opt.prune); });
    rep = reduce_blocks(AxiomId::kA1Exists, blocks, false);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_uniqueness(const Geometry& g, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_uniqueness(g, opt.prune);
  } else {
    auto blocks = run_blocks<BlockOut>(g.num_points(), opt.jobs,
                                       [&](int A) { return uniqueness_block(g, A, opt.prune); });
    rep = reduce_blocks(AxiomId::kUniqueness, blocks, false);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_a3_1(const Geometry& g, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_a3_1(g);
  } else {
    auto blocks = run_blocks<BlockOut>(g.num_lines(), opt.jobs,
                                       [&](int l) { return a3_1_block(g, l); });
    rep = reduce_blocks(AxiomId::kA31, blocks, false);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_pasch(const Geometry& g, bool symmetrized, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_pasch(g, symmetrized, opt.prune);
  } else {
    auto blocks = run_blocks<BlockOut>(g.num_points(), opt.jobs, [&](int A) {
      return pasch_block(g, A, symmetrized, opt.prune);
    });
    rep = reduce_blocks(symmetrized ? AxiomId::kA2Sym : AxiomId::kA2, blocks, false);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_a3_2(const Geometry& g, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_a3_2(g, opt.prune);
  } else {
    auto meets = meets_masks(g);
    const int L = g.num_lines();
    auto blocks = run_blocks<BlockOut>(L, opt.jobs, [&](int l1) {
      return a3_2_block(meets, l1, L, opt.prune);
    });
    rep = reduce_blocks(AxiomId::kA32, blocks, true);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_a3_3(const Geometry& g, const CheckOptions& opt) {
  auto t0 = Clock::now();
  AxiomReport rep;
  if (opt.reference) {
    rep = ref_a3_3(g, opt.prune);
  } else {
    auto meets = meets_masks(g);
    const int L = g.num_lines();
    auto blocks = run_blocks<BlockOut>(L, opt.jobs, [&](int l1) {
      return a3_3_block(meets, l1, L, opt.prune);
    });
    rep = reduce_blocks(AxiomId::kA33, blocks, false);
  }
  rep.timing_ms = ms_since(t0);
  return rep;
}

AxiomReport check_axiom(const Geometry& g, AxiomId id, const CheckOptions& opt) {
  switch (id) {
    case AxiomId::kA1Exists: return check_a1_exists(g, opt);
    case AxiomId::kUniqueness: return check_uniqueness(g, opt);
    case AxiomId::kA31: return check_a3_1(g, opt);
    case AxiomId::kA2: return check_pasch(g, false, opt);
    case AxiomId::kA2Sym: return check_pasch(g, true, opt);
    case AxiomId::kA32: return check_a3_2(g, opt);
    case AxiomId::kA33: return check_a3_3(g, opt);
  }
  throw Error("unknown axiom id");
}

std::vector<AxiomReport> check_all(const Geometry& g, const CheckOptions& opt) {
  std::vector<AxiomReport> reports;
  reports.reserve(kAllAxioms.size());
  for (AxiomId id : kAllAxioms) reports.push_back(check_axiom(g, id, opt));
  return reports;
}

std::vector<std::array<int, 3>> a3_1_witnesses(const Geometry& g) {
  AxiomReport rep = check_a3_1(g);
  if (!rep.holds) throw AxiomFailure(std::move(rep));
  std::vector<std::array<int, 3>> w;
  w.reserve(static_cast<std::size_t>(g.num_lines()));
  for (const LineRec& rec : g.lines())
    w.push_back({rec.point_list[0], rec.point_list[1], rec.point_list[2]});
  return w;
}

TransversalEntry TransversalTable::lookup(int l1, int l2, int l3) const {
  if (l1 < 0 || l1 >= num_lines_ || l2 < 0 || l2 >= num_lines_ || l3 < 0 || l3 >= num_lines_)
    throw Error("line index out of range");
  if (l1 == l2 || l1 == l3 || l2 == l3)
    throw Error("transversal lookup requires three distinct lines");
  std::array<int, 3> args = {l1, l2, l3};
  std::array<int, 3> sorted = args;
  std::sort(sorted.begin(), sorted.end());
  const TransversalEntry& e =
      entries_[triple_rank(sorted[0], sorted[1], sorted[2], num_lines_)];
  std::array<std::int16_t, 3> by_sorted = {e.j1, e.j2, e.j3};
  TransversalEntry out;
  out.l4 = e.l4;
  std::array<std::int16_t*, 3> slots = {&out.j1, &out.j2, &out.j3};
  for (int i = 0; i < 3; ++i) {
    int pos = static_cast<int>(std::find(sorted.begin(), sorted.end(), args[static_cast<std::size_t>(i)]) -
                               sorted.begin());
    *slots[static_cast<std::size_t>(i)] = by_sorted[static_cast<std::size_t>(pos)];
  }
  return out;
}

SkolemTables skolem_tables(const Geometry& g, const CheckOptions& opt) {
  AxiomReport r1 = check_a1_exists(g, opt);
  if (!r1.holds) throw AxiomFailure(std::move(r1));
  AxiomReport r33 = check_a3_3(g, opt);
  if (!r33.holds) throw AxiomFailure(std::move(r33));

  const int P = g.num_points(), L = g.num_lines();
  SkolemTables t;
  t.num_points = P;
  t.f_a1.assign(static_cast<std::size_t>(P) * static_cast<std::size_t>(P), -1);
  for (int a = 0; a < P; ++a)
    for (int b = 0; b < P; ++b)
      if (a != b)
        t.f_a1[static_cast<std::size_t>(a) * static_cast<std::size_t>(P) +
               static_cast<std::size_t>(b)] =
            static_cast<std::int16_t>(g.line_through(a, b));

  auto meets = meets_masks(g);
  std::vector<TransversalEntry> entries(binom(L, 3));
  const auto& lines = g.lines();
  auto fill_block = [&](int l1) {
    if (L - l1 < 3) return 0;
    std::size_t at = triple_rank(l1, l1 + 1, l1 + 2, L);
    const LineSet& m1 = meets[static_cast<std::size_t>(l1)];
    for (int l2 = l1 + 1; l2 < L; ++l2) {
      LineSet m12 = m1 & meets[static_cast<std::size_t>(l2)];
      for (int l3 = l2 + 1; l3 < L; ++l3) {
        int l4 = (m12 & meets[static_cast<std::size_t>(l3)]).lowest();
        TransversalEntry e;
        e.l4 = static_cast<std::int16_t>(l4);
        const PointSet& p4 = lines[static_cast<std::size_t>(l4)].points;
        e.j1 = static_cast<std::int16_t>((lines[static_cast<std::size_t>(l1)].points & p4).lowest());
        e.j2 = static_cast<std::int16_t>((lines[static_cast<std::size_t>(l2)].points & p4).lowest());
        e.j3 = static_cast<std::int16_t>((lines[static_cast<std::size_t>(l3)].points & p4).lowest());
        entries[at++] = e;
      }
    }
    return 0;
  };
  run_blocks<int>(L, opt.jobs, fill_block);
  t.f_a3_3 = TransversalTable(L, std::move(entries));
  return t;
}

}  // namespace pgkit
