#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pgkit/geometry.hpp"

namespace pgkit {

// The seven synthetic projective-space properties, in canonical order.
enum class AxiomId { kA1Exists, kUniqueness, kA31, kA2, kA2Sym, kA32, kA33 };

inline constexpr std::array<AxiomId, 7> kAllAxioms = {
    AxiomId::kA1Exists, AxiomId::kUniqueness, AxiomId::kA31, AxiomId::kA2,
    AxiomId::kA2Sym,    AxiomId::kA32,        AxiomId::kA33};

const char* axiom_name(AxiomId id);  // "a1_exists", "uniqueness", ...

// Result of one exhaustive check.
//
// cases_checked counts visited tuples of the axiom's quantifier domain in
// deterministic lexicographic order. With pruning the domain is reduced to
// canonical representatives (degenerate tuples dropped, one tuple per
// argument-symmetry orbit); without pruning it is the full Cartesian
// product, where tuples failing a distinctness hypothesis count as
// (vacuously true) cases. When a universal check fails, cases_checked is the
// 1-based rank of the lexicographically minimal counterexample, which is
// stored in `counterexample`.
//
// a3_2 is existential: `holds` means a witness pair of disjoint lines was
// found, the pair is carried in `counterexample` (witness role), and
// cases_checked is the rank of the witness; when no witness exists the full
// domain was scanned and `counterexample` is empty.
struct AxiomReport {
  AxiomId id = AxiomId::kA1Exists;
  bool holds = true;
  std::uint64_t cases_checked = 0;
  std::vector<int> counterexample;
  double timing_ms = 0.0;
};

struct CheckOptions {
  bool prune = true;  // canonical representatives vs full Cartesian domain
  int jobs = 1;       // >1 splits the outermost quantifier across workers
  // Use the plain nested-loop reference implementation (for testing and
  // benchmarking the optimized kernels against).
  bool reference = false;
};

// Counterexample layouts: a1_exists (A,B); uniqueness (A,B,l1,l2);
// a3_1 (l); a2/a2_sym (A,B,C,D); a3_2 witness (l1,l2); a3_3 (l1,l2,l3).
AxiomReport check_a1_exists(const Geometry& g, const CheckOptions& opt = {});
AxiomReport check_uniqueness(const Geometry& g, const CheckOptions& opt = {});
AxiomReport check_a3_1(const Geometry& g, const CheckOptions& opt = {});
AxiomReport check_pasch(const Geometry& g, bool symmetrized, const CheckOptions& opt = {});
AxiomReport check_a3_2(const Geometry& g, const CheckOptions& opt = {});
AxiomReport check_a3_3(const Geometry& g, const CheckOptions& opt = {});

AxiomReport check_axiom(const Geometry& g, AxiomId id, const CheckOptions& opt = {});

// All seven checks in kAllAxioms order.
std::vector<AxiomReport> check_all(const Geometry& g, const CheckOptions& opt = {});

// Canonical witness triple per line: its three smallest point indices.
// Fails (throws AxiomFailure) when some line has fewer than three points.
std::vector<std::array<int, 3>> a3_1_witnesses(const Geometry& g);

// Skolemized witness entry for a line triple: a transversal line l4 and one
// intersection point with each of l1, l2, l3.
struct TransversalEntry {
  std::int16_t l4 = -1;
  std::int16_t j1 = -1, j2 = -1, j3 = -1;
};

// Total witness table over unordered triples of distinct lines, realizing
// the skolem function (l1,l2,l3) -> (l4, (J1,J2,J3)). The transversal is the
// lowest-index line meeting all three; each J_i is the lowest point of the
// corresponding intersection. lookup() accepts any ordered distinct triple
// and permutes the witness points to match argument positions.
class TransversalTable {
 public:
  TransversalTable() = default;
  TransversalTable(int num_lines, std::vector<TransversalEntry> entries)
      : num_lines_(num_lines), entries_(std::move(entries)) {}

  int num_lines() const { return num_lines_; }
  std::size_t size() const { return entries_.size(); }
  const TransversalEntry& at_rank(std::size_t r) const { return entries_[r]; }

  TransversalEntry lookup(int l1, int l2, int l3) const;

 private:
  int num_lines_ = 0;
  std::vector<TransversalEntry> entries_;  // indexed by combination rank of l1<l2<l3
};

// Witness tables for the two skolemized existentials:
//  - f_a1: point pair -> the unique joining line (diagonal entries are -1);
//  - f_a3_3: line triple -> transversal witness.
struct SkolemTables {
  int num_points = 0;
  std::vector<std::int16_t> f_a1;  // num_points x num_points, row-major
  TransversalTable f_a3_3;

  int f_a1_at(int a, int b) const {
    return f_a1[static_cast<std::size_t>(a) * static_cast<std::size_t>(num_points) +
                static_cast<std::size_t>(b)];
  }
};

// Thrown by skolem_tables when a prerequisite axiom fails; carries the
// failing report.
struct AxiomFailure : Error {
  AxiomReport report;
  explicit AxiomFailure(AxiomReport r)
      : Error(std::string("axiom ") + axiom_name(r.id) + " does not hold"),
        report(std::move(r)) {}
};

SkolemTables skolem_tables(const Geometry& g, const CheckOptions& opt = {});

}  // namespace pgkit
