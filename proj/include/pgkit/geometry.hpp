#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgkit/bitset.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/gf.hpp"

namespace pgkit {

// A projective point of a constructed PG(n,q): homogeneous coordinates,
// normalized so the leftmost nonzero coordinate is 1; `index` is the point's
// rank in lexicographic order of the normalized coordinate vectors.
struct ProjPoint {
  std::vector<int> coords;  // n+1 field elements
  int index = -1;
};

struct LineRec {
  int index = -1;
  PointSet points;
  std::vector<int> point_list;       // ascending point indices
  std::array<int, 2> basis{-1, -1};  // spanning point indices; {-1,-1} when loaded
};

// Result of intersecting two lines.
struct LineMeet {
  enum class Kind { kPoint, kEmpty, kSameLine };
  Kind kind = Kind::kEmpty;
  int point = -1;  // valid only for kPoint
};

// An immutable finite incidence structure: either PG(n,q) constructed from
// GF(q)^{n+1}, or loaded from an incidence text file (one row per line,
// whitespace-separated decimal point indices; '#' rows and blank rows are
// comments and do not shift line indices). All queries are pure and safe for
// concurrent readers.
class Geometry {
 public:
  enum class Provenance { kConstructed, kLoaded };

  // Supported: n = 2 with q in {2,3,4,5,7,8,9}; n = 3 with q in {2,3,4}.
  // Points are all normalized vectors sorted lexicographically; lines are all
  // 2-dimensional subspaces sorted lexicographically by their sorted
  // point-index tuples. Throws Error for unsupported (n, q).
  static Geometry build_pg(int n, int q);

  // Parses incidence text. Enforces: numeric tokens, no duplicate point in a
  // row, uniform row length, no two rows sharing two points, at least one
  // row, indices < 128. Throws ParseError (with 1-based physical row number)
  // or Error. `name` is recorded for diagnostics only.
  static Geometry load_incidence(std::string_view text, std::string name = "");

  Provenance provenance() const { return provenance_; }
  const std::string& source_name() const { return source_name_; }

  int n() const { return n_; }            // 0 when loaded
  int q() const { return q_; }            // 0 when loaded
  int num_points() const { return num_points_; }
  int num_lines() const { return num_lines_; }
  int points_per_line() const { return points_per_line_; }
  // The projective order: q for constructed geometries, points_per_line - 1
  // for loaded ones.
  int order() const { return q_ > 0 ? q_ : points_per_line_ - 1; }

  const std::vector<LineRec>& lines() const { return lines_; }
  const LineRec& line(int l) const { check_line(l); return lines_[static_cast<std::size_t>(l)]; }
  // Constructed geometries only (empty when loaded).
  const std::vector<ProjPoint>& points() const { return points_; }
  const Field* field() const { return field_ ? &*field_ : nullptr; }

  const LineSet& lines_through(int p) const {
    check_point(p);
    return lines_through_[static_cast<std::size_t>(p)];
  }

  // True iff point p lies on line l. Throws Error for out-of-range indices.
  bool incid(int p, int l) const {
    check_point(p);
    check_line(l);
    return lines_[static_cast<std::size_t>(l)].points.test(p);
  }

  // The unique line through two distinct points. Throws Error for a = b and
  // for structures where no line joins them (possible only for loaded files).
  int line_through(int a, int b) const;

  // As line_through but returns -1 instead of throwing when no line joins
  // a and b (never the case for constructed geometries); a must differ from b.
  int line_through_or_none(int a, int b) const {
    check_point(a);
    check_point(b);
    if (a == b) throw Error("line_through requires two distinct points");
    return pair_line_[static_cast<std::size_t>(a) * static_cast<std::size_t>(num_points_) +
                      static_cast<std::size_t>(b)];
  }

  LineMeet intersect_in(int l1, int l2) const;

  const PointSet& all_points() const { return all_points_; }
  const LineSet& all_lines() const { return all_lines_; }

 private:
  Geometry() = default;
  void finalize();  // derives lines_through_, pair_line_, masks
  void check_point(int p) const {
    if (p < 0 || p >= num_points_) throw Error("point index out of range");
  }
  void check_line(int l) const {
    if (l < 0 || l >= num_lines_) throw Error("line index out of range");
  }

  Provenance provenance_ = Provenance::kConstructed;
  std::string source_name_;
  int n_ = 0, q_ = 0;
  int num_points_ = 0, num_lines_ = 0, points_per_line_ = 0;
  std::optional<Field> field_;
  std::vector<ProjPoint> points_;
  std::vector<LineRec> lines_;
  std::vector<LineSet> lines_through_;
  std::vector<std::int16_t> pair_line_;  // -1 off structure; diagonal -1
  PointSet all_points_;
  LineSet all_lines_;
};

}  // namespace pgkit
