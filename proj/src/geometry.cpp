#include "pgkit/geometry.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace pgkit {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool supported_pg(int n, int q) {
  if (n == 2) return q == 2 || q == 3 || q == 4 || q == 5 || q == 7 || q == 8 || q == 9;
  if (n == 3) return q == 2 || q == 3 || q == 4;
  return false;
}

}  // namespace

Geometry Geometry::build_pg(int n, int q) {
  if (!supported_pg(n, q))
    throw Error("unsupported projective space PG(" + std::to_string(n) + "," +
                std::to_string(q) +
                "); supported: n=2 with q in {2,3,4,5,7,8,9}, n=3 with q in {2,3,4}");
  Geometry g;
  g.provenance_ = Provenance::kConstructed;
  g.n_ = n;
  g.q_ = q;
  g.field_ = Field::make(q);
  const Field& F = *g.field_;
  const int dim = n + 1;
  const int total = ipow(q, dim);

  // Enumerate normalized vectors in lexicographic coordinate order: the
  // leftmost nonzero coordinate must be 1. Interpreting the coordinate tuple
  // (c0..cn) as base-q digits with c0 most significant makes integer order
  // equal lexicographic order.
  std::vector<int> point_of_vec(static_cast<std::size_t>(total), -1);
  for (int v = 1; v < total; ++v) {
    std::vector<int> c(static_cast<std::size_t>(dim));
    int t = v;
    for (int i = dim - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = t % q;
      t /= q;
    }
    int first = 0;
    while (c[static_cast<std::size_t>(first)] == 0) ++first;
    if (c[static_cast<std::size_t>(first)] != 1) continue;
    ProjPoint p;
    p.coords = std::move(c);
    p.index = static_cast<int>(g.points_.size());
    point_of_vec[static_cast<std::size_t>(v)] = p.index;
    g.points_.push_back(std::move(p));
  }
  g.num_points_ = static_cast<int>(g.points_.size());

  auto vec_of = [&](const std::vector<int>& c) {
    int v = 0;
    for (int i = 0; i < dim; ++i) v = v * q + c[static_cast<std::size_t>(i)];
    return v;
  };
  auto normalize_index = [&](std::vector<int> c) {
    int first = 0;
    while (first < dim && c[static_cast<std::size_t>(first)] == 0) ++first;
    int s = F.inv(c[static_cast<std::size_t>(first)]);
    for (int i = first; i < dim; ++i)
      c[static_cast<std::size_t>(i)] = F.mul(c[static_cast<std::size_t>(i)], s);
    return point_of_vec[static_cast<std::size_t>(vec_of(c))];
  };

  // Each unordered point pair spans one line; collect every line once, keyed
  // by its sorted point-index tuple, then index lines in lexicographic order.
  std::map<std::vector<int>, std::array<int, 2>> line_set;
  for (int a = 0; a < g.num_points_; ++a) {
    for (int b = a + 1; b < g.num_points_; ++b) {
      const auto& ca = g.points_[static_cast<std::size_t>(a)].coords;
      const auto& cb = g.points_[static_cast<std::size_t>(b)].coords;
      std::vector<int> pts = {a, b};
      // Remaining points of the line: a + t*b for t in GF(q)*.
      for (int t = 1; t < q; ++t) {
        std::vector<int> c(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i)
          c[static_cast<std::size_t>(i)] =
              F.add(ca[static_cast<std::size_t>(i)],
                    F.mul(t, cb[static_cast<std::size_t>(i)]));
        pts.push_back(normalize_index(std::move(c)));
      }
      std::sort(pts.begin(), pts.end());
      line_set.emplace(std::move(pts), std::array<int, 2>{a, b});
    }
  }
  for (auto& [pts, basis] : line_set) {
    LineRec rec;
    rec.index = static_cast<int>(g.lines_.size());
    rec.point_list = pts;
    for (int p : pts) rec.points.set(p);
    rec.basis = basis;
    g.lines_.push_back(std::move(rec));
  }
  g.num_lines_ = static_cast<int>(g.lines_.size());
  g.points_per_line_ = q + 1;
  g.finalize();
  return g;
}

Geometry Geometry::load_incidence(std::string_view text, std::string name) {
  Geometry g;
  g.provenance_ = Provenance::kLoaded;
  g.source_name_ = std::move(name);

  std::vector<std::vector<int>> rows;
  std::vector<int> row_numbers;  // 1-based physical line numbers
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    // Trim and classify.
    std::size_t b = raw.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;       // blank
    if (raw[b] == '#') continue;                      // comment
    std::vector<int> row;
    std::size_t i = b;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      std::string_view tok = raw.substr(i, j - i);
      int value = 0;
      for (char ch : tok) {
        if (ch < '0' || ch > '9')
          throw ParseError(line_no, "non-numeric token '" + std::string(tok) + "'");
        value = value * 10 + (ch - '0');
        if (value >= PointSet::capacity())
          throw ParseError(line_no, "point index " + std::string(tok) + " too large (max " +
                                        std::to_string(PointSet::capacity() - 1) + ")");
      }
      row.push_back(value);
      i = j;
    }
    for (std::size_t a = 0; a < row.size(); ++a)
      for (std::size_t c = a + 1; c < row.size(); ++c)
        if (row[a] == row[c])
          throw ParseError(line_no, "duplicate point " + std::to_string(row[a]) + " in row");
    rows.push_back(std::move(row));
    row_numbers.push_back(line_no);
  }
  if (rows.empty()) throw ParseError(1, "no incidence rows found");
  if (static_cast<int>(rows.size()) > LineSet::capacity())
    throw Error("too many lines (" + std::to_string(rows.size()) + ", max " +
                std::to_string(LineSet::capacity()) + ")");

  std::size_t width = rows.front().size();
  int max_index = -1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw ParseError(row_numbers[r], "row has " + std::to_string(rows[r].size()) +
                                           " points, expected " + std::to_string(width));
    for (int p : rows[r]) max_index = std::max(max_index, p);
  }
  g.num_points_ = max_index + 1;
  g.num_lines_ = static_cast<int>(rows.size());
  g.points_per_line_ = static_cast<int>(width);

  // Reject two rows sharing two or more points (they would be two distinct
  // lines through the same point pair).
  std::vector<std::int16_t> seen(
      static_cast<std::size_t>(g.num_points_) * static_cast<std::size_t>(g.num_points_), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    for (std::size_t a = 0; a < row.size(); ++a) {
      for (std::size_t c = a + 1; c < row.size(); ++c) {
        int x = std::min(row[a], row[c]), y = std::max(row[a], row[c]);
        auto& cell = seen[static_cast<std::size_t>(x) * static_cast<std::size_t>(g.num_points_) +
                          static_cast<std::size_t>(y)];
        if (cell >= 0)
          throw ParseError(row_numbers[r],
                           "points " + std::to_string(x) + " and " + std::to_string(y) +
                               " already joined by row " + std::to_string(row_numbers[static_cast<std::size_t>(cell)]));
        cell = static_cast<std::int16_t>(r);
      }
    }
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    LineRec rec;
    rec.index = static_cast<int>(r);
    rec.point_list = rows[r];
    std::sort(rec.point_list.begin(), rec.point_list.end());
    for (int p : rec.point_list) rec.points.set(p);
    g.lines_.push_back(std::move(rec));
  }
  g.finalize();
  return g;
}

void Geometry::finalize() {
  lines_through_.assign(static_cast<std::size_t>(num_points_), LineSet{});
  pair_line_.assign(
      static_cast<std::size_t>(num_points_) * static_cast<std::size_t>(num_points_), -1);
  for (const LineRec& rec : lines_) {
    for (int p : rec.point_list) lines_through_[static_cast<std::size_t>(p)].set(rec.index);
    for (std::size_t a = 0; a < rec.point_list.size(); ++a) {
      for (std::size_t b = 0; b < rec.point_list.size(); ++b) {
        if (a == b) continue;
        pair_line_[static_cast<std::size_t>(rec.point_list[a]) *
                       static_cast<std::size_t>(num_points_) +
                   static_cast<std::size_t>(rec.point_list[b])] =
            static_cast<std::int16_t>(rec.index);
      }
    }
  }
  all_points_ = PointSet::all_below(num_points_);
  all_lines_ = LineSet::all_below(num_lines_);
}

int Geometry::line_through(int a, int b) const {
  int l = line_through_or_none(a, b);
  if (l < 0)
    throw Error("no line through points " + std::to_string(a) + " and " + std::to_string(b));
  return l;
}

LineMeet Geometry::intersect_in(int l1, int l2) const {
  check_line(l1);
  check_line(l2);
  if (l1 == l2) return {LineMeet::Kind::kSameLine, -1};
  PointSet common =
      lines_[static_cast<std::size_t>(l1)].points & lines_[static_cast<std::size_t>(l2)].points;
  int p = common.lowest();
  if (p < 0) return {LineMeet::Kind::kEmpty, -1};
  return {LineMeet::Kind::kPoint, p};
}

}  // namespace pgkit
