#include "pgkit/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "pgkit/errors.hpp"

namespace pgkit {
namespace {

std::vector<int> identity_matrix(int d) {
  std::vector<int> m(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1;
  return m;
}

// Shared lookup state for turning matrices into index permutations.
struct MatrixContext {
  const Geometry& g;
  int dim;
  std::map<std::vector<int>, int> point_index;

  explicit MatrixContext(const Geometry& geom) : g(geom), dim(geom.n() + 1) {
    for (const ProjPoint& p : g.points()) point_index.emplace(p.coords, p.index);
  }

  std::vector<int> normalize(std::vector<int> v) const {
    const Field& f = *g.field();
    for (int c : v) {
      if (c != 0) {
        int s = f.inv(c);
        for (int& x : v) x = f.mul(x, s);
        return v;
      }
    }
    throw Error("matrix is singular: a point maps to the zero vector");
  }

  Collineation from_matrix(const std::vector<int>& m) const {
    const Field& f = *g.field();
    const int P = g.num_points();
    Collineation c;
    c.matrix = m;
    c.matrix_dim = dim;
    c.point_perm.resize(static_cast<std::size_t>(P));
    for (const ProjPoint& p : g.points()) {
      std::vector<int> w(static_cast<std::size_t>(dim), 0);
      for (int i = 0; i < dim; ++i) {
        int acc = 0;
        for (int j = 0; j < dim; ++j)
          acc = f.add(acc, f.mul(m[static_cast<std::size_t>(i) * dim + j],
                                 p.coords[static_cast<std::size_t>(j)]));
        w[static_cast<std::size_t>(i)] = acc;
      }
      auto it = point_index.find(normalize(w));
      if (it == point_index.end()) throw Error("matrix image is not a point of the geometry");
      c.point_perm[static_cast<std::size_t>(p.index)] = static_cast<std::uint16_t>(it->second);
    }
    c.line_perm.resize(static_cast<std::size_t>(g.num_lines()));
    for (const LineRec& l : g.lines()) {
      int a = c.point_perm[static_cast<std::size_t>(l.point_list[0])];
      int b = c.point_perm[static_cast<std::size_t>(l.point_list[1])];
      c.line_perm[static_cast<std::size_t>(l.index)] = static_cast<std::uint16_t>(g.line_through(a, b));
    }
    return c;
  }
};

std::string perm_key(const std::vector<std::uint16_t>& p) {
  return std::string(reinterpret_cast<const char*>(p.data()), p.size() * sizeof(std::uint16_t));
}

void append_unique(std::vector<Collineation>& out, std::unordered_set<std::string>& seen,
                   Collineation c) {
  if (seen.insert(perm_key(c.point_perm)).second) out.push_back(std::move(c));
}

bool collinear3(const Geometry& g, int a, int b, int c) {
  int l = g.line_through_or_none(a, b);
  return l >= 0 && g.incid(c, l);
}

// Depth-first extension of a partial point bijection g1 -> g2.
struct IsoSearch {
  const Geometry& g1;
  const Geometry& g2;
  std::vector<int> map;
  std::vector<char> used;
  std::vector<int> deg1, deg2;

  IsoSearch(const Geometry& a, const Geometry& b)
      : g1(a),
        g2(b),
        map(static_cast<std::size_t>(a.num_points()), -1),
        used(static_cast<std::size_t>(b.num_points()), 0) {
    for (int v = 0; v < a.num_points(); ++v) deg1.push_back(a.lines_through(v).count());
    for (int w = 0; w < b.num_points(); ++w) deg2.push_back(b.lines_through(w).count());
  }

  bool consistent(int v, int w) const {
    if (deg1[static_cast<std::size_t>(v)] != deg2[static_cast<std::size_t>(w)]) return false;
    for (int u = 0; u < v; ++u) {
      int mu = map[static_cast<std::size_t>(u)];
      int l1 = g1.line_through_or_none(u, v);
      int l2 = g2.line_through_or_none(mu, w);
      if ((l1 < 0) != (l2 < 0)) return false;
      for (int u2 = u + 1; u2 < v; ++u2) {
        int mu2 = map[static_cast<std::size_t>(u2)];
        if (collinear3(g1, u, u2, v) != collinear3(g2, mu, mu2, w)) return false;
      }
    }
    return true;
  }

  bool extend(int v, Collineation& out) {
    if (v == g1.num_points()) return finish(out);
    for (int w = 0; w < g2.num_points(); ++w) {
      if (used[static_cast<std::size_t>(w)] || !consistent(v, w)) continue;
      map[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      if (extend(v + 1, out)) return true;
      used[static_cast<std::size_t>(w)] = 0;
      map[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  bool finish(Collineation& out) {
    std::map<std::array<std::uint64_t, 2>, int> mask_to_line;
    for (const LineRec& l : g2.lines()) mask_to_line.emplace(l.points.w, l.index);
    std::vector<std::uint16_t> lp(static_cast<std::size_t>(g1.num_lines()));
    for (const LineRec& l : g1.lines()) {
      PointSet image;
      for (int p : l.point_list) image.set(map[static_cast<std::size_t>(p)]);
      auto it = mask_to_line.find(image.w);
      if (it == mask_to_line.end()) return false;
      lp[static_cast<std::size_t>(l.index)] = static_cast<std::uint16_t>(it->second);
    }
    out.point_perm.assign(map.begin(), map.end());
    std::transform(map.begin(), map.end(), out.point_perm.begin(),
                   [](int x) { return static_cast<std::uint16_t>(x); });
    out.line_perm = std::move(lp);
    return true;
  }
};

}  // namespace

std::pair<int, int> inferred_parameters(const Geometry& g) {
  if (g.provenance() == Geometry::Provenance::kConstructed) return {g.n(), g.q()};
  int q = g.order();
  long long p2 = static_cast<long long>(q) * q + q + 1;
  if (g.num_points() == p2 && g.num_lines() == p2) return {2, q};
  long long p3 = (static_cast<long long>(q) * q + 1) * (q + 1);
  long long l3 = (static_cast<long long>(q) * q + q + 1) * (static_cast<long long>(q) * q + 1);
  if (g.num_points() == p3 && g.num_lines() == l3) return {3, q};
  throw Error("geometry does not have the point/line counts of a supported PG(n,q)");
}

std::uint64_t pgl_order(int n, int q) {
  std::uint64_t qn1 = 1;
  for (int i = 0; i <= n; ++i) qn1 *= static_cast<std::uint64_t>(q);
  std::uint64_t order = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i <= n; ++i) {
    order *= qn1 - qi;
    qi *= static_cast<std::uint64_t>(q);
  }
  return order / static_cast<std::uint64_t>(q - 1);
}

std::vector<Collineation> collineation_generators(const Geometry& g, GeneratorSet set) {
  if (g.provenance() == Geometry::Provenance::kLoaded)
    throw Error(
        "matrix generators require a constructed geometry; use generators_for to bridge a loaded "
        "one");
  MatrixContext ctx(g);
  const int d = ctx.dim;
  const int q = g.q();
  std::vector<Collineation> gens;
  std::unordered_set<std::string> seen;

  if (set == GeneratorSet::kStandard) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        for (int lam = 1; lam < q; ++lam) {
          std::vector<int> m = identity_matrix(d);
          m[static_cast<std::size_t>(i) * d + j] = lam;
          append_unique(gens, seen, ctx.from_matrix(m));
        }
      }
  } else {
    std::vector<int> m = identity_matrix(d);
    m[1] = 1;  // row 0, column 1
    append_unique(gens, seen, ctx.from_matrix(m));
  }
  for (int k = 0; k + 1 < d; ++k) {
    std::vector<int> m(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) {
      int target = (i == k) ? k + 1 : (i == k + 1 ? k : i);
      m[static_cast<std::size_t>(i) * d + target] = 1;
    }
    append_unique(gens, seen, ctx.from_matrix(m));
  }
  if (q > 2) {
    std::vector<int> m = identity_matrix(d);
    m[0] = g.field()->primitive_element();
    append_unique(gens, seen, ctx.from_matrix(m));
  }
  return gens;
}

std::vector<Collineation> generators_for(const Geometry& g, GeneratorSet set) {
  if (g.provenance() == Geometry::Provenance::kConstructed) return collineation_generators(g, set);
  auto [n, q] = inferred_parameters(g);
  Geometry twin = Geometry::build_pg(n, q);
  std::optional<Collineation> iso = find_isomorphism(twin, g);
  if (!iso)
    throw Error("loaded geometry is not isomorphic to PG(" + std::to_string(n) + "," +
                std::to_string(q) + ")");
  Collineation inv = inverse_of(*iso);
  std::vector<Collineation> gens;
  for (const Collineation& c : collineation_generators(twin, set)) {
    Collineation bridged = compose(*iso, compose(c, inv));
    bridged.matrix.clear();
    bridged.matrix_dim = 0;
    gens.push_back(std::move(bridged));
  }
  return gens;
}

std::vector<Collineation> collineation_group(const Geometry& g) {
  if (g.provenance() == Geometry::Provenance::kLoaded)
    throw Error(
        "collineation_group requires a constructed geometry; bridge loaded ones with "
        "generators_for");
  std::uint64_t order = pgl_order(g.n(), g.q());
  if (order > (1ull << 21))
    throw Error("collineation group of order " + std::to_string(order) +
                " is too large to materialize");
  std::vector<Collineation> gens = collineation_generators(g, GeneratorSet::kStandard);
  std::vector<Collineation> elems;
  std::unordered_set<std::string> seen;
  append_unique(elems, seen, identity_collineation(g));
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const Collineation& gen : gens) append_unique(elems, seen, compose(gen, elems[head]));
  if (elems.size() != order)
    throw Error("generated group has order " + std::to_string(elems.size()) + ", expected " +
                std::to_string(order));
  return elems;
}

Collineation compose(const Collineation& f, const Collineation& h) {
  if (f.point_perm.size() != h.point_perm.size() || f.line_perm.size() != h.line_perm.size())
    throw Error("cannot compose collineations of different sizes");
  Collineation out;
  out.point_perm.resize(h.point_perm.size());
  out.line_perm.resize(h.line_perm.size());
  for (std::size_t i = 0; i < h.point_perm.size(); ++i)
    out.point_perm[i] = f.point_perm[h.point_perm[i]];
  for (std::size_t i = 0; i < h.line_perm.size(); ++i)
    out.line_perm[i] = f.line_perm[h.line_perm[i]];
  return out;
}

Collineation inverse_of(const Collineation& c) {
  Collineation out;
  out.point_perm.resize(c.point_perm.size());
  out.line_perm.resize(c.line_perm.size());
  for (std::size_t i = 0; i < c.point_perm.size(); ++i)
    out.point_perm[c.point_perm[i]] = static_cast<std::uint16_t>(i);
  for (std::size_t i = 0; i < c.line_perm.size(); ++i)
    out.line_perm[c.line_perm[i]] = static_cast<std::uint16_t>(i);
  return out;
}

Collineation identity_collineation(const Geometry& g) {
  Collineation c;
  c.point_perm.resize(static_cast<std::size_t>(g.num_points()));
  c.line_perm.resize(static_cast<std::size_t>(g.num_lines()));
  std::iota(c.point_perm.begin(), c.point_perm.end(), 0);
  std::iota(c.line_perm.begin(), c.line_perm.end(), 0);
  return c;
}

bool verify_collineation(const Geometry& g, const Collineation& c) {
  const std::size_t P = static_cast<std::size_t>(g.num_points());
  const std::size_t L = static_cast<std::size_t>(g.num_lines());
  if (c.point_perm.size() != P || c.line_perm.size() != L) return false;
  std::vector<char> hitp(P, 0), hitl(L, 0);
  for (std::uint16_t v : c.point_perm) {
    if (v >= P || hitp[v]) return false;
    hitp[v] = 1;
  }
  for (std::uint16_t v : c.line_perm) {
    if (v >= L || hitl[v]) return false;
    hitl[v] = 1;
  }
  for (const LineRec& l : g.lines()) {
    PointSet image;
    for (int p : l.point_list) image.set(c.point_perm[static_cast<std::size_t>(p)]);
    if (!(image == g.line(c.line_perm[static_cast<std::size_t>(l.index)]).points)) return false;
  }
  return true;
}

Spread apply(const Collineation& c, const Spread& s, const Geometry& g) {
  Spread out;
  out.lines.reserve(s.lines.size());
  for (int l : s.lines) out.lines.push_back(c.line_perm.at(static_cast<std::size_t>(l)));
  std::sort(out.lines.begin(), out.lines.end());
  if (!is_spread(g, out.lines)) throw Error("collineation image of a spread is not a spread");
  for (int l : out.lines) out.covered |= g.line(l).points;
  return out;
}

std::vector<std::uint16_t> induced_spread_perm(const Collineation& c, const Geometry& g,
                                               const std::vector<Spread>& spreads) {
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < spreads.size(); ++i)
    index.emplace(spreads[i].lines, static_cast<int>(i));
  std::vector<std::uint16_t> perm(spreads.size());
  for (std::size_t i = 0; i < spreads.size(); ++i) {
    Spread image = apply(c, spreads[i], g);
    auto it = index.find(image.lines);
    if (it == index.end()) throw Error("spread image is missing from the enumerated list");
    perm[i] = static_cast<std::uint16_t>(it->second);
  }
  return perm;
}

Packing apply(const std::vector<std::uint16_t>& spread_perm, const Packing& p, const Geometry& g,
              const std::vector<Spread>& spreads) {
  Packing out;
  out.spreads.reserve(p.spreads.size());
  for (int s : p.spreads) out.spreads.push_back(spread_perm.at(static_cast<std::size_t>(s)));
  std::sort(out.spreads.begin(), out.spreads.end());
  if (!is_packing(g, spreads, out.spreads))
    throw Error("collineation image of a packing is not a packing");
  for (int s : out.spreads)
    for (int l : spreads[static_cast<std::size_t>(s)].lines) out.covered.set(l);
  return out;
}

OrbitIndex OrbitIndex::over_spreads(const Geometry& g, const std::vector<Spread>& spreads,
                                    const std::vector<Collineation>& gens) {
  OrbitIndex idx;
  idx.report_.kind = ObjectKind::kSpread;
  std::vector<std::vector<int>> objects;
  objects.reserve(spreads.size());
  for (const Spread& s : spreads) objects.push_back(s.lines);
  std::vector<std::vector<std::uint16_t>> obj_perm;
  obj_perm.reserve(gens.size());
  for (const Collineation& c : gens) obj_perm.push_back(induced_spread_perm(c, g, spreads));
  idx.bfs(objects, obj_perm, gens, g);
  return idx;
}

OrbitIndex OrbitIndex::over_packings(const Geometry& g, const std::vector<Spread>& spreads,
                                     const std::vector<Packing>& packings,
                                     const std::vector<Collineation>& gens) {
  OrbitIndex idx;
  idx.report_.kind = ObjectKind::kPacking;
  for (const Spread& s : spreads) {
    idx.spread_lines_.push_back(s.lines);
    idx.spread_key_.emplace(s.lines, static_cast<int>(idx.spread_lines_.size()) - 1);
  }
  std::vector<std::vector<int>> objects;
  objects.reserve(packings.size());
  for (const Packing& p : packings) objects.push_back(p.spreads);
  std::map<std::vector<int>, int> pk_index;
  for (std::size_t i = 0; i < objects.size(); ++i) pk_index.emplace(objects[i], static_cast<int>(i));
  std::vector<std::vector<std::uint16_t>> obj_perm;
  obj_perm.reserve(gens.size());
  for (const Collineation& c : gens) {
    std::vector<std::uint16_t> sp = induced_spread_perm(c, g, spreads);
    std::vector<std::uint16_t> pp(packings.size());
    for (std::size_t i = 0; i < packings.size(); ++i) {
      Packing image = apply(sp, packings[i], g, spreads);
      auto it = pk_index.find(image.spreads);
      if (it == pk_index.end()) throw Error("packing image is missing from the enumerated list");
      pp[i] = static_cast<std::uint16_t>(it->second);
    }
    obj_perm.push_back(std::move(pp));
  }
  idx.bfs(objects, obj_perm, gens, g);
  return idx;
}

void OrbitIndex::bfs(const std::vector<std::vector<int>>& objects,
                     const std::vector<std::vector<std::uint16_t>>& obj_perm,
                     const std::vector<Collineation>& gens, const Geometry& g) {
  objects_ = objects;
  const int N = static_cast<int>(objects.size());
  report_.class_of.assign(static_cast<std::size_t>(N), -1);
  word_.resize(static_cast<std::size_t>(N));
  for (int root = 0; root < N; ++root) {
    if (report_.class_of[static_cast<std::size_t>(root)] != -1) continue;
    const int cls = static_cast<int>(report_.representatives.size());
    report_.representatives.push_back(root);
    report_.class_of[static_cast<std::size_t>(root)] = cls;
    word_[static_cast<std::size_t>(root)] = identity_collineation(g);
    std::queue<int> frontier;
    frontier.push(root);
    int size = 1;
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop();
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int nxt = obj_perm[gi][static_cast<std::size_t>(cur)];
        if (report_.class_of[static_cast<std::size_t>(nxt)] != -1) continue;
        report_.class_of[static_cast<std::size_t>(nxt)] = cls;
        word_[static_cast<std::size_t>(nxt)] = compose(gens[gi], word_[static_cast<std::size_t>(cur)]);
        frontier.push(nxt);
        ++size;
      }
    }
    report_.sizes_by_class.push_back(size);
  }
  report_.orbit_count = static_cast<int>(report_.representatives.size());
  report_.orbit_sizes = report_.sizes_by_class;
  std::sort(report_.orbit_sizes.begin(), report_.orbit_sizes.end());
}

std::optional<Collineation> OrbitIndex::witness(int from, int to) const {
  const int N = static_cast<int>(objects_.size());
  if (from < 0 || from >= N || to < 0 || to >= N)
    throw Error("object index out of range (have " + std::to_string(N) + " objects)");
  if (report_.class_of[static_cast<std::size_t>(from)] !=
      report_.class_of[static_cast<std::size_t>(to)])
    return std::nullopt;
  Collineation w = compose(word_[static_cast<std::size_t>(to)],
                           inverse_of(word_[static_cast<std::size_t>(from)]));
  std::vector<int> image;
  if (report_.kind == ObjectKind::kSpread) {
    for (int l : objects_[static_cast<std::size_t>(from)])
      image.push_back(w.line_perm[static_cast<std::size_t>(l)]);
  } else {
    for (int s : objects_[static_cast<std::size_t>(from)]) {
      std::vector<int> lines;
      for (int l : spread_lines_[static_cast<std::size_t>(s)])
        lines.push_back(w.line_perm[static_cast<std::size_t>(l)]);
      std::sort(lines.begin(), lines.end());
      auto it = spread_key_.find(lines);
      if (it == spread_key_.end()) throw Error("witness maps a spread outside the enumerated list");
      image.push_back(it->second);
    }
  }
  std::sort(image.begin(), image.end());
  if (image != objects_[static_cast<std::size_t>(to)])
    throw Error("witness verification failed: image does not match the target object");
  return w;
}

std::optional<Collineation> find_isomorphism(const Geometry& g1, const Geometry& g2) {
  if (g1.num_points() != g2.num_points() || g1.num_lines() != g2.num_lines() ||
      g1.points_per_line() != g2.points_per_line())
    return std::nullopt;
  IsoSearch search(g1, g2);
  Collineation out;
  if (!search.extend(0, out)) return std::nullopt;
  return out;
}

}  // namespace pgkit
