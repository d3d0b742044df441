#include <doctest.h>

#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "pgkit/enumeration.hpp"
#include "pgkit/errors.hpp"
#include "pgkit/geometry.hpp"
#include "pgkit/symmetry.hpp"

using namespace pgkit;

namespace {

Geometry load_fixture() {
  std::ifstream in(PGKIT_FIXTURE_PATH, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return Geometry::load_incidence(buf.str(), "pg32.txt");
}

}  // namespace

TEST_CASE("pgl_order matches the closed formula") {
  CHECK(pgl_order(2, 2) == 168);
  CHECK(pgl_order(2, 3) == 5616);
  CHECK(pgl_order(3, 2) == 20160);
  CHECK(pgl_order(3, 3) == 12130560);
}

TEST_CASE("collineation group closure reaches the full PGL order") {
  Geometry plane = Geometry::build_pg(2, 2);
  std::vector<Collineation> g168 = collineation_group(plane);
  CHECK(g168.size() == 168);
  for (const Collineation& c : g168) CHECK(verify_collineation(plane, c));

  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Collineation> g20160 = collineation_group(g);
  CHECK(g20160.size() == 20160);
}

TEST_CASE("group materialization limits") {
  Geometry loaded = load_fixture();
  CHECK_THROWS_AS(collineation_group(loaded), Error);
  Geometry g33 = Geometry::build_pg(3, 3);
  CHECK_THROWS_AS(collineation_group(g33), Error);  // 12130560 > cap
}

TEST_CASE("generators verify and compose correctly") {
  Geometry g = Geometry::build_pg(3, 2);
  for (GeneratorSet set : {GeneratorSet::kStandard, GeneratorSet::kAlternate}) {
    std::vector<Collineation> gens = collineation_generators(g, set);
    CHECK(!gens.empty());
    for (const Collineation& c : gens) {
      CHECK(verify_collineation(g, c));
      Collineation inv = inverse_of(c);
      Collineation id = compose(c, inv);
      CHECK(id.point_perm == identity_collineation(g).point_perm);
      CHECK(id.line_perm == identity_collineation(g).line_perm);
    }
  }
  // Dilation generator only exists for q > 2.
  Geometry g3 = Geometry::build_pg(2, 3);
  for (const Collineation& c : collineation_generators(g3)) CHECK(verify_collineation(g3, c));
}

TEST_CASE("spread orbits: a single class of size 56 under either generating set") {
  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Spread> spreads = enumerate_spreads(g);
  for (GeneratorSet set : {GeneratorSet::kStandard, GeneratorSet::kAlternate}) {
    std::vector<Collineation> gens = collineation_generators(g, set);
    OrbitIndex idx = OrbitIndex::over_spreads(g, spreads, gens);
    const OrbitReport& r = idx.report();
    CHECK(r.kind == ObjectKind::kSpread);
    CHECK(r.orbit_count == 1);
    CHECK(r.orbit_sizes == std::vector<int>{56});
    CHECK(r.representatives == std::vector<int>{0});
    for (int c : r.class_of) CHECK(c == 0);
  }
}

TEST_CASE("packing orbits: two classes of size 120 under either generating set") {
  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Spread> spreads = enumerate_spreads(g);
  std::vector<Packing> packings = enumerate_packings(g, spreads);
  for (GeneratorSet set : {GeneratorSet::kStandard, GeneratorSet::kAlternate}) {
    std::vector<Collineation> gens = collineation_generators(g, set);
    OrbitIndex idx = OrbitIndex::over_packings(g, spreads, packings, gens);
    const OrbitReport& r = idx.report();
    CHECK(r.kind == ObjectKind::kPacking);
    CHECK(r.orbit_count == 2);
    CHECK(r.orbit_sizes == std::vector<int>{120, 120});
    CHECK(std::accumulate(r.sizes_by_class.begin(), r.sizes_by_class.end(), 0) == 240);
    for (int size : r.sizes_by_class) CHECK(20160 % size == 0);
    // Representatives are the minimal member of each class.
    REQUIRE(r.representatives.size() == 2);
    CHECK(r.representatives[0] == 0);
    CHECK(r.class_of[static_cast<std::size_t>(r.representatives[1])] == 1);
    for (int i = 0; i < r.representatives[1]; ++i) CHECK(r.class_of[static_cast<std::size_t>(i)] == 0);
  }
}

TEST_CASE("applying collineations preserves membership and class") {
  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Spread> spreads = enumerate_spreads(g);
  std::vector<Packing> packings = enumerate_packings(g, spreads);
  std::vector<Collineation> gens = collineation_generators(g);
  OrbitIndex sidx = OrbitIndex::over_spreads(g, spreads, gens);
  OrbitIndex pidx = OrbitIndex::over_packings(g, spreads, packings, gens);

  for (std::size_t gi = 0; gi < gens.size() && gi < 3; ++gi) {
    std::vector<std::uint16_t> sperm = induced_spread_perm(gens[gi], g, spreads);
    for (std::size_t s = 0; s < spreads.size(); ++s) {
      Spread image = apply(gens[gi], spreads[s], g);  // throws if not a spread
      CHECK(image.lines == spreads[sperm[s]].lines);
      CHECK(sidx.report().class_of[s] == sidx.report().class_of[sperm[s]]);
    }
    for (std::size_t p = 0; p < packings.size(); ++p) {
      Packing image = apply(sperm, packings[p], g, spreads);
      CHECK(is_packing(g, spreads, image.spreads));
    }
  }
}

TEST_CASE("witnesses map spread onto spread and verify") {
  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Spread> spreads = enumerate_spreads(g);
  std::vector<Collineation> gens = collineation_generators(g);
  OrbitIndex idx = OrbitIndex::over_spreads(g, spreads, gens);

  std::optional<Collineation> w = idx.witness(0, 5);
  REQUIRE(w.has_value());
  CHECK(verify_collineation(g, *w));
  std::vector<int> image;
  for (int l : spreads[0].lines) image.push_back(w->line_perm[static_cast<std::size_t>(l)]);
  std::sort(image.begin(), image.end());
  CHECK(image == spreads[5].lines);

  std::optional<Collineation> self = idx.witness(3, 3);
  REQUIRE(self.has_value());
  CHECK(self->point_perm == identity_collineation(g).point_perm);

  CHECK_THROWS_AS(idx.witness(0, 99), Error);
}

TEST_CASE("cross-class packing witnesses do not exist") {
  Geometry g = Geometry::build_pg(3, 2);
  std::vector<Spread> spreads = enumerate_spreads(g);
  std::vector<Packing> packings = enumerate_packings(g, spreads);
  std::vector<Collineation> gens = collineation_generators(g);
  OrbitIndex idx = OrbitIndex::over_packings(g, spreads, packings, gens);
  const OrbitReport& r = idx.report();
  int other = r.representatives[1];
  CHECK_FALSE(idx.witness(0, other).has_value());
  // Same-class witness exists and verifies.
  int same = -1;
  for (std::size_t i = 1; i < r.class_of.size(); ++i)
    if (r.class_of[i] == 0) {
      same = static_cast<int>(i);
      break;
    }
  REQUIRE(same > 0);
  std::optional<Collineation> w = idx.witness(0, same);
  REQUIRE(w.has_value());
  CHECK(verify_collineation(g, *w));
}

TEST_CASE("find_isomorphism bridges constructed and loaded labelings") {
  Geometry built = Geometry::build_pg(3, 2);
  Geometry loaded = load_fixture();
  std::optional<Collineation> iso = find_isomorphism(built, loaded);
  REQUIRE(iso.has_value());
  // Point images preserve incidence line by line.
  for (const LineRec& l : built.lines()) {
    int img = iso->line_perm[static_cast<std::size_t>(l.index)];
    for (int p : l.point_list)
      CHECK(loaded.incid(iso->point_perm[static_cast<std::size_t>(p)], img));
  }
  // Identity when matching a geometry against itself.
  std::optional<Collineation> self = find_isomorphism(built, built);
  REQUIRE(self.has_value());
  CHECK(self->point_perm == identity_collineation(built).point_perm);
  // Mismatched shapes are rejected quickly.
  CHECK_FALSE(find_isomorphism(built, Geometry::build_pg(2, 2)).has_value());
  CHECK_FALSE(find_isomorphism(Geometry::build_pg(2, 2), Geometry::build_pg(2, 3)).has_value());
  // Same counts and degree multiset, different structure: a triangle plus an
  // isolated edge is not a 4-edge path.
  Geometry triangle = Geometry::load_incidence("0 1\n1 2\n0 2\n3 4\n", "triangle-plus-edge");
  Geometry path = Geometry::load_incidence("0 1\n1 2\n2 3\n3 4\n", "path");
  CHECK(triangle.num_points() == path.num_points());
  CHECK(triangle.num_lines() == path.num_lines());
  CHECK_FALSE(find_isomorphism(triangle, path).has_value());
  // And two relabelings of the same graph are matched.
  Geometry path2 = Geometry::load_incidence("4 3\n3 2\n2 1\n1 0\n", "path-relabeled");
  CHECK(find_isomorphism(path, path2).has_value());
}

TEST_CASE("loaded geometries get bridged generators") {
  Geometry loaded = load_fixture();
  CHECK(inferred_parameters(loaded) == std::pair<int, int>{3, 2});
  std::vector<Collineation> gens = generators_for(loaded);
  CHECK(!gens.empty());
  for (const Collineation& c : gens) CHECK(verify_collineation(loaded, c));
  std::vector<Spread> spreads = enumerate_spreads(loaded);
  OrbitIndex idx = OrbitIndex::over_spreads(loaded, spreads, gens);
  CHECK(idx.report().orbit_count == 1);
  CHECK(idx.report().orbit_sizes == std::vector<int>{56});
}
