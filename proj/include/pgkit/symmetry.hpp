#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pgkit/enumeration.hpp"
#include "pgkit/geometry.hpp"

namespace pgkit {

// An incidence-preserving map. For automorphisms point_perm/line_perm are
// permutations of one geometry's indices; find_isomorphism returns the same
// shape with entries mapping the first geometry's indices to the second's.
// `matrix` (row-major, matrix_dim x matrix_dim field elements) is present
// only for matrix-induced generators.
struct Collineation {
  std::vector<std::uint16_t> point_perm;
  std::vector<std::uint16_t> line_perm;
  std::vector<int> matrix;
  int matrix_dim = 0;
};

enum class GeneratorSet {
  kStandard,   // all transvections + adjacent transpositions + dilation
  kAlternate,  // one transvection + adjacent transpositions + dilation
};

// |PGL(n+1, q)| = (prod_{i=0}^{n} (q^{n+1} - q^i)) / (q - 1).
std::uint64_t pgl_order(int n, int q);

// (n, q) recovered from point/line counts and row width; works for loaded
// geometries whose parameters are not stored. Throws Error when the counts
// match no supported PG(n,q).
std::pair<int, int> inferred_parameters(const Geometry& g);

// Matrix-induced generators of the collineation group of a constructed
// PG(n,q). Throws Error for loaded geometries (see generators_for).
std::vector<Collineation> collineation_generators(const Geometry& g,
                                                  GeneratorSet set = GeneratorSet::kStandard);

// Generators valid for any PG(n,q)-shaped geometry: constructed ones get the
// matrix route; loaded ones are bridged through a constructed twin — the
// twin's generators are conjugated by a find_isomorphism witness into the
// loaded labeling.
std::vector<Collineation> generators_for(const Geometry& g,
                                         GeneratorSet set = GeneratorSet::kStandard);

// The full collineation group as explicit permutations (BFS closure of the
// generating set). Throws Error for loaded geometries (bridge through
// find_isomorphism / generators_for first) and when the group is too large
// to materialize (order > 2^21).
std::vector<Collineation> collineation_group(const Geometry& g);

// f after h: (compose(f,h))(x) = f(h(x)).
Collineation compose(const Collineation& f, const Collineation& h);
Collineation inverse_of(const Collineation& c);
Collineation identity_collineation(const Geometry& g);

// Full incidence-preservation re-check (bijectivity + exact line images).
bool verify_collineation(const Geometry& g, const Collineation& c);

// Image of a spread; throws Error if the image fails is_spread (incidence
// preservation guarantees it cannot for a verified collineation).
Spread apply(const Collineation& c, const Spread& s, const Geometry& g);

// Permutation of spread indices induced by a collineation; entry i is the
// index of the image of spread i in the enumerated list. Throws Error if an
// image is not in the list.
std::vector<std::uint16_t> induced_spread_perm(const Collineation& c, const Geometry& g,
                                               const std::vector<Spread>& spreads);

// Image of a packing under an induced spread permutation.
Packing apply(const std::vector<std::uint16_t>& spread_perm, const Packing& p, const Geometry& g,
              const std::vector<Spread>& spreads);

enum class ObjectKind { kSpread, kPacking };

struct OrbitReport {
  ObjectKind kind = ObjectKind::kSpread;
  int orbit_count = 0;
  std::vector<int> orbit_sizes;      // sorted ascending
  std::vector<int> sizes_by_class;   // indexed by orbit id (discovery order)
  std::vector<int> representatives;  // orbit id -> minimal member object index
  std::vector<int> class_of;         // object index -> orbit id
};

// Orbit decomposition of a list of canonical objects under generator BFS,
// with per-object group words retained so that explicit witnesses between
// any two objects of one orbit can be composed without materializing the
// full group.
class OrbitIndex {
 public:
  static OrbitIndex over_spreads(const Geometry& g, const std::vector<Spread>& spreads,
                                 const std::vector<Collineation>& gens);
  static OrbitIndex over_packings(const Geometry& g, const std::vector<Spread>& spreads,
                                  const std::vector<Packing>& packings,
                                  const std::vector<Collineation>& gens);

  const OrbitReport& report() const { return report_; }

  // A collineation mapping object `from` onto object `to` (as sets), or
  // nullopt when they lie in different orbits. The result is re-verified
  // against the object lists before being returned.
  std::optional<Collineation> witness(int from, int to) const;

 private:
  OrbitIndex() = default;
  void bfs(const std::vector<std::vector<int>>& objects,
           const std::vector<std::vector<std::uint16_t>>& obj_perm,
           const std::vector<Collineation>& gens, const Geometry& g);

  OrbitReport report_;
  std::vector<Collineation> word_;         // representative -> object
  std::vector<std::vector<int>> objects_;  // canonical sorted tuples
  // Packing mode only: spread line tuples and their reverse lookup, kept so
  // witnesses can be re-verified without the original Spread list.
  std::vector<std::vector<int>> spread_lines_;
  std::map<std::vector<int>, int> spread_key_;
};

// Backtracking incidence-structure isomorphism between two geometries;
// point images are tried in ascending order, so g vs g yields the identity.
std::optional<Collineation> find_isomorphism(const Geometry& g1, const Geometry& g2);

}  // namespace pgkit
