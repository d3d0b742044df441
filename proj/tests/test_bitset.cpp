#include <doctest.h>

#include <vector>

#include "pgkit/bitset.hpp"

using pgkit::FixedBitset;
using pgkit::LineSet;
using pgkit::PointSet;

TEST_CASE("bitset capacity and basic set/test") {
  CHECK(PointSet::capacity() == 128);
  CHECK(LineSet::capacity() == 384);
  PointSet s;
  CHECK(s.none());
  CHECK_FALSE(s.any());
  CHECK(s.count() == 0);
  s.set(0);
  s.set(63);
  s.set(64);
  s.set(127);
  CHECK(s.count() == 4);
  CHECK(s.test(0));
  CHECK(s.test(63));
  CHECK(s.test(64));
  CHECK(s.test(127));
  CHECK_FALSE(s.test(1));
  s.reset(63);
  CHECK_FALSE(s.test(63));
  CHECK(s.count() == 3);
}

TEST_CASE("bitset lowest and ascending iteration") {
  LineSet s;
  s.set(300);
  s.set(5);
  s.set(77);
  CHECK(s.lowest() == 5);
  std::vector<int> seen;
  s.for_each([&](int i) { seen.push_back(i); });
  CHECK(seen == std::vector<int>{5, 77, 300});
  CHECK(s.to_indices() == std::vector<int>{5, 77, 300});
}

TEST_CASE("bitset set algebra") {
  PointSet a, b;
  a.set(1);
  a.set(2);
  a.set(3);
  b.set(3);
  b.set(4);
  CHECK(a.intersects(b));
  CHECK((a & b).to_indices() == std::vector<int>{3});
  CHECK((a | b).to_indices() == std::vector<int>{1, 2, 3, 4});
  CHECK(a.and_not(b).to_indices() == std::vector<int>{1, 2});
  PointSet sub;
  sub.set(1);
  sub.set(3);
  CHECK(a.contains(sub));
  CHECK_FALSE(b.contains(sub));
  PointSet c = a;
  CHECK(c == a);
  c.reset(1);
  CHECK_FALSE(c == a);
}

TEST_CASE("bitset all_below") {
  PointSet s = PointSet::all_below(70);
  CHECK(s.count() == 70);
  CHECK(s.test(0));
  CHECK(s.test(69));
  CHECK_FALSE(s.test(70));
  CHECK(PointSet::all_below(0).none());
  CHECK(PointSet::all_below(128).count() == 128);
}

TEST_CASE("bitset disjoint sets do not intersect") {
  LineSet a, b;
  a.set(10);
  b.set(11);
  CHECK_FALSE(a.intersects(b));
  b.set(10);
  CHECK(a.intersects(b));
}
