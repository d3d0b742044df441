#include <doctest.h>

#include <set>
#include <vector>

#include "pgkit/errors.hpp"
#include "pgkit/gf.hpp"

using pgkit::Error;
using pgkit::Field;

namespace {

// Exhaustive field-axiom check; q <= 9 keeps this at most 729 triples.
void check_field_axioms(const Field& f) {
  const int q = f.q();
  for (int a = 0; a < q; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(a, 0) == 0);
    CHECK(f.add(a, f.neg(a)) == 0);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    for (int b = 0; b < q; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (int c = 0; c < q; ++c) {
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("prime fields") {
  Field f2 = Field::make(2);
  CHECK(f2.characteristic() == 2);
  CHECK(f2.degree() == 1);
  CHECK(f2.add(1, 1) == 0);
  CHECK(f2.mul(1, 1) == 1);

  Field f3 = Field::make(3);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f3.neg(1) == 2);
  CHECK(f3.inv(2) == 2);

  Field f7 = Field::make(7);
  CHECK(f7.mul(3, 5) == 1);
  CHECK(f7.inv(3) == 5);
}

TEST_CASE("extension fields use the fixed reduction polynomials") {
  Field f4 = Field::make(4);
  CHECK(f4.characteristic() == 2);
  CHECK(f4.degree() == 2);
  CHECK(f4.reduction_poly() == std::vector<int>{1, 1, 1});  // x^2 + x + 1
  // Element 2 encodes x; x*x = x + 1 which encodes to 3.
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.mul(2, 3) == 1);
  CHECK(f4.add(2, 3) == 1);  // characteristic 2: (x) + (x+1) = 1

  Field f8 = Field::make(8);
  CHECK(f8.degree() == 3);
  CHECK(f8.reduction_poly() == std::vector<int>{1, 1, 0, 1});  // x^3 + x + 1
  // x * x^2 = x^3 = x + 1 -> digits (1,1) -> 3.
  CHECK(f8.mul(2, 4) == 3);

  Field f9 = Field::make(9);
  CHECK(f9.characteristic() == 3);
  CHECK(f9.degree() == 2);
  CHECK(f9.reduction_poly() == std::vector<int>{1, 0, 1});  // x^2 + 1
  // x * x = -1 = 2.
  CHECK(f9.mul(3, 3) == 2);
}

TEST_CASE("field axioms hold exhaustively for every supported order") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    check_field_axioms(Field::make(q));
  }
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    Field f = Field::make(q);
    int g = f.primitive_element();
    std::set<int> powers;
    int x = 1;
    for (int i = 0; i + 1 < q; ++i) {
      powers.insert(x);
      x = f.mul(x, g);
    }
    CHECK(static_cast<int>(powers.size()) == q - 1);
    CHECK(x == 1);  // g^(q-1) = 1
  }
}

TEST_CASE("invalid orders and arguments are rejected") {
  CHECK_THROWS_AS(Field::make(6), Error);
  CHECK_THROWS_AS(Field::make(1), Error);
  CHECK_THROWS_AS(Field::make(16), Error);
  CHECK_THROWS_AS(Field::make(0), Error);
  Field f = Field::make(5);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK_THROWS_AS(f.add(5, 0), Error);
  CHECK_THROWS_AS(f.mul(0, -1), Error);
}
