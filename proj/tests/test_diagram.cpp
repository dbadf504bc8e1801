#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "zq/builder.hpp"
#include "zq/diagram.hpp"

using namespace zq;

TEST_CASE("crossing-free circle is a valid two-face diagram") {
  Diagram d;
  CompId c = add_unknot(d, Rational::integer(0), kNoDart);
  CHECK(validate(d).empty());
  CHECK(faces(d).size() == 2);
  CHECK(d.component_walk(c).size() == 2);
  CHECK(d.crossing_count() == 0);
}

TEST_CASE("wedge of two circles: outer face plus one monogon per petal") {
  Diagram d;
  add_wedge(d, 2, kNoDart);
  CHECK(validate(d).empty());
  CHECK(faces(d).size() == 3);
  CHECK(d.alive_comps().size() == 2);
  CHECK(d.comps[0].petal == 0);
  CHECK(d.comps[1].petal == 1);
}

TEST_CASE("trefoil fixture: five faces, one curve through three crossings") {
  Diagram d = zqtest::make_trefoil(false);
  CHECK(validate(d).empty());
  CHECK(faces(d).size() == 5);
  CHECK(d.crossing_count() == 3);
  CHECK(d.component_walk(0).size() == 6);
  // All three crossings carry the same sign.
  int s0 = crossing_sign(d, 0);
  CHECK(crossing_sign(d, 1) == s0);
  CHECK(crossing_sign(d, 2) == s0);
}

TEST_CASE("canonical code ignores dart labels") {
  Diagram d = zqtest::make_trefoil(false);
  std::string code = canonical_code(d);
  for (unsigned seed : {1u, 7u, 42u}) {
    Diagram p = zqtest::permute_darts(d, seed);
    CHECK(validate(p).empty());
    CHECK(canonical_code(p) == code);
  }
}

TEST_CASE("canonical code keeps chirality") {
  Diagram d = zqtest::make_trefoil(false);
  Diagram m = zqtest::make_trefoil(true);
  CHECK(validate(m).empty());
  CHECK(canonical_code(d) != canonical_code(m));
}

TEST_CASE("canonical code separates distinct diagrams") {
  Diagram trefoil = zqtest::make_trefoil(false);
  Diagram unknot;
  add_unknot(unknot, Rational::integer(0), kNoDart);
  CHECK_FALSE(isomorphic(trefoil, unknot));

  Diagram empty;
  CHECK(canonical_code(empty).empty());
  CHECK(isomorphic(empty, Diagram{}));
}

TEST_CASE("framing is part of the diagram") {
  Diagram a, b;
  add_unknot(a, Rational::integer(0), kNoDart);
  add_unknot(b, Rational(3, 2), kNoDart);
  CHECK_FALSE(isomorphic(a, b));
}

TEST_CASE("two disjoint circles arrange one way on the sphere") {
  // Nested and side-by-side placements of two circles are the same
  // spherical arrangement; the code must not depend on the forest rooting.
  Diagram split;
  add_unknot(split, Rational::integer(0), kNoDart);
  add_unknot(split, Rational::integer(0), kNoDart);

  Diagram nested;
  CompId a = add_unknot(nested, Rational::integer(0), kNoDart);
  DartId inner = nested.sigma(nested.comps[a].seed);  // the non-outer face
  add_unknot(nested, Rational::integer(0), inner);

  CHECK(validate(split).empty());
  CHECK(validate(nested).empty());
  CHECK(isomorphic(split, nested));
}

TEST_CASE("three circles: separating and non-separating arrangements differ") {
  // Both circles inside one face of A vs. one inside, one outside.
  Diagram star;
  CompId a1 = add_unknot(star, Rational::integer(0), kNoDart);
  DartId in1 = star.sigma(star.comps[a1].seed);
  add_unknot(star, Rational::integer(0), in1);
  add_unknot(star, Rational::integer(0), in1);

  Diagram chain;
  CompId a2 = add_unknot(chain, Rational::integer(0), kNoDart);
  DartId in2 = chain.sigma(chain.comps[a2].seed);
  add_unknot(chain, Rational::integer(0), in2);
  add_unknot(chain, Rational::integer(0), kNoDart);

  CHECK(validate(star).empty());
  CHECK(validate(chain).empty());
  CHECK_FALSE(isomorphic(star, chain));
}

TEST_CASE("validation flags broken structure") {
  Diagram d = zqtest::make_trefoil(false);

  SUBCASE("alpha fixed point") {
    d.darts[0].alpha = 0;
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("sigma leaves the vertex") {
    d.darts[0].sigma = 4;
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("over dart away from its crossing") {
    d.verts[0].over = 5;
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("framing zero denominator must be unit numerator") {
    d.comps[0].framing.p = 4;
    d.comps[0].framing.q = 0;
    CHECK_FALSE(validate(d).empty());
  }
  SUBCASE("missing placement") {
    d.nesting.clear();
    CHECK_FALSE(validate(d).empty());
  }
}

TEST_CASE("region helpers") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  DartId inner = d.sigma(d.comps[a].seed);
  CompId b = add_unknot(d, Rational::integer(0), inner);

  CHECK(same_region(d, inner, d.nesting.at(b).outer));
  CHECK_FALSE(same_region(d, inner, d.comps[a].seed));
  CHECK(region_leader(d, d.comps[a].seed) == kNoDart);  // ambient

  auto ambient_kids = region_children(d, kNoDart);
  CHECK(ambient_kids == std::vector<CompId>{a});
  auto inner_kids = region_children(d, inner);
  CHECK(inner_kids == std::vector<CompId>{b});
}
