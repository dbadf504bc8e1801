#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "zq/builder.hpp"
#include "zq/diagram.hpp"

using namespace zq;

TEST_CASE("clasp ring: two crossings, four faces, linking minus one") {
  Diagram d = zqtest::make_hopf(Rational::integer(0), Rational::integer(0));
  CHECK(validate(d).empty());
  CHECK(d.crossing_count() == 2);
  CHECK(faces(d).size() == 4);
  CHECK(linking_number(d, 0, 1) == -1);
  // Clasp: both crossings carry the same sign.
  for (VertexId v = 0; v < static_cast<VertexId>(d.verts.size()); ++v)
    if (d.verts[v].alive) CHECK(crossing_sign(d, v) == -1);
}

TEST_CASE("mirrored clasp links positively") {
  Diagram d =
      zqtest::make_hopf(Rational::integer(0), Rational::integer(0), false);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, 0, 1) == +1);
}

TEST_CASE("ring around both strands of a circle links zero") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  DartId d0 = d.comps[a].seed;
  DartId d1 = d.sigma(d0);  // the other edge, coherently sided
  CompId ring = insert_bundle_ring(d, {d0, d1}, Rational::integer(0), true);
  renormalize_dummies(d);
  reconcile_nesting(d);
  CHECK(validate(d).empty());
  CHECK(d.crossing_count() == 4);
  CHECK(faces(d).size() == 6);
  CHECK(linking_number(d, a, ring) == 0);
}

TEST_CASE("subdivide and smooth are inverse") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  std::string before = canonical_code(d);
  VertexId v = subdivide(d, d.comps[a].seed);
  CHECK(d.degree(v) == 2);
  smooth_vertex(d, v);
  CHECK(validate(d).empty());
  CHECK(canonical_code(d) == before);
}

TEST_CASE("self-crossing via the braid generator makes a curl") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  DartId s = d.comps[a].seed;
  DartId other = d.alpha(d.sigma(s));  // co-facial dart on the second edge
  CHECK(face_rep(d, s) == face_rep(d, other));
  make_crossing(d, s, other, true);
  restamp_component(d, a);
  renormalize_dummies(d);
  reconcile_nesting(d);
  CHECK(validate(d).empty());
  CHECK(d.crossing_count() == 1);
  CHECK(faces(d).size() == 3);
  CHECK(d.alive_comps().size() == 1);
}

TEST_CASE("splicing out the only crossing collapses to a bare circle") {
  Diagram d;
  CompId a = add_unknot(d, Rational(3, 2), kNoDart);
  DartId s = d.comps[a].seed;
  make_crossing(d, s, d.alpha(d.sigma(s)), true);
  restamp_component(d, a);
  renormalize_dummies(d);
  VertexId v = kNoVertex;
  for (VertexId i = 0; i < static_cast<VertexId>(d.verts.size()); ++i)
    if (d.verts[i].alive && d.verts[i].kind == VertexKind::Crossing) v = i;

  std::set<CompId> collapsed;
  splice_through(d, v, kNoComp, &collapsed);
  CHECK(collapsed == std::set<CompId>{a});
  materialize_bare_circle(d, a, kNoDart);
  reconcile_nesting(d);
  refresh_seeds(d);
  CHECK(validate(d).empty());

  Diagram fresh;
  add_unknot(fresh, Rational(3, 2), kNoDart);
  CHECK(isomorphic(d, fresh));
}

TEST_CASE("deleting the ring of a clasp leaves the bare circle") {
  Diagram d = zqtest::make_hopf(Rational(3, 2), Rational::integer(7));
  delete_component_curve(d, 1, kNoDart);
  CHECK(validate(d).empty());
  Diagram fresh;
  add_unknot(fresh, Rational(3, 2), kNoDart);
  CHECK(isomorphic(d, fresh));
}

TEST_CASE("deleting the thread of a clasp leaves the ring") {
  Diagram d = zqtest::make_hopf(Rational(3, 2), Rational::integer(7));
  delete_component_curve(d, 0, kNoDart);
  CHECK(validate(d).empty());
  Diagram fresh;
  add_unknot(fresh, Rational::integer(7), kNoDart);
  CHECK(isomorphic(d, fresh));
}

TEST_CASE("deleting an isolated circle hands its floaters to the host") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  DartId inner = d.sigma(d.comps[a].seed);
  CompId b = add_unknot(d, Rational::integer(1), inner);
  DartId binner = d.sigma(d.comps[b].seed);
  CompId c = add_unknot(d, Rational(5, 3), binner);
  CHECK(validate(d).empty());

  delete_component_curve(d, b, kNoDart);
  CHECK(validate(d).empty());
  CHECK(d.alive_comps() == std::vector<CompId>{a, c});
  // c now floats beside nothing else in a's inner face: same arrangement as
  // two disjoint circles.
  Diagram two;
  add_unknot(two, Rational::integer(0), kNoDart);
  add_unknot(two, Rational(5, 3), kNoDart);
  CHECK(isomorphic(d, two));
}

TEST_CASE("restamp rebuilds labels after rewiring") {
  Diagram d = zqtest::make_hopf(Rational::integer(0), Rational::integer(0));
  // Scramble flags on the ring, then restamp.
  for (auto& dart : d.darts)
    if (dart.alive && dart.comp == 1) dart.forward = !dart.forward;
  CHECK_FALSE(validate(d).empty());
  refresh_seeds(d);
  restamp_component(d, 1);
  CHECK(validate(d).empty());
}
