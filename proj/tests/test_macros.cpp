#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "zq/builder.hpp"
#include "zq/diagram.hpp"
#include "zq/invariants.hpp"
#include "zq/macros.hpp"

using namespace zq;

namespace {

long writhe(const Diagram& d) {
  long w = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(d.verts.size()); ++v)
    if (d.verts[v].alive && d.verts[v].kind == VertexKind::Crossing)
      w += crossing_sign(d, v);
  return w;
}

// Standard end-of-construction pass: every macro leaves the map sound but
// may leave seeds, dummy counts, or placement keys off their normal form.
void finish(Diagram& d) {
  refresh_seeds(d);
  renormalize_dummies(d);
  reconcile_nesting(d);
}

// Closing an odd braid word fuses lanes into fewer curves: restamp the
// surviving curve from a lane dart and retire the labels it absorbed.
void merge_curve(Diagram& d, DartId dart, CompId keep,
                 const std::vector<CompId>& kill) {
  if (!d.darts[dart].forward) dart = d.alpha(dart);
  d.comps[keep].seed = dart;
  restamp_component(d, keep);
  for (CompId c : kill) {
    d.comps[c].alive = false;
    d.nesting.erase(c);
  }
}

// Three side-by-side circles braided by a word on generators 0/1 (all
// crossings left-over).  Words whose permutation is the transposition (1 3)
// merge the outer curves, leaving two; even words keep all three.
Diagram three_braid(const std::vector<std::size_t>& word, bool merge) {
  Diagram d;
  CompId c1 = add_unknot(d, Rational::integer(2), kNoDart);
  CompId c2 = add_unknot(d, Rational::integer(5), kNoDart);
  CompId c3 = add_unknot(
      d, merge ? Rational::integer(2) : Rational::integer(7), kNoDart);
  BraidRow row = row_from_darts(
      d, {d.alpha(d.comps[c1].seed), d.comps[c2].seed, d.comps[c3].seed});
  for (std::size_t i : word) braid_cross(d, row, i, true);
  if (merge) {
    merge_curve(d, row.lanes[0], c1, {c3});
    merge_curve(d, row.lanes[1], c2, {});
  } else {
    restamp_row(d, row);
  }
  finish(d);
  return d;
}

std::vector<TriangleSite> triangle_sites(const Diagram& d) {
  std::vector<TriangleSite> sites;
  for (const auto& f : faces(d)) {
    if (f.size() != 3) continue;
    for (DartId slider : f) {
      TriangleSite site = read_triangle(d, f[0], slider);
      if (site.ok) sites.push_back(site);
    }
  }
  return sites;
}

DartId find_monogon(const Diagram& d) {
  for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x)
    if (d.darts[x].alive && is_monogon(d, x)) return x;
  return kNoDart;
}

}  // namespace

// ---------------------------------------------------------------------------
// Braid rows
// ---------------------------------------------------------------------------

TEST_CASE("plat closure of sigma1^3 on one circle is a negative trefoil") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  DartId s = d.comps[a].seed;
  // U-plat: both lanes on the same circle, entering side by side.
  BraidRow row = row_from_darts(d, {s, d.sigma(s)});
  std::vector<int> signs;
  for (int i = 0; i < 3; ++i) {
    VertexId v = braid_cross(d, row, 0, true);
    signs.push_back(crossing_sign(d, v));
  }
  restamp_row(d, row);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(d.alive_comps().size() == 1);
  CHECK(writhe(d) == -3);
  CHECK(signs == std::vector<int>{-1, -1, -1});
}

TEST_CASE("clasping two side-by-side circles gives the Hopf link") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), kNoDart);
  BraidRow row =
      row_from_darts(d, {d.alpha(d.comps[a].seed), d.comps[b].seed});
  braid_cross(d, row, 0, true);
  braid_cross(d, row, 0, true);
  restamp_row(d, row);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == 1);
  // The canonical code forgets traversal direction, so the two clasp
  // chiralities with equal framings are the same unoriented map.
  CHECK(isomorphic(
      d, zqtest::make_hopf(Rational::integer(0), Rational::integer(0), true)));
  CHECK(isomorphic(d, zqtest::make_hopf(Rational::integer(0),
                                        Rational::integer(0), false)));
}

TEST_CASE("opposite crossings between circles cancel into a poke") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), kNoDart);
  BraidRow row =
      row_from_darts(d, {d.alpha(d.comps[a].seed), d.comps[b].seed});
  braid_cross(d, row, 0, true);
  braid_cross(d, row, 0, false);
  restamp_row(d, row);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == 0);

  // The poke bounds a bigon; removing it frees the circles again.
  BigonSite found;
  for (const auto& f : faces(d)) {
    if (f.size() != 2) continue;
    BigonSite site = read_bigon(d, f[0]);
    if (site.ok) {
      found = site;
      break;
    }
  }
  REQUIRE(found.ok);
  remove_bigon(d, found);
  finish(d);
  CHECK(validate(d).empty());
  Diagram fresh;
  add_unknot(fresh, Rational::integer(0), kNoDart);
  add_unknot(fresh, Rational::integer(0), kNoDart);
  CHECK(isomorphic(d, fresh));
}

TEST_CASE("clasping concentric circles gives the Hopf link") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), d.alpha(d.comps[a].seed));
  // Concentric lanes: the outer circle's inner side faces the nested one.
  BraidRow row = row_from_darts(d, {d.comps[a].seed, d.comps[b].seed});
  braid_cross(d, row, 0, true);
  braid_cross(d, row, 0, true);
  restamp_row(d, row);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == 1);
  CHECK(isomorphic(
      d, zqtest::make_hopf(Rational::integer(0), Rational::integer(0), true)));
}

TEST_CASE("sigma1^3 on concentric circles closes to a positive trefoil") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), d.alpha(d.comps[a].seed));
  BraidRow row = row_from_darts(d, {d.comps[a].seed, d.comps[b].seed});
  for (int i = 0; i < 3; ++i) braid_cross(d, row, 0, true);
  merge_curve(d, row.lanes[0], a, {b});
  finish(d);
  CHECK(validate(d).empty());
  CHECK(writhe(d) == 3);
  CHECK(isomorphic(d, zqtest::make_trefoil(true)));
  // Trefoils are chiral: the mirror stays distinct under the canonical code.
  CHECK(!isomorphic(d, zqtest::make_trefoil(false)));
}

// ---------------------------------------------------------------------------
// Triangle slides
// ---------------------------------------------------------------------------

TEST_CASE("braid relation: both three-letter closures give the same map") {
  Diagram w1 = three_braid({0, 1, 0}, true);
  Diagram w2 = three_braid({1, 0, 1}, true);
  CHECK(validate(w1).empty());
  CHECK(validate(w2).empty());
  CHECK(isomorphic(w1, w2));
  // Six edges total leave every strand closing straight onto the triangle,
  // so no slide site survives the leg-distinctness check.
  CHECK(triangle_sites(w1).empty());
}

TEST_CASE("full twist on three strands carries twelve slide sites") {
  Diagram tw = three_braid({0, 1, 0, 1, 0, 1}, false);
  CHECK(validate(tw).empty());
  CHECK(tw.alive_comps().size() == 3);
  auto sites = triangle_sites(tw);
  CHECK(sites.size() == 12);

  const std::string before = canonical_code(tw);
  const HomologyPair h = first_homology(tw);
  const long w = writhe(tw);
  const long lk01 = linking_number(tw, 0, 1);
  const long lk02 = linking_number(tw, 0, 2);
  const long lk12 = linking_number(tw, 1, 2);

  for (const TriangleSite& site : sites) {
    DartId back = slide_triangle(tw, site);
    CHECK(validate(tw).empty());
    // The slide is an isotopy: signs, linking, and homology all survive.
    CHECK(first_homology(tw) == h);
    CHECK(writhe(tw) == w);
    CHECK(linking_number(tw, 0, 1) == lk01);
    CHECK(linking_number(tw, 0, 2) == lk02);
    CHECK(linking_number(tw, 1, 2) == lk12);
    CHECK(canonical_code(tw) != before);

    // The same dart names the inverse site; sliding back restores the map
    // exactly, so the next loop iteration sees the original darts.
    TriangleSite inv = read_triangle(tw, back, back);
    REQUIRE(inv.ok);
    slide_triangle(tw, inv);
    CHECK(validate(tw).empty());
    CHECK(canonical_code(tw) == before);
  }
}

// ---------------------------------------------------------------------------
// Clasps and pokes in one call
// ---------------------------------------------------------------------------

TEST_CASE("cross_twice sign +1 builds the positive clasp") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), kNoDart);
  cross_twice(d, d.alpha(d.comps[a].seed), d.comps[b].seed, false, +1);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == +1);
  CHECK(isomorphic(d, zqtest::make_hopf(Rational::integer(0),
                                        Rational::integer(0), false)));
}

TEST_CASE("cross_twice sign -1 builds the negative clasp") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), kNoDart);
  cross_twice(d, d.alpha(d.comps[a].seed), d.comps[b].seed, false, -1);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == -1);
  CHECK(isomorphic(
      d, zqtest::make_hopf(Rational::integer(0), Rational::integer(0), true)));
}

TEST_CASE("cross_twice sign 0 builds an unlinked poke") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(0), kNoDart);
  CompId b = add_unknot(d, Rational::integer(0), kNoDart);
  cross_twice(d, d.alpha(d.comps[a].seed), d.comps[b].seed, true, 0);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, b) == 0);
}

// ---------------------------------------------------------------------------
// Kinks
// ---------------------------------------------------------------------------

TEST_CASE("positive kink on the trefoil adds one to the writhe") {
  Diagram d = zqtest::make_trefoil(false);
  const std::string before = canonical_code(d);
  insert_kink(d, d.comps[0].seed, +1);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(writhe(d) == -2);

  DartId mx = find_monogon(d);
  REQUIRE(mx != kNoDart);
  remove_kink(d, mx);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(canonical_code(d) == before);
}

TEST_CASE("negative kink on the other side round-trips too") {
  Diagram d = zqtest::make_trefoil(false);
  const std::string before = canonical_code(d);
  insert_kink(d, d.alpha(d.comps[0].seed), -1);
  finish(d);
  CHECK(validate(d).empty());
  CHECK(writhe(d) == -4);

  DartId mx = find_monogon(d);
  REQUIRE(mx != kNoDart);
  remove_kink(d, mx);
  finish(d);
  CHECK(canonical_code(d) == before);
}

TEST_CASE("unkinking a bare curled circle reports the collapse") {
  Diagram d;
  CompId a = add_unknot(d, Rational(7, 2), kNoDart);
  insert_kink(d, d.comps[a].seed, -1);
  finish(d);
  CHECK(validate(d).empty());

  DartId mx = find_monogon(d);
  REQUIRE(mx != kNoDart);
  // Removing the only crossing leaves no strand to reconnect: the curve
  // collapses back to a crossing-free circle and the site says which.
  KinkSite site = remove_kink(d, mx);
  finish(d);
  CHECK(site.collapsed == a);
  Diagram fresh;
  add_unknot(fresh, Rational(7, 2), kNoDart);
  CHECK(isomorphic(d, fresh));
}

// ---------------------------------------------------------------------------
// Rings
// ---------------------------------------------------------------------------

TEST_CASE("two-lane ring with opposite signs links zero") {
  Diagram d;
  CompId a = add_unknot(d, Rational::integer(3), kNoDart);
  DartId s = d.comps[a].seed;
  RingReceipt rc =
      insert_ring(d, {LaneSpec{s, +1, true}, LaneSpec{d.sigma(s), -1, true}},
                  Rational::integer(0));
  finish(d);
  CHECK(validate(d).empty());
  CHECK(linking_number(d, a, rc.ring) == 0);
  REQUIRE(rc.crossings.size() == 2);
  CHECK(crossing_sign(d, rc.crossings[0].first) == +1);
  CHECK(crossing_sign(d, rc.crossings[0].second) == +1);
  CHECK(crossing_sign(d, rc.crossings[1].first) == -1);
  CHECK(crossing_sign(d, rc.crossings[1].second) == -1);

  CirclePortrait pt = analyze_circle(d, rc.ring);
  REQUIRE(pt.ok);
  REQUIRE(pt.passages.size() == 2);
  // Consecutive passages share the corridor between their chords.
  CHECK(face_rep(d, d.alpha(pt.passages[0].chord)) ==
        face_rep(d, pt.passages[1].chord));
  auto census = passage_census(pt);
  REQUIRE(census.size() == 1);
  CHECK(census[0].first == a);
  CHECK(census[0].second == 0);
}

TEST_CASE("one-lane sign-0 rings are the two Hopf clasps") {
  Diagram over;
  CompId a1 = add_unknot(over, Rational::integer(0), kNoDart);
  RingReceipt r1 = insert_ring(over, {LaneSpec{over.comps[a1].seed, 0, true}},
                               Rational::integer(0));
  finish(over);
  Diagram under;
  CompId a2 = add_unknot(under, Rational::integer(0), kNoDart);
  RingReceipt r2 = insert_ring(under, {LaneSpec{under.comps[a2].seed, 0, false}},
                               Rational::integer(0));
  finish(under);
  CHECK(validate(over).empty());
  CHECK(validate(under).empty());
  CHECK(linking_number(over, a1, r1.ring) == -1);
  CHECK(linking_number(under, a2, r2.ring) == 1);
  CHECK(isomorphic(over, zqtest::make_hopf(Rational::integer(0),
                                           Rational::integer(0), true)));
}

// ---------------------------------------------------------------------------
// Circle portraits
// ---------------------------------------------------------------------------

TEST_CASE("both Hopf circles read as one-passage portraits") {
  Diagram d = zqtest::make_hopf(Rational(3, 2), Rational::integer(7));
  CirclePortrait ring = analyze_circle(d, 1);
  REQUIRE(ring.ok);
  CHECK(ring.passages.size() == 1);
  CHECK(ring.framing == Rational::integer(7));
  // The thread is just as much a circle with one passage: the other
  // component threads it once.
  CirclePortrait thread = analyze_circle(d, 0);
  REQUIRE(thread.ok);
  CHECK(thread.passages.size() == 1);
}

TEST_CASE("a knotted circle refuses a portrait") {
  Diagram d = zqtest::make_trefoil(false);
  CirclePortrait pt = analyze_circle(d, 0);
  CHECK(!pt.ok);
  CHECK(pt.why == "circle not simple at site");
}
