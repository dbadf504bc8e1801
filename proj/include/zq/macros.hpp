#pragma once

// Compound surgeries assembled from the dart-level primitives in builder.hpp.
// Everything here is shared plumbing for the rewrite rules: braid rows that
// lay crossing words across parallel strands, transversal-disk portraits of
// circles, kink and bigon insertion/excision, and bulk crossing excision
// that reconnects strands through a removed cluster.
//
// A recurring idiom in this file: crossings are first created with whatever
// over/under assignment the wiring produces and then *corrected* to a target
// sign by flipping the crossing's over dart (set_crossing_sign).  Flipping
// the over strand negates the sign, so every sign is reachable, and the
// callers never have to reason about how dart traversal flags interact with
// the wiring of a particular primitive.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zq/builder.hpp"
#include "zq/diagram.hpp"
#include "zq/rational.hpp"

namespace zq {

// ---------------------------------------------------------------------------
// Crossing sign control
// ---------------------------------------------------------------------------

// Flips which strand is on top at crossing v (the over dart moves to the
// sigma-adjacent dart, i.e. to the other strand).  Negates crossing_sign(v).
void flip_over(Diagram& d, VertexId v);

// Forces crossing_sign(d, v) == sign (sign must be +-1) by flipping the over
// strand if needed.
void set_crossing_sign(Diagram& d, VertexId v, int sign);

// ---------------------------------------------------------------------------
// Braid rows
// ---------------------------------------------------------------------------

// A moving row of parallel lanes for laying braid words.  lanes[i] is a dart
// on lane i pointing away from the crossings already made (toward open
// space); braid_cross inserts the next crossing just beyond the current
// frontier.  Lane darts must be coherently sided: the strip between lanes i
// and i+1 is the face orbit traced from alpha(lanes[i]) and from lanes[i+1]
// (one orbit for a straight strip; one region when the lanes belong to
// pieces not yet joined by a crossing).
//
// Because make_crossing cross-connects the strands, the curves occupying two
// lanes swap on every crossing; `comps` and `wedge` track the current
// occupant of each lane so callers can aim over/under assignments at "the
// link strand" without trusting the (stale until restamp_row) dart labels.
struct BraidRow {
  std::vector<DartId> lanes;
  std::vector<CompId> comps;   // current occupant of each lane
  std::vector<bool> wedge;     // occupant is a wedge circle
  std::vector<VertexId> made;  // crossings in creation order
};

BraidRow row_from_darts(const Diagram& d, const std::vector<DartId>& lanes);

// One braid generator joining lanes i and i+1.  left_over puts the curve
// currently occupying lane i on top.  After the call the two lane entries
// hold the fresh darts beyond the new crossing and the occupant bookkeeping
// has swapped.  Component labels along the rerouted curves are stale until
// restamp_row.
VertexId braid_cross(Diagram& d, BraidRow& row, std::size_t i, bool left_over);

// Reasserts component labels along every lane curve.  Must be called at a
// state where the lane occupants really are whole curves again (each lane
// dart becomes its occupant's seed and the curve is restamped from it).
void restamp_row(Diagram& d, BraidRow& row);

// Darts ready to serve as a two-lane row for curves a and b: a pair (x, y)
// with x on a, y on b, and face(alpha(x)) == face(y).  nullopt when the two
// curves share no face.
std::optional<std::pair<DartId, DartId>> co_facial_lanes(const Diagram& d,
                                                         CompId a, CompId b);

// ---------------------------------------------------------------------------
// Kinks (single-strand curls)
// ---------------------------------------------------------------------------

// What remove_kink leaves behind, and what the inverse needs to recreate the
// same kink: the surviving dart the curl collapsed onto, a probe dart whose
// face identifies which side of that edge the curl bulged into, and the
// crossing sign.
struct KinkSite {
  DartId edge = kNoDart;   // surviving dart of the merged edge
  DartId probe = kNoDart;  // dart whose post-removal face absorbed the curl
  int sign = 0;            // sign of the removed crossing
  CompId collapsed = kNoComp;  // set when the whole curve was the kink
};

// Inserts a curl on the edge of `e`.  The loop bulges into the face e
// borders (the face traced by face_next from e); the crossing is then
// corrected to `sign`.  Returns the new crossing.
VertexId insert_kink(Diagram& d, DartId e, int sign);

// Tests whether x is the monogon dart of a removable curl: face_next(x) == x
// at a crossing vertex.
bool is_monogon(const Diagram& d, DartId x);

// Removes the curl whose monogon dart is x and returns the site needed to
// reinsert it.  If the curl was the entire curve, the component collapses to
// a bare circle (rehosted at its old placement) and `collapsed` is set.
KinkSite remove_kink(Diagram& d, DartId x);

// ---------------------------------------------------------------------------
// Bulk excision
// ---------------------------------------------------------------------------

// Splices every strand straight through each of the given crossings, in
// order.  Curves that lose all their features collapse to bare circles
// hosted at fallback_face; placement handles on dying darts are repointed
// and orphaned entries rehosted at fallback_face.  Does NOT renormalize
// dummies (callers that planted marker vertices need them to survive; call
// renormalize_dummies when done).
void excise_vertices(Diagram& d, const std::vector<VertexId>& verts,
                     DartId fallback_face);

// A dart guaranteed to survive the deletion of component c (and of the
// crossings on it): the lowest-id alive dart not on c and not at one of c's
// vertices.  Falls back to the nesting host of c's piece (which may be
// kNoDart = ambient) when nothing else survives.
DartId pick_fallback(const Diagram& d, CompId c);

// Same, for the excision of a crossing set: survives excise_vertices(verts).
DartId fallback_for_vertices(const Diagram& d,
                             const std::vector<VertexId>& verts);

// ---------------------------------------------------------------------------
// Circle portraits
// ---------------------------------------------------------------------------

// One transversal passage of a strand through a circle's spanning disk: a
// single vertex-free chord edge whose endpoints are two crossings with the
// circle, over at one end and under at the other, both of the same sign.
struct Passage {
  DartId chord = kNoDart;      // chord dart, oriented along the corridor
  CompId comp = kNoComp;       // the strand's component
  bool wedge = false;          // strand belongs to a wedge
  VertexId entry = kNoVertex;  // crossing at chord's vertex
  VertexId exit = kNoVertex;   // crossing at alpha(chord)'s vertex
  int sign = 0;                // common sign of the two crossings
  bool over_at_entry = false;  // strand passes over the circle at `entry`
};

// A circle viewed as a surgery site: is it simple (embedded, no
// self-crossings), does one side of it bound a clean disk (every face on
// that side is bordered only by the circle and by vertex-free chords, no
// nested pieces, no open connection to a region holding other material),
// and do the chords admit a corridor (the chord-face incidence tree of the
// disk is a path)?  Passages are listed in corridor order with their chord
// darts oriented along it (face(alpha(chord[i])) == face(chord[i+1]), the
// disk face between consecutive chords).  `ok` false means the circle
// cannot serve as a disk; `why` says what failed.
struct CirclePortrait {
  bool ok = false;
  std::string why;
  CompId circle = kNoComp;
  Rational framing;
  std::vector<Passage> passages;   // corridor order
  std::vector<DartId> disk_side;   // circle darts whose face orbit is the disk
  std::vector<DartId> outer_side;  // circle darts facing away from the disk
};

CirclePortrait analyze_circle(const Diagram& d, CompId c);

// Sum of passage signs per component (the signed transit count, which is
// what the circle's twist couples to).  Pairs (comp, signed count), every
// strand through the disk listed once.
std::vector<std::pair<CompId, int>> passage_census(const CirclePortrait& pt);

// ---------------------------------------------------------------------------
// Ring insertion with per-lane targets
// ---------------------------------------------------------------------------

// One lane of a planned ring insertion: the exact dart to hand to
// insert_bundle_ring (fixing which side of the edge the out-crossing lands
// on) plus the intended passage geometry.  When sign is nonzero it wins:
// both crossings of the lane are corrected to it (which may flip the
// over_at_out request, since for fixed strand directions the two legal
// over patterns of a passage realize opposite signs).  With sign == 0 the
// over_at_out flag is honored as given.
struct LaneSpec {
  DartId dart = kNoDart;
  int sign = 0;
  bool over_at_out = true;
};

struct RingReceipt {
  CompId ring = kNoComp;
  // Per lane, the out-pass and return-pass crossings, in lane order.
  std::vector<std::pair<VertexId, VertexId>> crossings;
};

RingReceipt insert_ring(Diagram& d, const std::vector<LaneSpec>& lanes,
                        const Rational& framing);

// ---------------------------------------------------------------------------
// Clasps and pokes (two-crossing tangles)
// ---------------------------------------------------------------------------

// Crosses two strands twice just beyond the given lane darts (which must
// satisfy the row sidedness precondition: face(alpha(a)) == face(b), the
// strip both lanes border).  With
// poke=true the same curve is over at both crossings (the two crossings
// cancel, linking contribution 0); with poke=false the crossings alternate
// (clasp) and both are corrected to `sign`, contributing sign to the
// linking number.  Labels are restamped.  Returns the two crossings in
// creation order.
std::pair<VertexId, VertexId> cross_twice(Diagram& d, DartId a, DartId b,
                                          bool poke, int sign);

// ---------------------------------------------------------------------------
// Bigons (two-crossing cancellation sites)
// ---------------------------------------------------------------------------

// Recognizes a removable bigon from one of its face darts: the face orbit
// {x, face_next(x)} has length two, its two vertices are distinct crossings,
// and the same strand runs over the other at both (an alternating pair is a
// clasp, which no isotopy can cancel).
struct BigonSite {
  bool ok = false;
  std::string why;
  DartId x = kNoDart;      // the given bigon dart
  VertexId u = kNoVertex;  // vertex of x
  VertexId v = kNoVertex;  // vertex of face_next(x)
  CompId over_comp = kNoComp;  // strand on top at both crossings
  CompId under_comp = kNoComp;
};

BigonSite read_bigon(const Diagram& d, DartId x);

// Excises the bigon's two crossings (strands reconnect; collapsed curves
// materialize) and normalizes dummies.
void remove_bigon(Diagram& d, const BigonSite& site);

// ---------------------------------------------------------------------------
// Triangle slides
// ---------------------------------------------------------------------------

// A triangle face {u, v, w} (in face_next order) with three distinct
// crossing vertices, oriented so that the strand of u is the slider: it
// must be on the same side (over both or under both) at its two triangle
// crossings, which makes the over pattern non-cyclic and the slide an
// isotopy.
struct TriangleSite {
  bool ok = false;
  std::string why;
  DartId u = kNoDart;  // slider's triangle dart
  DartId v = kNoDart;  // face_next(u)
  DartId w = kNoDart;  // face_next(v)
};

// Reads and validates a triangle from one orbit dart and a chosen slider
// dart (which must lie in the orbit; the orbit is rotated so it becomes u).
// Refuses shapes where the six legs leaving the corners are not six fresh
// edges (a strand closing onto the triangle, or two legs sharing an edge):
// the rewiring would have to give one dart two partners.
TriangleSite read_triangle(const Diagram& d, DartId t, DartId slider);

// Slides each strand across the crossing opposite its triangle edge by
// having its two legs trade far partners; the triangle's three edges stay
// put, so the image triangle is the same dart triple and the move is its
// own inverse.  Rotations, over darts, and crossing signs are unchanged;
// only alpha moves on the six leg edges.  Circle seeds and direction flags
// along the three strands are refreshed.  Returns the image triangle's
// slider dart (the site of the inverse slide).
DartId slide_triangle(Diagram& d, const TriangleSite& site);

// ---------------------------------------------------------------------------
// Markers
// ---------------------------------------------------------------------------

// Subdivides the edge of each dart, returning one stable dart per marker:
// the fresh dart at the new degree-two vertex that pairs the given dart.
// Markers survive excisions and deletions beside them and are cleaned up by
// renormalize_dummies.
std::vector<DartId> plant_markers(Diagram& d, const std::vector<DartId>& edges);

}  // namespace zq
