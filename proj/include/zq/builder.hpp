#pragma once

#include <set>
#include <vector>

#include "zq/diagram.hpp"

namespace zq {

// Editing primitives shared by the move engine and the file loader.  All of
// them keep alpha/sigma consistent; component labels and traversal flags can
// go stale during multi-step surgery and are fixed by restamp_component /
// renormalize_dummies before an edit returns to callers.

// --- regions -----------------------------------------------------------

// Faces of different pieces can bound the same region of the sphere
// complement (a floater's outer face and the hosting face are the same
// region).  region_leader computes a representative dart for the region of
// a face: face orbits are merged across nesting entries (outer <-> host)
// and all root outer faces join the ambient region.  Returns kNoDart for
// the ambient region.
DartId region_leader(const Diagram& d, DartId face_dart);

bool same_region(const Diagram& d, DartId f1, DartId f2);

// All nesting entries whose host face lies in the given region.
std::vector<CompId> region_children(const Diagram& d, DartId region);

// --- fresh pieces -------------------------------------------------------

// Crossing-free circle (two dummy vertices) floating in the region of
// `host_face` (kNoDart = ambient).  Returns the component id.
CompId add_unknot(Diagram& d, const Rational& framing, DartId host_face);

// Wedge of `genus` petal circles at a fresh basepoint, petals side by side,
// floating in the region of `host_face`.  Returns the wedge id.
WedgeId add_wedge(Diagram& d, int genus, DartId host_face);

// --- local surgery -------------------------------------------------------

// Splits a's edge with a fresh dummy vertex.  a survives and keeps its
// vertex; the new vertex sits between a and its old partner.  Returns the
// new vertex.  Old darts stay on the outer halves, so face handles held by
// nesting entries never migrate into inserted material.
VertexId subdivide(Diagram& d, DartId a);

// Removes a degree-2 vertex, merging its two edges.  The vertex's darts
// die; the far darts pair up.  Forbidden when the two edges are the same
// (a one-edge loop).
void smooth_vertex(Diagram& d, VertexId v);

// Braid-generator crossing.  The two edges are split and cross-connected:
// a's near half continues into b's near half, so the curve routes swap
// lanes exactly as under a braid generator.  The wiring re-routes face
// walks only behind the arguments: alpha(a)'s walk continues into
// alpha(b)'s old continuation and vice versa, a cross-splice.  Splicing
// one face walk at two points cuts it in two, so when face(alpha(a)) ==
// face(alpha(b)) the crossing is pulled across that face and the surface
// stays a sphere.  When the orbits differ the splice fuses them, which
// glues a handle onto a single piece — rejected — unless a and b lie on
// different pieces, where it fuses the two sphere pieces into one sphere.
// A join leaves the merged piece exactly one placement entry: the one
// whose host lies outside both joining pieces, since a host on either of
// them described a nesting the join erases.  Geometric placement of the
// two strands is the caller's contract; intermediate braid states need not
// embed.  Component labels and direction flags along rerouted curves go
// stale; callers restamp when the braid is done.
//
//      va            wb            at v, counterclockwise: (s, p, r, q)
//        .          .              p toward va (pairs a)
//         p        s               q toward vb (pairs b)
//          .      .                r toward wa (pairs a's old partner)
//           v==v==                 s toward wb (pairs b's old partner)
//          .      .                strands through v: {p,q} and {r,s}
//         r        q
//        .          .
//      wa            vb
struct CrossingDarts {
  VertexId v;
  DartId p, q, r, s;
};
CrossingDarts make_crossing(Diagram& d, DartId a, DartId b, bool a_side_over);

// Ring circle around a transversal bundle of edges.  `bundle` lists one
// dart per edge, coherently sided: the region left of bundle[i+1] must be
// the region left of alpha(bundle[i]) (a corridor).  The ring crosses each
// edge twice (out pass and return pass).  When thread_over_at_out[i] is
// true the i-th thread crosses over the ring on the out pass and under on
// the return, giving it the one-over-one-under pattern of a disk puncture;
// false swaps which pass is on top, which also flips the sign of both of
// that thread's crossings.  Pieces touched by the bundle merge into one.
// Returns the ring component.
CompId insert_bundle_ring(Diagram& d, const std::vector<DartId>& bundle,
                          const Rational& framing,
                          const std::vector<bool>& thread_over_at_out);
CompId insert_bundle_ring(Diagram& d, const std::vector<DartId>& bundle,
                          const Rational& framing, bool thread_over_at_out);

// Removes a crossing, splicing every strand that does not belong to
// `dying_comp` straight through (their two edges merge) and killing the
// darts of `dying_comp` at the vertex.  A spliced strand whose two edges
// coincide (a bare loop) collapses; the component is recorded in
// `collapsed` for the caller to rebuild with materialize_bare_circle.
void splice_through(Diagram& d, VertexId v, CompId dying_comp,
                    std::set<CompId>* collapsed);

// Deletes a component's entire curve: other strands are spliced through
// its crossings, its darts, private vertices and (when it exhausts a
// wedge) wedge records die.  Collapsed bystander circles are rebuilt as
// bare circles floating in `fallback_face` (a surviving dart whose face
// absorbs the deleted material).  Placement handles are repointed and the
// nesting forest reconciled.  Pass renormalize=false when marker vertices
// planted for a later step must survive; the caller then owns the final
// renormalize_dummies call.
void delete_component_curve(Diagram& d, CompId c, DartId fallback_face,
                            bool renormalize = true);

// Rebuilds a component that lost all darts as a crossing-free circle in
// the region of `host_face`.
void materialize_bare_circle(Diagram& d, CompId c, DartId host_face);

// Rewalks the component's curve from its seed, restamping component labels
// and traversal flags (fixes stale labels after braid construction).
void restamp_component(Diagram& d, CompId c);

// Restores the dummy-vertex policy everywhere: circles with crossings lose
// their dummies, crossing-free circles get exactly two.
void renormalize_dummies(Diagram& d);

// Repoints nesting host/outer handles away from darts in `dying`, walking
// their current face orbits for survivors.  Entries whose faces die
// completely are collected into `orphans` (callers re-home them).
void repoint_placement_handles(Diagram& d, const std::set<DartId>& dying,
                               std::vector<CompId>* orphans);

// Recomputes piece representatives after surgery, migrating nesting
// entries to the new representative keys.  Newly created pieces must have
// been seeded with an entry by the caller; merged pieces keep the entry
// whose host lies outside the merged piece.
void reconcile_nesting(Diagram& d);

// Picks a fresh forward seed for every component whose seed died.
void refresh_seeds(Diagram& d);

}  // namespace zq
