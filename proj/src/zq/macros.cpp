// Compound surgeries shared by the rewrite rules.  See macros.hpp for the
// contracts; the comments here explain the wiring choices.

#include "zq/macros.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace zq {

namespace {

void relink(Diagram& d, DartId a, DartId b) {
  d.darts[a].alpha = b;
  d.darts[b].alpha = a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Crossing sign control
// ---------------------------------------------------------------------------

void flip_over(Diagram& d, VertexId v) {
  if (d.verts[v].kind != VertexKind::Crossing)
    throw std::logic_error("flip_over: not a crossing");
  d.verts[v].over = d.sigma(d.verts[v].over);
}

void set_crossing_sign(Diagram& d, VertexId v, int sign) {
  if (sign != 1 && sign != -1)
    throw std::logic_error("set_crossing_sign: sign must be +-1");
  if (crossing_sign(d, v) != sign) flip_over(d, v);
}

// ---------------------------------------------------------------------------
// Braid rows
// ---------------------------------------------------------------------------

BraidRow row_from_darts(const Diagram& d, const std::vector<DartId>& lanes) {
  BraidRow row;
  row.lanes = lanes;
  for (DartId x : lanes) {
    CompId c = d.comp_of(x);
    row.comps.push_back(c);
    row.wedge.push_back(d.comps[c].kind == CompKind::Wedge);
  }
  return row;
}

VertexId braid_cross(Diagram& d, BraidRow& row, std::size_t i,
                     bool left_over) {
  if (i + 1 >= row.lanes.size())
    throw std::logic_error("braid_cross: lane index out of range");
  // make_crossing wants both arguments bordering the strip with their
  // face_next orbits: face(alpha(lanes[i])) and face(lanes[i+1]) trace the
  // strip between the lanes.  Its a-side strand {p, q} descends from lane
  // i+1's far end through the new crossing into lane i, i.e. it is lane
  // i+1's occupant, so a_side_over realizes the opposite of left_over.
  DartId a = d.alpha(row.lanes[i]);
  DartId b = row.lanes[i + 1];
  CrossingDarts cd = make_crossing(d, a, b, !left_over);
  // Fresh darts beyond the new crossing, still pointing into what remains
  // of the strip: p continues lane i (it pairs a, the far half of lane i),
  // s continues lane i+1 (it pairs b's old partner, the far half of i+1).
  row.lanes[i] = cd.p;
  row.lanes[i + 1] = cd.s;
  std::swap(row.comps[i], row.comps[i + 1]);
  std::swap(row.wedge[i], row.wedge[i + 1]);
  row.made.push_back(cd.v);
  return cd.v;
}

void restamp_row(Diagram& d, BraidRow& row) {
  std::set<CompId> done;
  for (std::size_t i = 0; i < row.lanes.size(); ++i) {
    CompId c = row.comps[i];
    if (!done.insert(c).second) continue;
    d.comps[c].seed = row.lanes[i];
    restamp_component(d, c);
  }
}

std::optional<std::pair<DartId, DartId>> co_facial_lanes(const Diagram& d,
                                                         CompId a, CompId b) {
  // Scan faces once; the first face carrying darts of both curves supplies
  // the pair.  From co-orbit darts (ta on a, tb on b) the row convention
  // face(alpha(lane0)) == face(lane1) is met by (alpha(ta), tb).
  for (const auto& orbit : faces(d)) {
    DartId ta = kNoDart, tb = kNoDart;
    for (DartId t : orbit) {
      if (d.comp_of(t) == a && ta == kNoDart) ta = t;
      if (d.comp_of(t) == b && tb == kNoDart) tb = t;
    }
    if (ta != kNoDart && tb != kNoDart)
      return std::make_pair(d.alpha(ta), tb);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Kinks
// ---------------------------------------------------------------------------

VertexId insert_kink(Diagram& d, DartId e, int sign) {
  CompId c = d.comp_of(e);
  if (d.comps[c].kind != CompKind::Link)
    throw std::logic_error("insert_kink: curls live on link strands");
  VertexId m = subdivide(d, e);
  // The marker's dart q continues e's direction (it pairs e's old partner),
  // and q sits on e's face orbit (face_next(e) == q), so make_crossing may
  // pull the new crossing across that face.  The curl's loop runs through m
  // and is freed by smoothing m away.
  DartId p = d.alpha(e);
  DartId q = d.sigma(p);
  CrossingDarts cd = make_crossing(d, e, q, true);
  smooth_vertex(d, m);
  // Both crossing arguments ran in the curve's direction, so the fresh
  // darts' direction flags disagree along the curl; rewalk the curve from
  // its seed before reading the crossing's sign.
  restamp_component(d, c);
  set_crossing_sign(d, cd.v, sign);
  return cd.v;
}

bool is_monogon(const Diagram& d, DartId x) {
  return d.face_next(x) == x &&
         d.verts[d.vertex_of(x)].kind == VertexKind::Crossing;
}

KinkSite remove_kink(Diagram& d, DartId x) {
  if (!is_monogon(d, x)) throw std::logic_error("remove_kink: not a monogon");
  VertexId v = d.vertex_of(x);
  // face_next(x) == x means sigma(alpha(x)) == x, so the loop's other dart
  // y = alpha(x) sits at v with sigma(y) = x; the rotation reads
  // (y, x, u, w) with strand pairs {y, u} and {x, w}.
  DartId u = d.sigma(x);
  DartId w = d.sigma(u);
  KinkSite site;
  site.sign = crossing_sign(d, v);
  CompId c = d.comp_of(x);

  // The curve continues outside through alpha(u) and alpha(w).  It loses its
  // last crossing exactly when those two outside ends are one edge, i.e. the
  // non-loop edges at v close into a second loop.  (alpha(u) can never be x
  // or y: the loop edge already pairs those two.)
  bool collapse = d.alpha(u) == w;
  if (collapse) {
    site.collapsed = c;
  } else {
    // The curve continues outside through alpha(u) and alpha(w).  The face
    // flanking the u-edge on the curl's side continues past sigma(alpha(u)),
    // which survives and still borders whichever merged face absorbs the
    // curl's area: the inverse compares its face with the handle's to learn
    // which side to bulge into.
    site.edge = d.alpha(u);
    site.probe = d.sigma(d.alpha(u));
  }
  excise_vertices(d, {v}, collapse ? pick_fallback(d, c) : site.edge);
  renormalize_dummies(d);
  reconcile_nesting(d);
  return site;
}

// ---------------------------------------------------------------------------
// Bulk excision
// ---------------------------------------------------------------------------

void excise_vertices(Diagram& d, const std::vector<VertexId>& verts,
                     DartId fallback_face) {
  std::set<VertexId> vset(verts.begin(), verts.end());
  std::set<DartId> dying;
  for (VertexId v : vset) {
    if (!d.verts[v].alive || d.verts[v].kind != VertexKind::Crossing)
      throw std::logic_error("excise_vertices: need alive crossings");
    for (DartId x : d.vertex_darts(v)) dying.insert(x);
  }

  std::vector<CompId> orphans;
  repoint_placement_handles(d, dying, &orphans);

  // Reconnect each strand that enters the cluster: trace it across
  // consecutive dying crossings (sigma^2 continues a strand through a
  // crossing) until it emerges on a surviving dart.  Tracing from outside
  // handles curls and straight runs alike; curves with no surviving dart
  // never start a trace and collapse below.
  std::vector<std::pair<DartId, DartId>> joins;
  std::set<DartId> matched;
  for (DartId a = 0; a < static_cast<DartId>(d.darts.size()); ++a) {
    if (!d.darts[a].alive || dying.count(a) || matched.count(a)) continue;
    if (!dying.count(d.alpha(a))) continue;
    DartId t = d.alpha(a);
    DartId b = kNoDart;
    std::size_t guard = dying.size() + 2;
    while (true) {
      if (guard-- == 0)
        throw std::logic_error("excise_vertices: strand trace runaway");
      DartId through = d.sigma(d.sigma(t));
      DartId e = d.alpha(through);
      if (!dying.count(e)) {
        b = e;
        break;
      }
      t = e;
    }
    joins.emplace_back(a, b);
    matched.insert(a);
    matched.insert(b);
  }

  // Curves whose every dart dies with the cluster collapse to bare circles.
  std::set<CompId> present, surviving;
  for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x) {
    if (!d.darts[x].alive) continue;
    (dying.count(x) ? present : surviving).insert(d.comp_of(x));
  }
  std::set<CompId> collapsed;
  for (CompId c : present)
    if (!surviving.count(c)) {
      if (d.comps[c].kind != CompKind::Link)
        throw std::logic_error("excise_vertices: wedge curve collapsed");
      collapsed.insert(c);
    }

  for (DartId x : dying) d.darts[x].alive = false;
  for (VertexId v : vset) d.verts[v].alive = false;
  for (auto [a, b] : joins) relink(d, a, b);

  // Mirror of delete_component_curve's tail: collapsed curves rebuild as
  // bare circles, parking any nesting entry that was repointed onto the
  // collapsed key so the rebuilt circle does not evict it, and orphaned
  // floaters land beside the excision site.
  DartId orphan_home = fallback_face;
  for (CompId cc : collapsed) {
    auto held = d.nesting.find(cc);
    if (held != d.nesting.end() && held->second.outer != kNoDart &&
        d.darts[held->second.outer].alive) {
      CompId park = static_cast<CompId>(d.comps.size());
      while (d.nesting.count(park)) ++park;
      d.nesting.emplace(park, held->second);
      d.nesting.erase(held);
    }
    materialize_bare_circle(d, cc, fallback_face);
    orphan_home = d.sigma(d.comps[cc].seed);
  }
  for (CompId key : orphans) {
    if (collapsed.count(key)) continue;
    auto it = d.nesting.find(key);
    if (it != d.nesting.end()) it->second.host = orphan_home;
  }

  refresh_seeds(d);
  reconcile_nesting(d);
}

namespace {

// Shared fallback search: lowest alive dart outside the doomed zone, else
// the nesting host of the zone's piece (kNoDart = ambient).
DartId fallback_outside(const Diagram& d, const std::set<DartId>& doomed,
                        CompId piece_member) {
  for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x)
    if (d.darts[x].alive && !doomed.count(x)) return x;
  // Nothing survives: fall back to wherever the piece was placed.  The
  // piece key is the smallest alive component in it; walking the curve of
  // piece_member's piece is overkill when nothing else is alive, so just
  // take any entry whose outer dart is doomed.
  (void)piece_member;
  for (const auto& [key, place] : d.nesting)
    if (place.outer != kNoDart && doomed.count(place.outer)) return place.host;
  return kNoDart;
}

}  // namespace

DartId pick_fallback(const Diagram& d, CompId c) {
  std::set<DartId> doomed;
  std::set<VertexId> on_curve;
  for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x)
    if (d.darts[x].alive && d.darts[x].comp == c) {
      doomed.insert(x);
      on_curve.insert(d.vertex_of(x));
    }
  for (VertexId v : on_curve)
    for (DartId x : d.vertex_darts(v)) doomed.insert(x);
  return fallback_outside(d, doomed, c);
}

DartId fallback_for_vertices(const Diagram& d,
                             const std::vector<VertexId>& verts) {
  std::set<DartId> doomed;
  CompId member = kNoComp;
  for (VertexId v : verts)
    for (DartId x : d.vertex_darts(v)) {
      doomed.insert(x);
      member = d.comp_of(x);
    }
  return fallback_outside(d, doomed, member);
}

// ---------------------------------------------------------------------------
// Circle portraits
// ---------------------------------------------------------------------------

namespace {

CirclePortrait fail_portrait(CompId c, std::string why) {
  CirclePortrait pt;
  pt.circle = c;
  pt.why = std::move(why);
  return pt;
}

}  // namespace

CirclePortrait analyze_circle(const Diagram& d, CompId c) {
  if (c == kNoComp || c >= static_cast<CompId>(d.comps.size()) ||
      !d.comps[c].alive)
    return fail_portrait(c, "no such component");
  if (d.comps[c].kind != CompKind::Link)
    return fail_portrait(c, "wedge circles are rigid, not surgery disks");

  std::vector<DartId> walk = d.component_walk(c);
  if (walk.empty()) return fail_portrait(c, "empty curve");

  // Simplicity: a crossing visited twice by the walk is a self-crossing.
  std::map<VertexId, int> visits;
  std::vector<VertexId> xings;  // circle's crossings in walk order
  for (DartId t : walk) {
    VertexId v = d.vertex_of(t);
    if (d.verts[v].kind == VertexKind::Crossing) {
      if (++visits[v] > 1)
        return fail_portrait(c, "circle not simple at site");
      xings.push_back(v);
    }
  }
  std::set<VertexId> xset(xings.begin(), xings.end());

  // Try each side as the spanning disk; first success wins.
  for (int side = 0; side < 2; ++side) {
    std::vector<DartId> side_darts, other_darts;
    for (DartId t : walk) {
      side_darts.push_back(side == 0 ? t : d.alpha(t));
      other_darts.push_back(side == 0 ? d.alpha(t) : t);
    }
    std::set<DartId> side_faces;
    for (DartId t : side_darts) side_faces.insert(face_rep(d, t));

    // --- the side must be bordered only by the circle and its chords ----
    bool clean = true;
    std::string why;
    std::set<DartId> chord_darts;
    for (DartId f : side_faces) {
      if (!clean) break;
      DartId t = f;
      std::size_t guard = d.darts.size() + 1;
      do {
        if (guard-- == 0) throw std::logic_error("face orbit runaway");
        if (d.comp_of(t) != c) {
          VertexId a = d.vertex_of(t);
          VertexId b = d.vertex_of(d.alpha(t));
          if (!xset.count(a) || !xset.count(b) || a == b) {
            clean = false;
            why = "disk side is not clear";
            break;
          }
          chord_darts.insert(t);
        }
        t = d.face_next(t);
      } while (t != f);
    }
    if (!clean) {
      if (side == 1) return fail_portrait(c, why);
      continue;
    }

    // --- no other material may live in the disk ------------------------
    // (i) pieces nested at a disk face; (ii) the disk region continues
    // into a region where other ambient pieces float.  The circle's own
    // entry is exempt: its outer face is allowed to BE the chosen side
    // when nothing else shares the region.
    for (const auto& [key, place] : d.nesting) {
      bool own_entry =
          place.outer != kNoDart && d.comp_of(place.outer) == c;
      if (own_entry) continue;
      bool inside = false;
      if (place.host != kNoDart && side_faces.count(face_rep(d, place.host)))
        inside = true;
      if (!inside && place.host == kNoDart && place.outer != kNoDart &&
          same_region(d, side_darts.front(), place.outer))
        inside = true;
      if (inside) {
        clean = false;
        why = "another piece floats in the disk";
        break;
      }
    }
    if (!clean) {
      if (side == 1) return fail_portrait(c, why);
      continue;
    }

    // --- pair the chords into passages ----------------------------------
    // At each crossing the strand's darts are the sigma-opposite pair not
    // on the circle; exactly one points into the disk.
    std::map<VertexId, DartId> into_disk;
    bool ok = true;
    for (VertexId v : xings) {
      DartId t0 = kNoDart;
      for (DartId t : d.vertex_darts(v))
        if (d.comp_of(t) != c) {
          t0 = t;
          break;
        }
      DartId t1 = d.sigma(d.sigma(t0));
      bool in0 = side_faces.count(face_rep(d, t0)) > 0;
      bool in1 = side_faces.count(face_rep(d, t1)) > 0;
      if (in0 == in1) {
        ok = false;
        why = "strand grazes the disk";
        break;
      }
      into_disk[v] = in0 ? t0 : t1;
    }
    if (ok) {
      for (VertexId v : xings) {
        DartId t = into_disk[v];
        DartId t2 = d.alpha(t);
        VertexId vv = d.vertex_of(t2);
        if (!xset.count(vv) || vv == v || into_disk[vv] != t2) {
          ok = false;
          why = "chord does not span the disk";
          break;
        }
        if (!side_faces.count(face_rep(d, t2))) {
          ok = false;
          why = "chord leaves the disk";
          break;
        }
        if (crossing_sign(d, v) != crossing_sign(d, vv)) {
          ok = false;
          why = "passage twists against itself";
          break;
        }
        if (d.on_over_strand(t) == d.on_over_strand(t2)) {
          ok = false;
          why = "strand does not pierce the disk";
          break;
        }
      }
    }
    if (!ok) {
      if (side == 1) return fail_portrait(c, why);
      continue;
    }

    // --- corridor: the chord-face incidence tree must be a path ---------
    // Chords cut the disk into side_faces; each face may border at most two
    // chords or no linear insertion corridor exists.
    std::map<DartId, std::vector<DartId>> chords_at;  // face rep -> chords
    std::set<DartId> chords;  // one dart per chord: the lower dart id
    for (DartId t : chord_darts)
      chords.insert(std::min(t, d.alpha(t)));
    for (DartId t : chords) {
      chords_at[face_rep(d, t)].push_back(t);
      chords_at[face_rep(d, d.alpha(t))].push_back(t);
    }
    bool path = true;
    for (const auto& [f, cs] : chords_at)
      if (cs.size() > 2) path = false;
    if (!path) {
      if (side == 1)
        return fail_portrait(c, "passages do not line up in a corridor");
      continue;
    }

    CirclePortrait pt;
    pt.ok = true;
    pt.circle = c;
    pt.framing = d.comps[c].framing;
    pt.disk_side = side_darts;
    pt.outer_side = other_darts;

    if (!chords.empty()) {
      // Walk the path from an end face (a side face bordering exactly one
      // chord; ties broken by smallest face rep for determinism).
      DartId start_face = kNoDart;
      for (DartId f : side_faces) {
        auto it = chords_at.find(f);
        std::size_t deg = it == chords_at.end() ? 0 : it->second.size();
        if (deg == 1 && (start_face == kNoDart || f < start_face))
          start_face = f;
      }
      if (start_face == kNoDart)
        return fail_portrait(c, "passages do not line up in a corridor");
      DartId cur_face = start_face;
      std::set<DartId> used;
      while (used.size() < chords.size()) {
        DartId next_chord = kNoDart;
        for (DartId t : chords_at[cur_face])
          if (!used.count(t)) next_chord = t;
        if (next_chord == kNoDart)
          return fail_portrait(c, "passages do not line up in a corridor");
        used.insert(next_chord);
        // Orient the chord along the corridor: the bundle contract wants
        // face(chord) == the face we are leaving, so consecutive chords
        // chain through face(alpha(chord)).
        DartId oriented = face_rep(d, next_chord) == cur_face
                              ? next_chord
                              : d.alpha(next_chord);
        Passage p;
        p.chord = oriented;
        p.entry = d.vertex_of(oriented);
        p.exit = d.vertex_of(d.alpha(oriented));
        p.comp = d.comp_of(oriented);
        p.wedge = d.comps[p.comp].kind == CompKind::Wedge;
        p.sign = crossing_sign(d, p.entry);
        p.over_at_entry = d.on_over_strand(oriented);
        pt.passages.push_back(p);
        cur_face = face_rep(d, d.alpha(oriented));
      }
    }
    return pt;
  }
  return fail_portrait(c, "no clean disk side");
}

std::vector<std::pair<CompId, int>> passage_census(const CirclePortrait& pt) {
  std::map<CompId, int> sums;
  for (const Passage& p : pt.passages) sums[p.comp] += p.sign;
  return {sums.begin(), sums.end()};
}

// ---------------------------------------------------------------------------
// Ring insertion with per-lane targets
// ---------------------------------------------------------------------------

RingReceipt insert_ring(Diagram& d, const std::vector<LaneSpec>& lanes,
                        const Rational& framing) {
  std::vector<DartId> bundle;
  std::vector<bool> flags;
  for (const LaneSpec& l : lanes) {
    bundle.push_back(l.dart);
    flags.push_back(l.over_at_out);
  }
  RingReceipt rc;
  rc.ring = insert_bundle_ring(d, bundle, framing, flags);
  // The handed dart keeps its vertex, so the out-crossing of lane i is now
  // just across bundle[i]'s edge, and the return crossing is the strand's
  // next stop through it.
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    DartId a = d.alpha(bundle[i]);
    VertexId out = d.vertex_of(a);
    DartId through = d.sigma(d.sigma(a));
    VertexId ret = d.vertex_of(d.alpha(through));
    rc.crossings.emplace_back(out, ret);
    if (lanes[i].sign != 0 && crossing_sign(d, out) != lanes[i].sign) {
      flip_over(d, out);
      flip_over(d, ret);
    }
    if (lanes[i].sign != 0 && (crossing_sign(d, out) != lanes[i].sign ||
                               crossing_sign(d, ret) != lanes[i].sign))
      throw std::logic_error("insert_ring: passage signs disagree");
  }
  return rc;
}

// ---------------------------------------------------------------------------
// Clasps and pokes
// ---------------------------------------------------------------------------

std::pair<VertexId, VertexId> cross_twice(Diagram& d, DartId a, DartId b,
                                          bool poke, int sign) {
  BraidRow row = row_from_darts(d, {a, b});
  // After the first crossing the occupants swap lanes, so keeping the same
  // curve on top means flipping left_over for a poke, while keeping
  // left_over alternates the curves (clasp).
  VertexId v1 = braid_cross(d, row, 0, true);
  VertexId v2 = braid_cross(d, row, 0, poke ? false : true);
  restamp_row(d, row);
  if (!poke) {
    set_crossing_sign(d, v1, sign);
    set_crossing_sign(d, v2, sign);
  }
  reconcile_nesting(d);
  return {v1, v2};
}

// ---------------------------------------------------------------------------
// Bigons
// ---------------------------------------------------------------------------

BigonSite read_bigon(const Diagram& d, DartId x) {
  BigonSite s;
  s.x = x;
  DartId y = d.face_next(x);
  if (y == x || d.face_next(y) != x) {
    s.why = "face is not a bigon";
    return s;
  }
  VertexId u = d.vertex_of(x);
  VertexId v = d.vertex_of(y);
  if (u == v || d.verts[u].kind != VertexKind::Crossing ||
      d.verts[v].kind != VertexKind::Crossing) {
    s.why = "bigon corners are not two crossings";
    return s;
  }
  s.u = u;
  s.v = v;
  // Strand A holds x (and alpha(x) at v); strand B holds y (and alpha(y)
  // at u).  The cancellation pattern needs one strand over at both corners.
  bool a_over_u = d.on_over_strand(x);
  bool a_over_v = d.on_over_strand(d.alpha(x));
  if (a_over_u != a_over_v) {
    s.why = "crossings alternate (clasp)";
    return s;
  }
  CompId ca = d.comp_of(x);
  CompId cb = d.comp_of(y);
  s.over_comp = a_over_u ? ca : cb;
  s.under_comp = a_over_u ? cb : ca;
  s.ok = true;
  return s;
}

void remove_bigon(Diagram& d, const BigonSite& site) {
  if (!site.ok) throw std::logic_error("remove_bigon: invalid site");
  excise_vertices(d, {site.u, site.v},
                  fallback_for_vertices(d, {site.u, site.v}));
  renormalize_dummies(d);
  reconcile_nesting(d);
}

// ---------------------------------------------------------------------------
// Triangle slides
// ---------------------------------------------------------------------------

TriangleSite read_triangle(const Diagram& d, DartId t, DartId slider) {
  TriangleSite s;
  DartId a = t, b = d.face_next(t), c = d.face_next(d.face_next(t));
  if (d.face_next(c) != a || a == b || b == c) {
    s.why = "face is not a triangle";
    return s;
  }
  // Rotate so the slider's dart comes first.
  if (slider == b) {
    std::swap(a, b);
    std::swap(b, c);
  } else if (slider == c) {
    std::swap(a, c);
    std::swap(b, c);
  } else if (slider != a) {
    s.why = "slider dart not on the triangle";
    return s;
  }
  VertexId A = d.vertex_of(a), B = d.vertex_of(b), C = d.vertex_of(c);
  if (A == B || B == C || A == C) {
    s.why = "triangle corners coincide";
    return s;
  }
  for (VertexId vv : {A, B, C})
    if (d.verts[vv].kind != VertexKind::Crossing) {
      s.why = "triangle corner is not a crossing";
      return s;
    }
  // The slider strand holds a and alpha(a); it must be on the same side at
  // both of its corners or the slide is not an isotopy.
  if (d.on_over_strand(a) != d.on_over_strand(d.alpha(a))) {
    s.why = "slider is not uniformly over or under";
    return s;
  }
  // The slide re-pairs the six leg edges leaving the corners: each strand's
  // two legs trade far partners.  That rewiring is a valid involution edit
  // only when the six far darts are distinct from each other and from the
  // twelve corner darts; a coincidence (a leg returning straight to another
  // corner, or two legs sharing one edge) would assign one dart two
  // partners, so such shapes are refused.
  {
    std::set<DartId> slots;
    for (DartId t0 : {a, b, c}) {
      for (DartId e : {t0, d.alpha(t0)}) {
        slots.insert(e);
        DartId leg = d.sigma(d.sigma(e));
        slots.insert(leg);
        slots.insert(d.alpha(leg));
      }
    }
    if (slots.size() != 18) {
      s.why = "strand closes on the triangle";
      return s;
    }
  }
  s.u = a;
  s.v = b;
  s.w = c;
  s.ok = true;
  return s;
}

DartId slide_triangle(Diagram& d, const TriangleSite& site) {
  if (!site.ok) throw std::logic_error("slide_triangle: invalid site");
  DartId u = site.u, v = site.v, w = site.w;

  // Snapshot before any relink.  Each strand enters the triangle along two
  // legs, one per corner it meets: writing sX = sigma^2(corner dart) for the
  // near leg dart and fX = alpha(sX) for its far partner, the slide keeps
  // all three triangle edges in place and has each strand's two legs trade
  // far partners.  Sliding a strand across the opposite crossing re-forms
  // the same three edges as the triangle on the far side, so the image
  // triangle is the same dart triple, the rewiring is its own inverse, and
  // every crossing keeps its over dart and its sign.
  DartId sA = d.sigma(d.sigma(u)), fA = d.alpha(sA);
  DartId sB = d.sigma(d.sigma(d.alpha(u))), fB = d.alpha(sB);
  DartId P = d.sigma(d.sigma(v)), Pp = d.alpha(P);
  DartId Q = d.sigma(d.sigma(d.alpha(v))), Qp = d.alpha(Q);
  DartId P2 = d.sigma(d.sigma(w)), P2p = d.alpha(P2);
  DartId Q2 = d.sigma(d.sigma(d.alpha(w))), Q2p = d.alpha(Q2);

  // Far darts point toward the triangle before and after the slide, so
  // their direction flags survive and anchor the re-stamp; corner darts may
  // end up traversed the other way.  Collect one anchor per component
  // before the relinks scramble the walks.
  struct Anchor {
    CompId comp;
    DartId far;
    bool fwd;
    bool wedge;
  };
  std::vector<Anchor> anchors;
  auto note = [&](DartId corner, DartId far) {
    CompId c = d.comp_of(corner);
    for (const Anchor& a : anchors)
      if (a.comp == c) return;
    bool wedge = d.comps[c].kind == CompKind::Wedge;
    anchors.push_back({c, far, d.darts[far].forward, wedge});
  };
  note(u, fA);
  note(v, Pp);
  note(w, P2p);

  relink(d, sA, fB);
  relink(d, sB, fA);
  relink(d, P, Qp);
  relink(d, Q, Pp);
  relink(d, P2, Q2p);
  relink(d, Q2, P2p);

  // Petal walks start at their basepoints, which the slide never touches;
  // circle walks reseed at the anchor so the stamp runs the way the far
  // dart still points.
  for (const Anchor& a : anchors) {
    if (!a.wedge)
      d.comps[a.comp].seed = a.fwd ? a.far : d.alpha(a.far);
    restamp_component(d, a.comp);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Markers
// ---------------------------------------------------------------------------

std::vector<DartId> plant_markers(Diagram& d,
                                  const std::vector<DartId>& edges) {
  std::vector<DartId> out;
  for (DartId a : edges) {
    subdivide(d, a);
    out.push_back(d.alpha(a));
  }
  return out;
}

}  // namespace zq
