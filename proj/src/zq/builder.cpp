#include "zq/builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace zq {

namespace {

DartId alloc_dart(Diagram& d, VertexId v, CompId c, bool forward) {
  Dart dart;
  dart.alpha = kNoDart;
  dart.sigma = kNoDart;
  dart.vertex = v;
  dart.comp = c;
  dart.forward = forward;
  dart.alive = true;
  d.darts.push_back(dart);
  return static_cast<DartId>(d.darts.size() - 1);
}

VertexId alloc_vertex(Diagram& d, VertexKind kind) {
  Vertex v;
  v.kind = kind;
  v.dart = kNoDart;
  v.over = kNoDart;
  v.wedge = kNoComp;
  v.alive = true;
  d.verts.push_back(v);
  return static_cast<VertexId>(d.verts.size() - 1);
}

void link_edge(Diagram& d, DartId x, DartId y) {
  d.darts[x].alpha = y;
  d.darts[y].alpha = x;
}

// Installs the counterclockwise rotation at a vertex and anchors the
// vertex's dart pointer.
void set_rotation(Diagram& d, VertexId v, const std::vector<DartId>& cycle) {
  for (size_t i = 0; i < cycle.size(); ++i) {
    d.darts[cycle[i]].sigma = cycle[(i + 1) % cycle.size()];
    d.darts[cycle[i]].vertex = v;
  }
  d.verts[v].dart = cycle[0];
}

void kill_dart(Diagram& d, DartId x) { d.darts[x].alive = false; }

// Union-find over face representatives plus one ambient node, glued along
// nesting entries: a child's outer face bounds the same region as its
// hosting face.
struct RegionSets {
  std::map<DartId, DartId> parent;  // face rep -> parent rep; kNoDart = ambient

  DartId find(DartId x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    it->second = find(it->second);
    return it->second;
  }
  void unite(DartId a, DartId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Keep the ambient node (kNoDart) as the class leader; otherwise the
    // smaller dart id leads, which makes leaders deterministic.
    if (b == kNoDart || (a != kNoDart && b < a)) std::swap(a, b);
    parent[b] = a;
  }
};

RegionSets region_sets(const Diagram& d) {
  RegionSets rs;
  for (const auto& [rep, place] : d.nesting) {
    DartId outer = face_rep(d, place.outer);
    DartId host = place.host == kNoDart ? kNoDart : face_rep(d, place.host);
    rs.parent.emplace(outer, outer);
    if (host != kNoDart) rs.parent.emplace(host, host);
    rs.unite(outer, host);
  }
  return rs;
}

}  // namespace

DartId region_leader(const Diagram& d, DartId face_dart) {
  RegionSets rs = region_sets(d);
  return rs.find(face_rep(d, face_dart));
}

bool same_region(const Diagram& d, DartId f1, DartId f2) {
  RegionSets rs = region_sets(d);
  return rs.find(face_rep(d, f1)) == rs.find(face_rep(d, f2));
}

std::vector<CompId> region_children(const Diagram& d, DartId region) {
  RegionSets rs = region_sets(d);
  DartId lead = region == kNoDart ? kNoDart : rs.find(face_rep(d, region));
  std::vector<CompId> out;
  for (const auto& [rep, place] : d.nesting) {
    DartId h = place.host == kNoDart ? kNoDart : rs.find(face_rep(d, place.host));
    if (h == lead) out.push_back(rep);
  }
  return out;
}

CompId add_unknot(Diagram& d, const Rational& framing, DartId host_face) {
  CompId c = static_cast<CompId>(d.comps.size());
  Component comp;
  comp.kind = CompKind::Link;
  comp.framing = framing;
  comp.wedge = kNoComp;
  comp.petal = -1;
  comp.alive = true;
  d.comps.push_back(comp);

  VertexId u = alloc_vertex(d, VertexKind::Dummy);
  VertexId w = alloc_vertex(d, VertexKind::Dummy);
  DartId a = alloc_dart(d, u, c, true);
  DartId b = alloc_dart(d, u, c, false);
  DartId a2 = alloc_dart(d, w, c, false);
  DartId b2 = alloc_dart(d, w, c, true);
  link_edge(d, a, a2);
  link_edge(d, b, b2);
  set_rotation(d, u, {a, b});
  set_rotation(d, w, {a2, b2});
  d.comps[c].seed = a;

  d.nesting[c] = Nesting{host_face, a};
  reconcile_nesting(d);
  return c;
}

WedgeId add_wedge(Diagram& d, int genus, DartId host_face) {
  if (genus < 1) throw std::logic_error("wedge needs at least one petal");
  WedgeId w = static_cast<WedgeId>(d.wedges.size());
  VertexId bp = alloc_vertex(d, VertexKind::Basepoint);
  d.verts[bp].wedge = w;

  WedgeInfo info;
  info.basepoint = bp;
  info.genus = genus;
  info.alive = true;
  d.wedges.push_back(info);

  std::vector<DartId> rotation;
  CompId first = kNoComp;
  for (int i = 0; i < genus; ++i) {
    CompId c = static_cast<CompId>(d.comps.size());
    if (first == kNoComp) first = c;
    Component comp;
    comp.kind = CompKind::Wedge;
    comp.framing = Rational::integer(0);
    comp.wedge = w;
    comp.petal = i;
    comp.alive = true;
    d.comps.push_back(comp);
    DartId s = alloc_dart(d, bp, c, true);
    DartId e = alloc_dart(d, bp, c, false);
    link_edge(d, s, e);
    d.comps[c].seed = s;
    rotation.push_back(s);
    rotation.push_back(e);
  }
  set_rotation(d, bp, rotation);

  // With rotation (s0 e0 s1 e1 ...) the petal interiors are the singleton
  // face orbits {e_i} and all the start darts share the outer face.
  d.nesting[first] = Nesting{host_face, rotation[0]};
  reconcile_nesting(d);
  return w;
}

VertexId subdivide(Diagram& d, DartId a) {
  DartId y = d.alpha(a);
  VertexId v = alloc_vertex(d, VertexKind::Dummy);
  CompId c = d.comp_of(a);
  DartId p = alloc_dart(d, v, c, !d.darts[a].forward);
  DartId q = alloc_dart(d, v, c, !d.darts[y].forward);
  link_edge(d, a, p);
  link_edge(d, q, y);
  set_rotation(d, v, {p, q});
  return v;
}

void smooth_vertex(Diagram& d, VertexId v) {
  if (d.degree(v) != 2) throw std::logic_error("smoothing a vertex of degree != 2");
  DartId p = d.verts[v].dart;
  DartId q = d.sigma(p);
  DartId x = d.alpha(p);
  DartId y = d.alpha(q);
  if (x == q) throw std::logic_error("smoothing the vertex of a one-edge loop");

  // Keep placement handles off the dying darts.
  for (auto& [rep, place] : d.nesting) {
    for (DartId* h : {&place.host, &place.outer}) {
      if (*h != p && *h != q) continue;
      DartId cur = d.face_next(*h);
      while (cur == p || cur == q) cur = d.face_next(cur);
      *h = cur;
    }
  }
  CompId c = d.comp_of(p);
  if (d.comps[c].seed == p || d.comps[c].seed == q)
    d.comps[c].seed = d.darts[x].forward ? x : y;

  link_edge(d, x, y);
  kill_dart(d, p);
  kill_dart(d, q);
  d.verts[v].alive = false;
}

CrossingDarts make_crossing(Diagram& d, DartId a, DartId b, bool a_side_over) {
  // The wiring below re-routes face walks only behind the arguments:
  // alpha(a) continues into alpha(b)'s old continuation and vice versa.
  // Cross-splicing one face at two points splits it (sphere-safe);
  // cross-splicing two distinct faces fuses them, which adds a handle
  // unless the faces belong to separate pieces, where it fuses their two
  // spheres into one.  Decide which case we are in, and stage the
  // placement-entry merge for a join, before any wiring disturbs the
  // orbits.
  CompId drop_key = kNoComp;        // placement entry that dies with a join
  if (face_rep(d, d.alpha(a)) != face_rep(d, d.alpha(b))) {
    CompId ka = piece_rep(d, a);
    CompId kb = piece_rep(d, b);
    if (ka == kb)
      throw std::logic_error("crossing would pinch a handle into the surface");
    CompId key_a = kNoComp, key_b = kNoComp;
    for (const auto& [key, place] : d.nesting) {
      CompId pr = piece_rep(d, place.outer);
      if (pr == ka) {
        if (key_a != kNoComp) throw std::logic_error("piece has two placements");
        key_a = key;
      } else if (pr == kb) {
        if (key_b != kNoComp) throw std::logic_error("piece has two placements");
        key_b = key;
      }
    }
    if (key_a == kNoComp || key_b == kNoComp)
      throw std::logic_error("crossing joins a piece without a placement");
    // One placement entry survives the join.  An entry hosted by a dart on
    // either joining piece describes where one piece floated inside the
    // other, which the join erases; an entry whose host lies outside the
    // merged piece (or is the ambient region) still describes where the
    // merged piece sits, so it is the one to keep.
    auto external = [&](CompId key) {
      DartId h = d.nesting[key].host;
      if (h == kNoDart) return true;
      CompId hp = piece_rep(d, h);
      return hp != ka && hp != kb;
    };
    bool ext_a = external(key_a);
    bool ext_b = external(key_b);
    if (!ext_a && !ext_b)
      throw std::logic_error("joined pieces host each other");
    drop_key = (ext_a == ext_b ? key_a < key_b : ext_a) ? key_b : key_a;
  }

  DartId a2 = d.alpha(a);
  DartId b2 = d.alpha(b);
  VertexId v = alloc_vertex(d, VertexKind::Crossing);

  DartId p = alloc_dart(d, v, d.comp_of(a), !d.darts[a].forward);
  DartId q = alloc_dart(d, v, d.comp_of(b), !d.darts[b].forward);
  DartId r = alloc_dart(d, v, d.comp_of(a2), !d.darts[a2].forward);
  DartId s = alloc_dart(d, v, d.comp_of(b2), !d.darts[b2].forward);
  link_edge(d, a, p);
  link_edge(d, q, b);
  link_edge(d, r, a2);
  link_edge(d, s, b2);
  set_rotation(d, v, {s, p, r, q});
  d.verts[v].over = a_side_over ? p : s;

  if (drop_key != kNoComp) d.nesting.erase(drop_key);
  return CrossingDarts{v, p, q, r, s};
}

CompId insert_bundle_ring(Diagram& d, const std::vector<DartId>& bundle,
                          const Rational& framing, bool thread_over_at_out) {
  return insert_bundle_ring(
      d, bundle, framing,
      std::vector<bool>(bundle.size(), thread_over_at_out));
}

CompId insert_bundle_ring(Diagram& d, const std::vector<DartId>& bundle,
                          const Rational& framing,
                          const std::vector<bool>& thread_over_at_out) {
  size_t k = bundle.size();
  if (k == 0) throw std::logic_error("empty bundle");
  if (thread_over_at_out.size() != k)
    throw std::logic_error("one over flag per bundle edge");
  for (size_t i = 0; i + 1 < k; ++i) {
    if (!same_region(d, d.alpha(bundle[i]), bundle[i + 1]))
      throw std::logic_error("bundle darts are not a corridor");
  }

  CompId ring = static_cast<CompId>(d.comps.size());
  Component comp;
  comp.kind = CompKind::Link;
  comp.framing = framing;
  comp.wedge = kNoComp;
  comp.petal = -1;
  comp.alive = true;
  d.comps.push_back(comp);

  // Each thread is cut into [u - out - back - w]; the ring runs along the
  // out crossings, wraps past the last thread, and returns along the back
  // crossings.
  std::vector<DartId> g(k), h(k), gb(k), hb(k);
  for (size_t i = 0; i < k; ++i) {
    DartId di = bundle[i];
    DartId far = d.alpha(di);
    CompId tc = d.comp_of(di);
    bool dfwd = d.darts[di].forward;
    VertexId vo = alloc_vertex(d, VertexKind::Crossing);
    VertexId vb = alloc_vertex(d, VertexKind::Crossing);

    DartId ai = alloc_dart(d, vo, tc, !dfwd);
    DartId bi = alloc_dart(d, vo, tc, dfwd);
    g[i] = alloc_dart(d, vo, ring, false);
    h[i] = alloc_dart(d, vo, ring, true);
    DartId a2 = alloc_dart(d, vb, tc, !dfwd);
    DartId b2 = alloc_dart(d, vb, tc, dfwd);
    hb[i] = alloc_dart(d, vb, ring, false);
    gb[i] = alloc_dart(d, vb, ring, true);

    link_edge(d, di, ai);
    link_edge(d, bi, a2);
    link_edge(d, b2, far);
    set_rotation(d, vo, {h[i], bi, g[i], ai});
    set_rotation(d, vb, {hb[i], b2, gb[i], a2});
    d.verts[vo].over = thread_over_at_out[i] ? ai : g[i];
    d.verts[vb].over = thread_over_at_out[i] ? gb[i] : a2;
  }
  for (size_t i = 0; i + 1 < k; ++i) {
    link_edge(d, h[i], g[i + 1]);
    link_edge(d, gb[i + 1], hb[i]);
  }
  link_edge(d, h[k - 1], hb[k - 1]);
  link_edge(d, gb[0], g[0]);
  d.comps[ring].seed = h[0];

  reconcile_nesting(d);
  return ring;
}

void splice_through(Diagram& d, VertexId v, CompId dying_comp,
                    std::set<CompId>* collapsed) {
  if (d.verts[v].kind != VertexKind::Crossing)
    throw std::logic_error("splice_through expects a crossing");
  DartId x1 = d.verts[v].dart;
  std::vector<DartId> strand1 = {x1, d.sigma(d.sigma(x1))};
  std::vector<DartId> strand2 = {d.sigma(x1), d.sigma(strand1[1])};
  for (const auto& st : {strand1, strand2}) {
    CompId c = d.comp_of(st[0]);
    if (c != dying_comp) {
      DartId y1 = d.alpha(st[0]);
      DartId y2 = d.alpha(st[1]);
      if (y1 == st[1]) {
        // The strand's two edges coincide: a bare loop hung on this
        // crossing alone.  The component keeps no darts; the caller
        // rebuilds it as a crossing-free circle.
        if (collapsed) collapsed->insert(c);
      } else {
        link_edge(d, y1, y2);
      }
    }
    kill_dart(d, st[0]);
    kill_dart(d, st[1]);
  }
  d.verts[v].alive = false;
}

void materialize_bare_circle(Diagram& d, CompId c, DartId host_face) {
  VertexId u = alloc_vertex(d, VertexKind::Dummy);
  VertexId w = alloc_vertex(d, VertexKind::Dummy);
  DartId a = alloc_dart(d, u, c, true);
  DartId b = alloc_dart(d, u, c, false);
  DartId a2 = alloc_dart(d, w, c, false);
  DartId b2 = alloc_dart(d, w, c, true);
  link_edge(d, a, a2);
  link_edge(d, b, b2);
  set_rotation(d, u, {a, b});
  set_rotation(d, w, {a2, b2});
  d.comps[c].seed = a;
  d.comps[c].alive = true;
  d.nesting[c] = Nesting{host_face, a};
}

void delete_component_curve(Diagram& d, CompId c, DartId fallback_face,
                            bool renormalize) {
  if (d.comps[c].kind != CompKind::Link)
    throw std::logic_error("only link components can be deleted");

  // Vertices the curve visits, and every dart that dies with them.
  std::set<VertexId> on_curve;
  std::set<DartId> dying;
  for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x) {
    if (d.darts[x].alive && d.darts[x].comp == c) {
      dying.insert(x);
      on_curve.insert(d.vertex_of(x));
    }
  }
  for (VertexId v : on_curve)
    for (DartId x : d.vertex_darts(v)) dying.insert(x);

  // If the curve's piece contains nothing else, its children float up to
  // wherever the piece itself was placed.
  std::set<CompId> piece_comps;
  for (const auto& grp : pieces(d)) {
    bool mine = false;
    std::set<CompId> cs;
    for (DartId x : grp) {
      cs.insert(d.comp_of(x));
      if (d.comp_of(x) == c) mine = true;
    }
    if (mine) {
      piece_comps = cs;
      break;
    }
  }
  if (piece_comps == std::set<CompId>{c}) {
    DartId up = kNoDart;
    for (auto it = d.nesting.begin(); it != d.nesting.end();) {
      if (dying.count(it->second.outer)) {
        up = it->second.host;
        it = d.nesting.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& [rep, place] : d.nesting)
      if (place.host != kNoDart && dying.count(place.host)) place.host = up;
    for (DartId x : dying) kill_dart(d, x);
    for (VertexId v : on_curve) d.verts[v].alive = false;
    d.comps[c].alive = false;
    reconcile_nesting(d);
    return;
  }

  std::vector<CompId> orphans;
  repoint_placement_handles(d, dying, &orphans);

  std::set<CompId> collapsed;
  for (VertexId v : on_curve) {
    if (d.verts[v].kind == VertexKind::Crossing) {
      splice_through(d, v, c, &collapsed);
    } else {
      for (DartId x : d.vertex_darts(v)) kill_dart(d, x);
      d.verts[v].alive = false;
    }
  }
  d.comps[c].alive = false;
  d.nesting.erase(c);

  DartId orphan_home = fallback_face;
  for (CompId cc : collapsed) {
    // The collapsed component's old key may hold an entry that was repointed
    // onto a surviving dart; that entry now places the remainder piece, and
    // the rebuilt circle must not evict it.  Keys are rebuilt from outer
    // darts at the end, so any unused slot will do.
    auto held = d.nesting.find(cc);
    if (held != d.nesting.end() && held->second.outer != kNoDart &&
        d.darts[held->second.outer].alive) {
      CompId park = static_cast<CompId>(d.comps.size());
      while (d.nesting.count(park)) ++park;
      d.nesting.emplace(park, held->second);
      d.nesting.erase(held);
    }
    materialize_bare_circle(d, cc, fallback_face);
    // A piece that collapsed to a bare circle may have carried floaters in
    // the pocket of its loop; they stay inside the rebuilt circle.
    orphan_home = d.sigma(d.comps[cc].seed);
  }
  for (CompId key : orphans) {
    // A collapsed piece just received a fresh placement from its rebuilt
    // circle; only genuine floaters from dead pockets need a new home.
    if (collapsed.count(key)) continue;
    auto it = d.nesting.find(key);
    if (it != d.nesting.end()) it->second.host = orphan_home;
  }

  refresh_seeds(d);
  if (renormalize) renormalize_dummies(d);
  reconcile_nesting(d);
}

void restamp_component(Diagram& d, CompId c) {
  DartId seed = d.comps[c].seed;
  size_t guard = d.darts.size() + 1;
  DartId cur = seed;
  while (guard-- > 0) {
    d.darts[cur].comp = c;
    d.darts[cur].forward = true;
    DartId back = d.alpha(cur);
    d.darts[back].comp = c;
    d.darts[back].forward = false;
    DartId next = d.strand_next(cur);
    if (next == kNoDart || next == seed) return;
    cur = next;
  }
  throw std::logic_error("curve walk does not close");
}

void renormalize_dummies(Diagram& d) {
  for (CompId c = 0; c < static_cast<CompId>(d.comps.size()); ++c) {
    if (!d.comps[c].alive) continue;
    std::vector<VertexId> dummies;
    int crossings = 0;
    for (DartId x : d.component_walk(c)) {
      VertexId v = d.vertex_of(x);
      if (d.verts[v].kind == VertexKind::Dummy) dummies.push_back(v);
      if (d.verts[v].kind == VertexKind::Crossing) ++crossings;
    }
    bool keep_two = d.comps[c].kind == CompKind::Link && crossings == 0;
    if (keep_two) {
      while (dummies.size() > 2) {
        smooth_vertex(d, dummies.back());
        dummies.pop_back();
      }
      if (dummies.size() == 1) subdivide(d, d.comps[c].seed);
      if (dummies.empty())
        throw std::logic_error("crossing-free circle with no vertices");
    } else {
      for (VertexId v : dummies) smooth_vertex(d, v);
    }
  }
}

void repoint_placement_handles(Diagram& d, const std::set<DartId>& dying,
                               std::vector<CompId>* orphans) {
  for (auto& [rep, place] : d.nesting) {
    for (DartId* h : {&place.host, &place.outer}) {
      if (*h == kNoDart || !dying.count(*h)) continue;
      DartId cur = d.face_next(*h);
      while (cur != *h && dying.count(cur)) cur = d.face_next(cur);
      if (cur == *h) {
        // The whole face dies; the caller re-homes this entry.
        if (orphans) orphans->push_back(rep);
      } else {
        *h = cur;
      }
    }
  }
}

void reconcile_nesting(Diagram& d) {
  std::vector<std::vector<DartId>> grps = pieces(d);
  std::map<DartId, size_t> piece_of;
  std::vector<CompId> rep(grps.size(), kNoComp);
  for (size_t i = 0; i < grps.size(); ++i) {
    for (DartId x : grps[i]) {
      piece_of[x] = i;
      CompId c = d.comp_of(x);
      if (rep[i] == kNoComp || c < rep[i]) rep[i] = c;
    }
  }

  // Entries are matched to pieces through their outer dart; keys only break
  // ties.  A merged piece keeps a placement whose host lies outside it (the
  // host of a swallowed sibling now points into the piece itself and is
  // meaningless).
  std::vector<std::vector<std::pair<CompId, Nesting>>> bucket(grps.size());
  for (const auto& [key, place] : d.nesting) {
    if (!d.darts[place.outer].alive)
      throw std::logic_error("placement outer handle is dead");
    bucket[piece_of.at(place.outer)].emplace_back(key, place);
  }
  std::map<CompId, Nesting> fresh;
  for (size_t i = 0; i < grps.size(); ++i) {
    if (bucket[i].empty())
      throw std::logic_error("piece has no placement after surgery");
    const Nesting* pick = nullptr;
    CompId pick_key = kNoComp;
    bool pick_external = false;
    for (const auto& [key, place] : bucket[i]) {
      bool external =
          place.host == kNoDart || piece_of.at(place.host) != i;
      bool better = pick == nullptr || (external && !pick_external) ||
                    (external == pick_external && key < pick_key);
      if (better) {
        pick = &place;
        pick_key = key;
        pick_external = external;
      }
    }
    fresh[rep[i]] = *pick;
  }
  d.nesting = std::move(fresh);
}

void refresh_seeds(Diagram& d) {
  for (CompId c = 0; c < static_cast<CompId>(d.comps.size()); ++c) {
    if (!d.comps[c].alive) continue;
    DartId seed = d.comps[c].seed;
    bool ok = seed != kNoDart && seed < static_cast<DartId>(d.darts.size()) &&
              d.darts[seed].alive && d.darts[seed].comp == c &&
              d.darts[seed].forward;
    if (d.comps[c].kind == CompKind::Wedge && ok)
      ok = d.verts[d.vertex_of(seed)].kind == VertexKind::Basepoint;
    if (ok) continue;
    for (DartId x = 0; x < static_cast<DartId>(d.darts.size()); ++x) {
      if (!d.darts[x].alive || d.darts[x].comp != c || !d.darts[x].forward)
        continue;
      if (d.comps[c].kind == CompKind::Wedge &&
          d.verts[d.vertex_of(x)].kind != VertexKind::Basepoint)
        continue;
      d.comps[c].seed = x;
      break;
    }
  }
}

}  // namespace zq
