// Site matching and verification for the move catalog.  Matchers are
// deliberately conservative: each family accepts exactly the shapes its
// applier can rewrite and invert exactly, so "no site" is the honest answer
// for configurations that are only isotopic to a matchable one.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "zq/builder.hpp"
#include "zq/macros.hpp"
#include "zq/rules.hpp"

namespace zq {

namespace {

// --- small diagram queries -------------------------------------------------

bool comp_in_range(const Diagram& d, std::int64_t c) {
  return c >= 0 && c < (std::int64_t)d.comps.size() && d.comps[(size_t)c].alive;
}

bool dart_in_range(const Diagram& d, std::int64_t x) {
  return x >= 0 && x < (std::int64_t)d.darts.size() && d.darts[(size_t)x].alive;
}

bool link_comp(const Diagram& d, CompId c) {
  return d.comps[c].kind == CompKind::Link;
}

// +1 or -1 for an integral unit framing, 0 otherwise.
int unit_framing(const Rational& f) {
  if (f.q == 1 && (f.p == 1 || f.p == -1)) return (int)f.p;
  return 0;
}

DartId edge_key(const Diagram& d, DartId x) { return std::min(x, d.alpha(x)); }

// Number of crossing visits along the component's curve (each self-crossing
// counts twice, a crossing with another strand once).
int crossing_visits(const Diagram& d, CompId c) {
  int n = 0;
  for (DartId w : d.component_walk(c))
    if (d.verts[d.vertex_of(w)].kind == VertexKind::Crossing) ++n;
  return n;
}

// Component of the other strand at the crossing holding dart w.
CompId other_strand_comp(const Diagram& d, DartId w) {
  return d.comp_of(d.sigma(w));
}

bool meets_wedge(const Diagram& d, CompId c) {
  for (DartId w : d.component_walk(c)) {
    if (d.verts[d.vertex_of(w)].kind != VertexKind::Crossing) continue;
    CompId o = other_strand_comp(d, w);
    if (d.comps[o].kind == CompKind::Wedge) return true;
  }
  return false;
}

// Region leaders with a per-call cache (region_leader walks nesting, so
// enumeration loops want the memoized form).
struct Regions {
  const Diagram& d;
  std::map<DartId, DartId> cache;
  explicit Regions(const Diagram& dd) : d(dd) {}
  DartId leader(DartId face_dart) {
    if (face_dart == kNoDart) return kNoDart;
    DartId rep = face_rep(d, face_dart);
    auto it = cache.find(rep);
    if (it != cache.end()) return it->second;
    DartId l = region_leader(d, rep);
    cache[rep] = l;
    return l;
  }
  bool same(DartId f1, DartId f2) { return leader(f1) == leader(f2); }
};

std::optional<std::int64_t> bound_value(const MoveSite& s, const char* key) {
  auto it = s.bind.find(key);
  if (it == s.bind.end()) return std::nullopt;
  return it->second;
}

bool thread_count_fits(ThreadSpec spec, int n) {
  switch (spec) {
    case ThreadSpec::None: return n == 0;
    case ThreadSpec::One: return n == 1;
    case ThreadSpec::Two: return n == 2;
    case ThreadSpec::Many: return true;
  }
  return false;
}

// --- per-family verification ------------------------------------------------

#define NEED_DART(var, key)                                        \
  auto var##_v = bound_value(s, key);                              \
  if (!var##_v) {                                                  \
    r.why = std::string("site is missing binding '") + key + "'"; \
    return;                                                        \
  }                                                                \
  if (!dart_in_range(d, *var##_v)) {                               \
    r.why = std::string("binding '") + key + "' is not a live dart"; \
    return;                                                        \
  }                                                                \
  DartId var = (DartId)*var##_v;

#define NEED_COMP(var, key)                                        \
  auto var##_v = bound_value(s, key);                              \
  if (!var##_v) {                                                  \
    r.why = std::string("site is missing binding '") + key + "'"; \
    return;                                                        \
  }                                                                \
  if (!comp_in_range(d, *var##_v)) {                               \
    r.why = std::string("binding '") + key + "' is not a live component"; \
    return;                                                        \
  }                                                                \
  CompId var = (CompId)*var##_v;

void verify_reid1(const Diagram& d, const RewriteRule&, const MoveSite& s,
                  SiteCheck& r) {
  if (!s.inverse) {
    NEED_DART(x, "loop");
    if (!link_comp(d, d.comp_of(x))) {
      r.why = "curls live on link strands only";
      return;
    }
    if (!is_monogon(d, x)) {
      r.why = "dart does not close a monogon";
      return;
    }
    r.ok = true;
    return;
  }
  NEED_DART(e, "edge");
  auto sg = bound_value(s, "sign");
  if (!sg || (*sg != 1 && *sg != -1)) {
    r.why = "site needs binding 'sign' of +1 or -1";
    return;
  }
  if (!link_comp(d, d.comp_of(e))) {
    r.why = "curls live on link strands only";
    return;
  }
  r.ok = true;
}

void verify_reid2(const Diagram& d, const RewriteRule&, const MoveSite& s,
                  SiteCheck& r) {
  if (!s.inverse) {
    NEED_DART(x, "bigon");
    BigonSite b = read_bigon(d, x);
    if (!b.ok) {
      r.why = b.why;
      return;
    }
    if (!link_comp(d, b.over_comp) && !link_comp(d, b.under_comp)) {
      r.why = "a bigon between two wedge strands cannot be removed";
      return;
    }
    r.ok = true;
    return;
  }
  NEED_DART(o, "over");
  NEED_DART(u, "under");
  if (edge_key(d, o) == edge_key(d, u)) {
    r.why = "poke needs two distinct edges";
    return;
  }
  if (!link_comp(d, d.comp_of(o)) && !link_comp(d, d.comp_of(u))) {
    r.why = "one of the poked strands must be a link strand";
    return;
  }
  Regions reg(d);
  if (!reg.same(d.alpha(o), u)) {
    r.why = "poke lanes do not border a common region";
    return;
  }
  r.ok = true;
}

void verify_reid3(const Diagram& d, const RewriteRule&, const MoveSite& s,
                  SiteCheck& r) {
  NEED_DART(t, "triangle");
  NEED_DART(sl, "slider");
  TriangleSite site = read_triangle(d, t, sl);
  if (!site.ok) {
    r.why = site.why;
    return;
  }
  if (!link_comp(d, d.comp_of(site.u))) {
    r.why = "slider must be a link strand";
    return;
  }
  r.ok = true;
}

// Shared by blow-up and pair insertion: an ordered corridor of lane darts,
// consecutive lanes cobounding a region, every edge fresh.
bool check_lane_chain(const Diagram& d, const std::vector<DartId>& lanes,
                      SiteCheck& r) {
  std::set<DartId> edges;
  Regions reg(d);
  for (size_t i = 0; i < lanes.size(); ++i) {
    if (!dart_in_range(d, lanes[i])) {
      r.why = "lane " + std::to_string(i) + " is not a live dart";
      return false;
    }
    if (!edges.insert(edge_key(d, lanes[i])).second) {
      r.why = "lane edges must be distinct";
      return false;
    }
    if (i > 0 && !reg.same(d.alpha(lanes[i - 1]), lanes[i])) {
      r.why = "lanes do not chain through a common corridor";
      return false;
    }
  }
  return true;
}

void verify_blowdown(const Diagram& d, const RewriteRule& rule,
                     const MoveSite& s, SiteCheck& r) {
  if (!s.inverse) {
    NEED_COMP(c, "circle");
    if (!link_comp(d, c)) {
      r.why = "blow-down needs a link circle";
      return;
    }
    int eps = unit_framing(d.comps[c].framing);
    if (eps == 0) {
      r.why = "circle framing must be +1 or -1";
      return;
    }
    if (rule.epsilon != 0 && eps != rule.epsilon) {
      r.why = "circle framing does not match the rule";
      return;
    }
    CirclePortrait pt = analyze_circle(d, c);
    if (!pt.ok) {
      r.why = pt.why;
      return;
    }
    if (!thread_count_fits(rule.threads, (int)pt.passages.size())) {
      r.why = "thread count does not match the rule";
      return;
    }
    if (rule.link_only) {
      for (const Passage& p : pt.passages) {
        if (p.wedge) {
          r.why = "rule admits only link threads";
          return;
        }
      }
    }
    r.ok = true;
    return;
  }
  // Blow-up: insert an eps-framed circle around the lane corridor (or bare
  // into a region when there are no lanes).
  auto sg = bound_value(s, "sign");
  if (sg && *sg != 1 && *sg != -1) {
    r.why = "binding 'sign' must be +1 or -1";
    return;
  }
  if (rule.epsilon != 0 && sg && *sg != rule.epsilon) {
    r.why = "sign does not match the rule";
    return;
  }
  if (!thread_count_fits(rule.threads, (int)s.lanes.size())) {
    r.why = "lane count does not match the rule";
    return;
  }
  if (!check_lane_chain(d, s.lanes, r)) return;
  if (rule.link_only) {
    for (DartId l : s.lanes) {
      if (!link_comp(d, d.comp_of(l))) {
        r.why = "rule admits only link threads";
        return;
      }
    }
  }
  if (s.lanes.empty()) {
    auto f = bound_value(s, "face");
    if (!f) {
      r.why = "site is missing binding 'face'";
      return;
    }
    if (*f != kNoDart && !dart_in_range(d, *f)) {
      r.why = "binding 'face' is not a live dart or the ambient region";
      return;
    }
  }
  r.ok = true;
}

void verify_pair(const Diagram& d, const RewriteRule& rule, const MoveSite& s,
                 SiteCheck& r) {
  if (!s.inverse) {
    NEED_COMP(p, "plus");
    NEED_COMP(m, "minus");
    PairShape shape = read_pair(d, p, m);
    if (!shape.ok) {
      r.why = shape.why;
      return;
    }
    if (!thread_count_fits(rule.threads, shape.thread_count)) {
      r.why = "thread count does not match the rule";
      return;
    }
    if (rule.wedge_required && !shape.has_wedge) {
      r.why = "rule requires a wedge thread";
      return;
    }
    r.ok = true;
    return;
  }
  if (!thread_count_fits(rule.threads, (int)s.lanes.size())) {
    r.why = "lane count does not match the rule";
    return;
  }
  if (!check_lane_chain(d, s.lanes, r)) return;
  if (rule.wedge_required) {
    bool any = false;
    for (DartId l : s.lanes)
      any = any || d.comps[d.comp_of(l)].kind == CompKind::Wedge;
    if (!any) {
      r.why = "rule requires a wedge thread";
      return;
    }
  }
  if (s.lanes.empty()) {
    auto f = bound_value(s, "face");
    if (!f) {
      r.why = "site is missing binding 'face'";
      return;
    }
    if (*f != kNoDart && !dart_in_range(d, *f)) {
      r.why = "binding 'face' is not a live dart or the ambient region";
      return;
    }
  }
  r.ok = true;
}

// For a thread-free nested pair: a dart of the outer circle facing away
// from the annulus that holds the inner circle.
DartId bare_pair_outer_cap(const Diagram& d, const PairShape& shape,
                           Regions& reg) {
  auto host_it = d.nesting.find(piece_rep(d, d.comps[shape.inner].seed));
  if (host_it == d.nesting.end()) return kNoDart;
  DartId annulus = reg.leader(host_it->second.host);
  for (DartId w : d.component_walk(shape.outer)) {
    for (DartId x : {w, d.alpha(w)})
      if (reg.leader(x) != annulus) return x;
  }
  return kNoDart;
}

void verify_pair_extend(const Diagram& d, const RewriteRule& rule,
                        const MoveSite& s, SiteCheck& r) {
  NEED_COMP(p, "plus");
  NEED_COMP(m, "minus");
  auto endv = bound_value(s, "end");
  if (!endv || (*endv != 0 && *endv != 1)) {
    r.why = "site needs binding 'end' of 0 or 1";
    return;
  }
  int end = (int)*endv;
  PairShape shape = read_pair(d, p, m);
  if (!shape.ok) {
    r.why = shape.why;
    return;
  }
  if (!s.inverse) {
    // Peel: the end thread leaves the pair.  Its passage chirality is what
    // distinguishes the two rules of this family.
    if (shape.thread_count < 1) {
      r.why = "pair has no thread to peel";
      return;
    }
    int slot = end == 0 ? 0 : shape.thread_count - 1;
    if (shape.thread_signs[(size_t)slot] != rule.pair_sign) {
      r.why = "end passage sign does not match the rule";
      return;
    }
    r.ok = true;
    return;
  }
  // Extend: both circles slide across an adjacent strand, which then
  // threads the pair at the chosen end.
  NEED_DART(td, "thread");
  CompId tc = d.comp_of(td);
  if (tc == p || tc == m) {
    r.why = "pair cannot extend across its own circles";
    return;
  }
  Regions reg(d);
  DartId p_cap = kNoDart;
  if (shape.thread_count == 0) {
    p_cap = bare_pair_outer_cap(d, shape, reg);
    if (p_cap == kNoDart) {
      r.why = "pair has no outward face to extend from";
      return;
    }
  } else {
    CirclePortrait ptp = analyze_circle(d, p);
    CirclePortrait ptm = analyze_circle(d, m);
    if (!ptp.ok || !ptm.ok) {
      r.why = "pair circles lost their portraits";
      return;
    }
    p_cap = circle_cap_dart(d, ptp, end);
    DartId m0 = circle_cap_dart(d, ptm, 0);
    DartId m1 = circle_cap_dart(d, ptm, 1);
    if (p_cap == kNoDart ||
        (!reg.same(p_cap, m0) && !reg.same(p_cap, m1))) {
      r.why = "pair caps do not share a region at that end";
      return;
    }
  }
  if (!reg.same(d.alpha(td), p_cap)) {
    r.why = "thread does not border the pair's end region";
    return;
  }
  r.ok = true;
}

void verify_slide(const Diagram& d, const RewriteRule& rule, const MoveSite& s,
                  SiteCheck& r) {
  if (!s.inverse) {
    NEED_DART(sd, "strand");
    NEED_DART(cd, "arc");
    CompId circle = d.comp_of(cd);
    CompId mover = d.comp_of(sd);
    if (!link_comp(d, circle)) {
      r.why = "slide target must be a link circle";
      return;
    }
    if (!link_comp(d, mover) || mover == circle) {
      r.why = "mover must be a link strand off the circle";
      return;
    }
    if (unit_framing(d.comps[circle].framing) != rule.epsilon) {
      r.why = "circle framing does not match the rule";
      return;
    }
    CirclePortrait pt = analyze_circle(d, circle);
    if (!pt.ok) {
      r.why = pt.why;
      return;
    }
    bool wedge = false;
    for (const Passage& p : pt.passages) wedge = wedge || p.wedge;
    if (rule.wedge_required && !wedge) {
      r.why = "rule requires a wedge thread through the circle";
      return;
    }
    if (rule.wedge_forbidden && wedge) {
      r.why = "rule forbids wedge threads through the circle";
      return;
    }
    Regions reg(d);
    if (!reg.same(d.alpha(sd), cd)) {
      r.why = "strand does not border the circle's arc";
      return;
    }
    r.ok = true;
    return;
  }
  NEED_DART(x, "bigon");
  BigonSite b = read_bigon(d, x);
  if (!b.ok) {
    r.why = b.why;
    return;
  }
  CompId mover = rule.mover_over ? b.over_comp : b.under_comp;
  CompId circle = rule.mover_over ? b.under_comp : b.over_comp;
  if (!link_comp(d, mover) || !link_comp(d, circle) || mover == circle) {
    r.why = "bigon roles do not fit a slide retraction";
    return;
  }
  if (unit_framing(d.comps[circle].framing) != rule.epsilon) {
    r.why = "circle framing does not match the rule";
    return;
  }
  // The circle still carries the poke, so its portrait is unreadable; check
  // simplicity and the wedge census directly.
  for (DartId w : d.component_walk(circle)) {
    if (d.verts[d.vertex_of(w)].kind != VertexKind::Crossing) continue;
    if (other_strand_comp(d, w) == circle) {
      r.why = "circle not simple at site";
      return;
    }
  }
  bool wedge = meets_wedge(d, circle);
  if (rule.wedge_required && !wedge) {
    r.why = "rule requires a wedge thread through the circle";
    return;
  }
  if (rule.wedge_forbidden && wedge) {
    r.why = "rule forbids wedge threads through the circle";
    return;
  }
  r.ok = true;
}

void verify_rational_twist(const Diagram& d, const RewriteRule&,
                           const MoveSite& s, SiteCheck& r) {
  auto dirv = bound_value(s, "dir");
  if (!dirv || (*dirv != 1 && *dirv != -1)) {
    r.why = "site needs binding 'dir' of +1 or -1";
    return;
  }
  int dir = (int)*dirv;
  NEED_COMP(c, "circle");
  if (!link_comp(d, c)) {
    r.why = "rational twists act on link circles";
    return;
  }
  if (!s.inverse) {
    if (crossing_visits(d, c) != 0) {
      r.why = "circle must be crossing-free at site";
      return;
    }
    r.ok = true;
    return;
  }
  NEED_COMP(comp, "companion");
  if (comp == c) {
    r.why = "companion must be a second circle";
    return;
  }
  if (!link_comp(d, comp)) {
    r.why = "companion must be a link circle";
    return;
  }
  if (unit_framing(d.comps[comp].framing) != -dir) {
    r.why = "companion framing must be minus dir";
    return;
  }
  CirclePortrait pt = analyze_circle(d, comp);
  if (!pt.ok) {
    r.why = pt.why;
    return;
  }
  if (pt.passages.size() != 2 || pt.passages[0].comp != c ||
      pt.passages[1].comp != c) {
    r.why = "companion must ring the circle exactly twice";
    return;
  }
  if (pt.passages[0].sign + pt.passages[1].sign != 0) {
    r.why = "companion passages must cancel";
    return;
  }
  if (crossing_visits(d, comp) != 4) {
    r.why = "companion has stray crossings";
    return;
  }
  if (crossing_visits(d, c) != 4) {
    r.why = "circle has crossings beyond the companion";
    return;
  }
  for (DartId w : d.component_walk(c)) {
    if (d.verts[d.vertex_of(w)].kind != VertexKind::Crossing) continue;
    if (other_strand_comp(d, w) != comp) {
      r.why = "circle has crossings beyond the companion";
      return;
    }
  }
  r.ok = true;
}

void verify_infinity(const Diagram& d, const RewriteRule&, const MoveSite& s,
                     SiteCheck& r) {
  if (!s.inverse) {
    NEED_COMP(c, "circle");
    if (!link_comp(d, c)) {
      r.why = "only link components carry infinite framings";
      return;
    }
    if (!d.comps[c].framing.is_infinite()) {
      r.why = "framing is not infinite";
      return;
    }
    r.ok = true;
    return;
  }
  auto sg = bound_value(s, "sign");
  if (!sg || (*sg != 1 && *sg != -1)) {
    r.why = "site needs binding 'sign' of +1 or -1";
    return;
  }
  auto f = bound_value(s, "face");
  auto e = bound_value(s, "edge");
  if (f && e) {
    r.why = "site must bind 'face' or 'edge', not both";
    return;
  }
  if (f) {
    if (*f != kNoDart && !dart_in_range(d, *f)) {
      r.why = "binding 'face' is not a live dart or the ambient region";
      return;
    }
    r.ok = true;
    return;
  }
  if (e) {
    if (!dart_in_range(d, *e)) {
      r.why = "binding 'edge' is not a live dart";
      return;
    }
    r.ok = true;
    return;
  }
  r.why = "site is missing binding 'face' or 'edge'";
}

#undef NEED_DART
#undef NEED_COMP

}  // namespace

// --- shared site geometry ----------------------------------------------------

DartId circle_cap_dart(const Diagram& d, const CirclePortrait& pt, int end) {
  if (pt.passages.empty()) return kNoDart;
  DartId anchor = end == 0 ? pt.passages.front().chord
                           : d.alpha(pt.passages.back().chord);
  // The end disk face is bounded by that chord and by exactly one circle
  // arc (clean-disk corridors have no other material there).
  DartId w = anchor;
  do {
    if (d.comp_of(w) == pt.circle) return d.alpha(w);
    w = d.face_next(w);
  } while (w != anchor);
  return kNoDart;
}

PairShape read_pair(const Diagram& d, CompId plus, CompId minus) {
  PairShape s;
  s.plus = plus;
  s.minus = minus;
  if (!comp_in_range(d, plus) || !comp_in_range(d, minus)) {
    s.why = "pair components are not alive";
    return s;
  }
  if (plus == minus) {
    s.why = "pair circles must be distinct";
    return s;
  }
  if (!link_comp(d, plus) || !link_comp(d, minus)) {
    s.why = "pair circles must be link components";
    return s;
  }
  if (unit_framing(d.comps[plus].framing) != 1 ||
      unit_framing(d.comps[minus].framing) != -1) {
    s.why = "pair framings must be +1 and -1";
    return s;
  }

  int cplus = crossing_visits(d, plus);
  int cminus = crossing_visits(d, minus);

  if (cplus == 0 && cminus == 0) {
    // Thread-free pair: one bare circle hosted directly inside the other,
    // with nothing else in the annulus between them or in the inner disk.
    Regions reg(d);
    for (int flip = 0; flip < 2; ++flip) {
      CompId outer = flip ? minus : plus;
      CompId inner = flip ? plus : minus;
      auto it = d.nesting.find(piece_rep(d, d.comps[inner].seed));
      if (it == d.nesting.end() || it->second.host == kNoDart) continue;
      if (d.comp_of(it->second.host) != outer) continue;
      DartId annulus = reg.leader(it->second.host);
      std::vector<CompId> kids = region_children(d, annulus);
      if (kids.size() != 1 ||
          kids[0] != piece_rep(d, d.comps[inner].seed))
        continue;
      DartId disk = kNoDart;
      for (DartId w : d.component_walk(inner))
        for (DartId x : {w, d.alpha(x = w)})
          if (reg.leader(x) != annulus) disk = x;
      if (disk != kNoDart && !region_children(d, reg.leader(disk)).empty())
        continue;
      s.outer = outer;
      s.inner = inner;
      s.ok = true;
      return s;
    }
    s.why = "bare circles are not a nested pair";
    return s;
  }

  CirclePortrait pp = analyze_circle(d, plus);
  if (!pp.ok) {
    s.why = pp.why;
    return s;
  }
  CirclePortrait pm = analyze_circle(d, minus);
  if (!pm.ok) {
    s.why = pm.why;
    return s;
  }
  size_t k = pp.passages.size();
  if (pm.passages.size() != k) {
    s.why = "pair circles ring different thread counts";
    return s;
  }
  if ((int)(2 * k) != cplus || (int)(2 * k) != cminus) {
    s.why = "pair circles carry crossings beyond their threads";
    return s;
  }
  for (const Passage& p : pp.passages)
    if (p.comp == minus) {
      s.why = "pair circles cross each other";
      return s;
    }
  for (const Passage& p : pm.passages)
    if (p.comp == plus) {
      s.why = "pair circles cross each other";
      return s;
    }

  // Adjacency: each thread runs from one circle's crossing straight into
  // the other's, so the two passages of a thread are neighbors along it.
  std::vector<int> mslot(k, -1);
  std::vector<bool> used(k, false);
  auto passage_slot_at = [&](VertexId v, CompId thread) -> int {
    for (size_t j = 0; j < k; ++j)
      if (!used[j] && pm.passages[j].comp == thread &&
          (pm.passages[j].entry == v || pm.passages[j].exit == v))
        return (int)j;
    return -1;
  };
  for (size_t i = 0; i < k; ++i) {
    const Passage& p = pp.passages[i];
    int slot = -1;
    for (DartId out : {d.strand_next(p.chord), d.strand_next(d.alpha(p.chord))}) {
      if (out == kNoDart) continue;
      VertexId far = d.vertex_of(d.alpha(out));
      if (d.verts[far].kind != VertexKind::Crossing) continue;
      if (other_strand_comp(d, d.alpha(out)) != minus) continue;
      slot = passage_slot_at(far, p.comp);
      if (slot >= 0) break;
    }
    if (slot < 0) {
      s.why = "pair circles are not adjacent along every thread";
      return s;
    }
    used[(size_t)slot] = true;
    mslot[i] = slot;
    if (pm.passages[(size_t)slot].sign != p.sign) {
      s.why = "pair passages disagree in sign";
      return s;
    }
  }
  // Corridor orders must agree up to direction (parallel push-offs).
  if (k >= 2) {
    int step = mslot[1] - mslot[0];
    if (step != 1 && step != -1 && std::abs(step) != (int)k - 1) {
      s.why = "pair corridors are not parallel";
      return s;
    }
    int dir = (step == 1 || step == -(int)k + 1) ? 1 : -1;
    for (size_t i = 1; i < k; ++i) {
      int want = (mslot[0] + dir * (int)i % (int)k + (int)k) % (int)k;
      if (mslot[i] != want) {
        s.why = "pair corridors are not parallel";
        return s;
      }
    }
  }

  s.thread_count = (int)k;
  s.minus_slot = mslot;
  for (const Passage& p : pp.passages) {
    s.thread_comps.push_back(p.comp);
    s.thread_signs.push_back(p.sign);
    s.has_wedge = s.has_wedge || p.wedge;
  }
  s.ok = true;
  return s;
}

// --- public API ---------------------------------------------------------------

SiteCheck verify_site(const Diagram& d, const RuleSet& rs, const MoveSite& s) {
  SiteCheck r;
  const RewriteRule* rule = rs.find(s.rule);
  if (!rule) {
    r.why = "unknown rule '" + s.rule + "'";
    return r;
  }
  switch (rule->family) {
    case RuleFamily::Reidemeister1: verify_reid1(d, *rule, s, r); break;
    case RuleFamily::Reidemeister2: verify_reid2(d, *rule, s, r); break;
    case RuleFamily::Reidemeister3: verify_reid3(d, *rule, s, r); break;
    case RuleFamily::Blowdown: verify_blowdown(d, *rule, s, r); break;
    case RuleFamily::Pair: verify_pair(d, *rule, s, r); break;
    case RuleFamily::PairExtend: verify_pair_extend(d, *rule, s, r); break;
    case RuleFamily::Slide: verify_slide(d, *rule, s, r); break;
    case RuleFamily::RationalTwist: verify_rational_twist(d, *rule, s, r); break;
    case RuleFamily::Infinity: verify_infinity(d, *rule, s, r); break;
  }
  return r;
}

namespace {

// Enumeration helpers shared by several families.

std::vector<DartId> region_handles(const Diagram& d, Regions& reg) {
  std::set<DartId> leaders;
  leaders.insert(kNoDart);  // the ambient region always exists
  for (DartId x : d.alive_darts()) leaders.insert(reg.leader(x));
  return std::vector<DartId>(leaders.begin(), leaders.end());
}

// Darts grouped by the region on the far side of their edge: who can start
// or continue a corridor into that region.
std::map<DartId, std::vector<DartId>> darts_by_left_region(const Diagram& d,
                                                           Regions& reg) {
  std::map<DartId, std::vector<DartId>> by;
  for (DartId x : d.alive_darts()) by[reg.leader(x)].push_back(x);
  return by;
}

}  // namespace

std::vector<MoveSite> match_sites(const Diagram& d, const RuleSet& rs,
                                  const std::string& rule_id,
                                  const MatchBounds& bounds) {
  const RewriteRule* rule = rs.find(rule_id);
  if (!rule) throw std::runtime_error("unknown rule '" + rule_id + "'");
  std::vector<MoveSite> out;
  Regions reg(d);

  auto emit = [&](MoveSite s) {
    if (out.size() >= bounds.max_sites) return;
    s.rule = rule_id;
    if (verify_site(d, rs, s).ok) out.push_back(std::move(s));
  };
  auto fwd_site = [&]() {
    MoveSite s;
    s.inverse = false;
    return s;
  };
  auto inv_site = [&]() {
    MoveSite s;
    s.inverse = true;
    return s;
  };

  // Ordered corridors of up to `len` lanes; used by ring-insertion moves.
  auto emit_lane_chains = [&](size_t min_len, size_t max_len,
                              const std::function<void(std::vector<DartId>&)>&
                                  sink) {
    auto by_left = darts_by_left_region(d, reg);
    std::vector<DartId> chain;
    std::set<DartId> edges;
    std::function<void(void)> grow = [&]() {
      if (chain.size() >= min_len && !chain.empty()) sink(chain);
      if (chain.size() >= max_len || out.size() >= bounds.max_sites) return;
      DartId next_region =
          chain.empty() ? kNoDart : reg.leader(d.alpha(chain.back()));
      const std::vector<DartId>* cands;
      std::vector<DartId> all;
      if (chain.empty()) {
        all = d.alive_darts();
        cands = &all;
      } else {
        auto it = by_left.find(next_region);
        if (it == by_left.end()) return;
        cands = &it->second;
      }
      for (DartId x : *cands) {
        DartId ek = edge_key(d, x);
        if (edges.count(ek)) continue;
        edges.insert(ek);
        chain.push_back(x);
        grow();
        chain.pop_back();
        edges.erase(ek);
      }
    };
    grow();
  };

  switch (rule->family) {
    case RuleFamily::Reidemeister1: {
      if (bounds.forward) {
        for (DartId x : d.alive_darts())
          if (is_monogon(d, x)) {
            MoveSite s = fwd_site();
            s.bind["loop"] = x;
            emit(std::move(s));
          }
      }
      if (bounds.inverse) {
        for (DartId e : d.alive_darts()) {
          if (!link_comp(d, d.comp_of(e))) continue;
          for (int sg : {-1, +1}) {
            MoveSite s = inv_site();
            s.bind["edge"] = e;
            s.bind["sign"] = sg;
            emit(std::move(s));
          }
        }
      }
      break;
    }
    case RuleFamily::Reidemeister2: {
      if (bounds.forward) {
        for (const auto& f : faces(d))
          if (f.size() == 2) {
            MoveSite s = fwd_site();
            s.bind["bigon"] = f[0];
            emit(std::move(s));
          }
      }
      if (bounds.inverse) {
        auto by_left = darts_by_left_region(d, reg);
        for (DartId a : d.alive_darts()) {
          auto it = by_left.find(reg.leader(d.alpha(a)));
          if (it == by_left.end()) continue;
          for (DartId b : it->second) {
            if (edge_key(d, a) == edge_key(d, b)) continue;
            MoveSite s = inv_site();
            s.bind["over"] = a;
            s.bind["under"] = b;
            emit(std::move(s));
          }
        }
      }
      break;
    }
    case RuleFamily::Reidemeister3: {
      for (const auto& f : faces(d)) {
        if (f.size() != 3) continue;
        for (DartId corner : f) {
          if (bounds.forward) {
            MoveSite s = fwd_site();
            s.bind["triangle"] = f[0];
            s.bind["slider"] = corner;
            emit(std::move(s));
          }
          if (bounds.inverse) {
            MoveSite s = inv_site();
            s.bind["triangle"] = f[0];
            s.bind["slider"] = corner;
            emit(std::move(s));
          }
        }
      }
      break;
    }
    case RuleFamily::Blowdown: {
      if (bounds.forward) {
        for (CompId c : d.alive_comps()) {
          if (!link_comp(d, c) || unit_framing(d.comps[c].framing) == 0)
            continue;
          if (rule->threads == ThreadSpec::Many) {
            CirclePortrait pt = analyze_circle(d, c);
            if (pt.ok && (int)pt.passages.size() > bounds.max_threads)
              continue;
          }
          MoveSite s = fwd_site();
          s.bind["circle"] = c;
          emit(std::move(s));
        }
      }
      if (bounds.inverse) {
        // The sign is pinned by the rule when it has a definite epsilon and
        // left to the applier's default otherwise, so an insertion region
        // yields exactly one site.
        auto sign_bind = [&](MoveSite& s) {
          if (rule->epsilon != 0) s.bind["sign"] = rule->epsilon;
        };
        size_t lo = 0, hi = 0;
        switch (rule->threads) {
          case ThreadSpec::None: lo = hi = 0; break;
          case ThreadSpec::One: lo = hi = 1; break;
          case ThreadSpec::Two: lo = hi = 2; break;
          case ThreadSpec::Many: lo = 0; hi = (size_t)bounds.max_threads; break;
        }
        if (lo == 0) {
          for (DartId h : region_handles(d, reg)) {
            MoveSite s = inv_site();
            s.bind["face"] = h;
            sign_bind(s);
            emit(std::move(s));
          }
        }
        if (hi >= 1) {
          emit_lane_chains(std::max<size_t>(lo, 1), hi,
                           [&](std::vector<DartId>& chain) {
                             MoveSite s = inv_site();
                             s.lanes = chain;
                             sign_bind(s);
                             emit(std::move(s));
                           });
        }
      }
      break;
    }
    case RuleFamily::Pair: {
      if (bounds.forward) {
        for (CompId p : d.alive_comps()) {
          if (!link_comp(d, p) || unit_framing(d.comps[p].framing) != 1)
            continue;
          for (CompId m : d.alive_comps()) {
            if (!link_comp(d, m) || unit_framing(d.comps[m].framing) != -1)
              continue;
            if (rule->threads == ThreadSpec::Many) {
              PairShape shape = read_pair(d, p, m);
              if (shape.ok && shape.thread_count > bounds.max_threads)
                continue;
            }
            MoveSite s = fwd_site();
            s.bind["plus"] = p;
            s.bind["minus"] = m;
            emit(std::move(s));
          }
        }
      }
      if (bounds.inverse) {
        size_t lo = 0, hi = 0;
        switch (rule->threads) {
          case ThreadSpec::None: lo = hi = 0; break;
          case ThreadSpec::One: lo = hi = 1; break;
          case ThreadSpec::Two: lo = hi = 2; break;
          case ThreadSpec::Many: lo = 0; hi = (size_t)bounds.max_threads; break;
        }
        if (lo == 0) {
          for (DartId h : region_handles(d, reg)) {
            MoveSite s = inv_site();
            s.bind["face"] = h;
            emit(std::move(s));
          }
        }
        if (hi >= 1) {
          emit_lane_chains(std::max<size_t>(lo, 1), hi,
                           [&](std::vector<DartId>& chain) {
                             MoveSite s = inv_site();
                             s.lanes = chain;
                             emit(std::move(s));
                           });
        }
      }
      break;
    }
    case RuleFamily::PairExtend: {
      for (CompId p : d.alive_comps()) {
        if (!link_comp(d, p) || unit_framing(d.comps[p].framing) != 1) continue;
        for (CompId m : d.alive_comps()) {
          if (!link_comp(d, m) || unit_framing(d.comps[m].framing) != -1)
            continue;
          PairShape shape = read_pair(d, p, m);
          if (!shape.ok) continue;
          for (int end : {0, 1}) {
            if (bounds.forward) {
              MoveSite s = fwd_site();
              s.bind["plus"] = p;
              s.bind["minus"] = m;
              s.bind["end"] = end;
              emit(std::move(s));
            }
            if (bounds.inverse) {
              for (DartId td : d.alive_darts()) {
                CompId tc = d.comp_of(td);
                if (tc == p || tc == m) continue;
                MoveSite s = inv_site();
                s.bind["plus"] = p;
                s.bind["minus"] = m;
                s.bind["end"] = end;
                s.bind["thread"] = td;
                emit(std::move(s));
              }
            }
          }
        }
      }
      break;
    }
    case RuleFamily::Slide: {
      if (bounds.forward) {
        auto by_left = darts_by_left_region(d, reg);
        for (CompId c : d.alive_comps()) {
          if (!link_comp(d, c) ||
              unit_framing(d.comps[c].framing) != rule->epsilon)
            continue;
          for (DartId w : d.component_walk(c)) {
            for (DartId cd : {w, d.alpha(w)}) {
              auto it = by_left.find(reg.leader(cd));
              if (it == by_left.end()) continue;
              for (DartId a : it->second) {
                // a = alpha(strand dart): the strand borders the region on
                // the arc's side.
                DartId sd = d.alpha(a);
                if (d.comp_of(sd) == c) continue;
                MoveSite s = fwd_site();
                s.bind["strand"] = sd;
                s.bind["arc"] = cd;
                emit(std::move(s));
              }
            }
          }
        }
      }
      if (bounds.inverse) {
        for (const auto& f : faces(d))
          if (f.size() == 2) {
            MoveSite s = inv_site();
            s.bind["bigon"] = f[0];
            emit(std::move(s));
          }
      }
      break;
    }
    case RuleFamily::RationalTwist: {
      if (bounds.forward) {
        for (CompId c : d.alive_comps()) {
          if (!link_comp(d, c) || crossing_visits(d, c) != 0) continue;
          for (int dir : {-1, +1}) {
            MoveSite s = fwd_site();
            s.bind["circle"] = c;
            s.bind["dir"] = dir;
            emit(std::move(s));
          }
        }
      }
      if (bounds.inverse) {
        for (CompId comp : d.alive_comps()) {
          int u = link_comp(d, comp) ? unit_framing(d.comps[comp].framing) : 0;
          if (u == 0) continue;
          for (CompId c : d.alive_comps()) {
            if (c == comp || !link_comp(d, c)) continue;
            MoveSite s = inv_site();
            s.bind["circle"] = c;
            s.bind["companion"] = comp;
            s.bind["dir"] = -u;
            emit(std::move(s));
          }
        }
      }
      break;
    }
    case RuleFamily::Infinity: {
      if (bounds.forward) {
        for (CompId c : d.alive_comps()) {
          if (!link_comp(d, c) || !d.comps[c].framing.is_infinite()) continue;
          MoveSite s = fwd_site();
          s.bind["circle"] = c;
          emit(std::move(s));
        }
      }
      if (bounds.inverse) {
        for (int sg : {-1, +1}) {
          for (DartId h : region_handles(d, reg)) {
            MoveSite s = inv_site();
            s.bind["face"] = h;
            s.bind["sign"] = sg;
            emit(std::move(s));
          }
          for (DartId e : d.alive_darts()) {
            MoveSite s = inv_site();
            s.bind["edge"] = e;
            s.bind["sign"] = sg;
            emit(std::move(s));
          }
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace zq
