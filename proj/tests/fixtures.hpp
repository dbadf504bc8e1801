#pragma once

// Hand-built diagrams with frozen face/linking counts, used as oracles by
// several test files, plus a dart-relabeling helper for isomorphism
//-invariance checks.

#include <numeric>
#include <random>
#include <vector>

#include "zq/builder.hpp"
#include "zq/diagram.hpp"

namespace zqtest {

// Closed 2-strand braid with three identical crossings: the trefoil.
// Vertices v0..v2 top to bottom; darts 4i..4i+3 are the NE, NW, SW, SE
// quadrants of vi (counterclockwise).  Lanes run south between consecutive
// crossings; the closure arcs return each lane around its own side.
// 3 vertices, 6 edges, 5 faces.  `mirror` swaps every over strand.
inline zq::Diagram make_trefoil(bool mirror) {
  using namespace zq;
  Diagram d;
  Component c;
  c.kind = CompKind::Link;
  c.framing = Rational::integer(0);
  c.wedge = kNoComp;
  c.petal = -1;
  c.alive = true;
  c.seed = 0;
  d.comps.push_back(c);
  for (int i = 0; i < 3; ++i) {
    Vertex v;
    v.kind = VertexKind::Crossing;
    v.alive = true;
    v.wedge = kNoComp;
    v.dart = 4 * i;
    v.over = mirror ? 4 * i : 4 * i + 1;
    d.verts.push_back(v);
    for (int k = 0; k < 4; ++k) {
      Dart dart;
      dart.vertex = i;
      dart.comp = 0;
      dart.alive = true;
      dart.forward = false;
      dart.alpha = kNoDart;
      dart.sigma = 4 * i + (k + 1) % 4;
      d.darts.push_back(dart);
    }
  }
  auto link = [&d](DartId a, DartId b) {
    d.darts[a].alpha = b;
    d.darts[b].alpha = a;
  };
  link(2, 5);    // sw0 - nw1
  link(3, 4);    // se0 - ne1
  link(6, 9);    // sw1 - nw2
  link(7, 8);    // se1 - ne2
  link(1, 10);   // nw0 - sw2, closing the left lane
  link(0, 11);   // ne0 - se2, closing the right lane
  d.nesting[0] = Nesting{kNoDart, 0};
  restamp_component(d, 0);
  return d;
}

// Two circles clasped once: a ring around one edge of a crossing-free
// circle.  2 crossings, 4 edges, 4 faces.  With `thread_over_at_out` the
// linking number is -1, otherwise +1.
inline zq::Diagram make_hopf(const zq::Rational& f_thread,
                             const zq::Rational& f_ring,
                             bool thread_over_at_out = true) {
  using namespace zq;
  Diagram d;
  CompId a = add_unknot(d, f_thread, kNoDart);
  insert_bundle_ring(d, {d.comps[a].seed}, f_ring, thread_over_at_out);
  renormalize_dummies(d);
  reconcile_nesting(d);
  return d;
}

// Relabels every dart by a seeded random permutation; the canonical code
// must not notice.
inline zq::Diagram permute_darts(const zq::Diagram& d, unsigned seed) {
  using namespace zq;
  std::vector<DartId> perm(d.darts.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  Diagram out = d;
  for (size_t i = 0; i < d.darts.size(); ++i) {
    Dart dart = d.darts[i];
    if (dart.alpha != kNoDart) dart.alpha = perm[dart.alpha];
    if (dart.sigma != kNoDart) dart.sigma = perm[dart.sigma];
    out.darts[perm[i]] = dart;
  }
  for (auto& v : out.verts) {
    if (v.dart != kNoDart) v.dart = perm[v.dart];
    if (v.over != kNoDart) v.over = perm[v.over];
  }
  for (auto& c : out.comps)
    if (c.seed != kNoDart) c.seed = perm[c.seed];
  for (auto& [rep, place] : out.nesting) {
    if (place.host != kNoDart) place.host = perm[place.host];
    place.outer = perm[place.outer];
  }
  return out;
}

}  // namespace zqtest
