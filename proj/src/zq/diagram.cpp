#include "zq/diagram.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zq {

DartId Diagram::sigma_inv(DartId d) const {
  // Vertex degrees are tiny (2, 4, or 2g); walking the cycle is fine.
  DartId x = d;
  while (sigma(x) != d) x = sigma(x);
  return x;
}

int Diagram::degree(VertexId v) const {
  return static_cast<int>(vertex_darts(v).size());
}

std::vector<DartId> Diagram::vertex_darts(VertexId v) const {
  std::vector<DartId> out;
  DartId start = verts[v].dart;
  DartId x = start;
  do {
    out.push_back(x);
    x = sigma(x);
  } while (x != start);
  return out;
}

DartId Diagram::strand_next(DartId d) const {
  DartId back = alpha(d);  // at the far vertex, pointing back toward us
  VertexId v = darts[back].vertex;
  switch (verts[v].kind) {
    case VertexKind::Crossing:
      return sigma(sigma(back));
    case VertexKind::Dummy:
      return sigma(back);
    case VertexKind::Basepoint:
      return kNoDart;  // petal ends here
  }
  return kNoDart;
}

bool Diagram::on_over_strand(DartId d) const {
  const Vertex& v = verts[darts[d].vertex];
  return v.over == d || sigma(sigma(v.over)) == d;
}

std::vector<DartId> Diagram::alive_darts() const {
  std::vector<DartId> out;
  for (DartId i = 0; i < static_cast<DartId>(darts.size()); ++i)
    if (darts[i].alive) out.push_back(i);
  return out;
}

std::vector<CompId> Diagram::alive_comps() const {
  std::vector<CompId> out;
  for (CompId i = 0; i < static_cast<CompId>(comps.size()); ++i)
    if (comps[i].alive) out.push_back(i);
  return out;
}

int Diagram::crossing_count() const {
  int n = 0;
  for (const Vertex& v : verts)
    if (v.alive && v.kind == VertexKind::Crossing) ++n;
  return n;
}

std::vector<DartId> Diagram::component_walk(CompId c) const {
  std::vector<DartId> out;
  DartId start = comps[c].seed;
  if (start == kNoDart) return out;
  DartId d = start;
  do {
    out.push_back(d);
    d = strand_next(d);
  } while (d != kNoDart && d != start);
  return out;
}

std::vector<DartId> Diagram::component_edges(CompId c) const {
  return component_walk(c);  // one forward dart per edge of the curve
}

std::vector<std::vector<DartId>> faces(const Diagram& d) {
  std::vector<std::vector<DartId>> out;
  std::vector<char> seen(d.darts.size(), 0);
  for (DartId i = 0; i < static_cast<DartId>(d.darts.size()); ++i) {
    if (!d.darts[i].alive || seen[i]) continue;
    std::vector<DartId> orbit;
    DartId x = i;
    do {
      seen[x] = 1;
      orbit.push_back(x);
      x = d.face_next(x);
    } while (x != i);
    out.push_back(std::move(orbit));
  }
  return out;
}

DartId face_rep(const Diagram& d, DartId dart) {
  DartId best = dart;
  DartId x = dart;
  do {
    best = std::min(best, x);
    x = d.face_next(x);
  } while (x != dart);
  return best;
}

std::vector<std::vector<DartId>> pieces(const Diagram& d) {
  std::vector<std::vector<DartId>> out;
  std::vector<char> seen(d.darts.size(), 0);
  for (DartId i = 0; i < static_cast<DartId>(d.darts.size()); ++i) {
    if (!d.darts[i].alive || seen[i]) continue;
    std::vector<DartId> piece;
    std::vector<DartId> stack{i};
    seen[i] = 1;
    while (!stack.empty()) {
      DartId x = stack.back();
      stack.pop_back();
      piece.push_back(x);
      for (DartId y : {d.alpha(x), d.sigma(x)}) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::sort(piece.begin(), piece.end());
    out.push_back(std::move(piece));
  }
  return out;
}

CompId piece_rep(const Diagram& d, DartId dart) {
  CompId best = kNoComp;
  std::set<DartId> seen;
  std::vector<DartId> stack{dart};
  seen.insert(dart);
  while (!stack.empty()) {
    DartId x = stack.back();
    stack.pop_back();
    CompId c = d.comp_of(x);
    if (c != kNoComp && (best == kNoComp || c < best)) best = c;
    for (DartId y : {d.alpha(x), d.sigma(x)})
      if (seen.insert(y).second) stack.push_back(y);
  }
  return best;
}

int crossing_sign(const Diagram& d, VertexId v) {
  // Outgoing dart of each strand: the one flagged forward (pointing away
  // along the traversal direction).
  const Vertex& vert = d.verts[v];
  DartId o1 = vert.over, o2 = d.sigma(d.sigma(vert.over));
  DartId over_out = d.darts[o1].forward ? o1 : o2;
  DartId u1 = d.sigma(vert.over), u2 = d.sigma(d.sigma(u1));
  DartId under_out = d.darts[u1].forward ? u1 : u2;
  return d.sigma(over_out) == under_out ? +1 : -1;
}

std::int64_t linking_number(const Diagram& d, CompId a, CompId b) {
  std::int64_t sum = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(d.verts.size()); ++v) {
    const Vertex& vert = d.verts[v];
    if (!vert.alive || vert.kind != VertexKind::Crossing) continue;
    CompId co = d.comp_of(vert.over);
    CompId cu = d.comp_of(d.sigma(vert.over));
    if ((co == a && cu == b) || (co == b && cu == a))
      sum += crossing_sign(d, v);
  }
  // Inter-component crossings come in sign-balanced parity; the sum of
  // signs is even and lk is half of it.
  return sum / 2;
}

namespace {

void check(std::vector<std::string>& problems, bool ok, const std::string& msg) {
  if (!ok) problems.push_back(msg);
}

std::string tag(const char* what, long id) {
  std::ostringstream os;
  os << what << " " << id;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const Diagram& d) {
  std::vector<std::string> problems;
  const DartId nd = static_cast<DartId>(d.darts.size());

  // Dart-level structure.
  for (DartId i = 0; i < nd; ++i) {
    const Dart& dt = d.darts[i];
    if (!dt.alive) continue;
    if (dt.alpha < 0 || dt.alpha >= nd || !d.darts[dt.alpha].alive) {
      problems.push_back(tag("dart", i) + ": dead or missing alpha partner");
      continue;
    }
    check(problems, d.darts[dt.alpha].alpha == i, tag("dart", i) + ": alpha not involutive");
    check(problems, dt.alpha != i, tag("dart", i) + ": alpha fixed point");
    if (dt.sigma < 0 || dt.sigma >= nd || !d.darts[dt.sigma].alive) {
      problems.push_back(tag("dart", i) + ": dead or missing sigma image");
      continue;
    }
    check(problems, d.darts[dt.sigma].vertex == dt.vertex,
          tag("dart", i) + ": sigma leaves the vertex");
    check(problems, dt.vertex >= 0 && dt.vertex < static_cast<VertexId>(d.verts.size()) &&
                        d.verts[dt.vertex].alive,
          tag("dart", i) + ": dead vertex");
    check(problems, dt.comp != kNoComp && d.comps[dt.comp].alive,
          tag("dart", i) + ": dead component");
    check(problems, d.darts[dt.alpha].comp == dt.comp,
          tag("dart", i) + ": edge spans two components");
    check(problems, d.darts[dt.alpha].forward != dt.forward,
          tag("dart", i) + ": edge darts must point opposite ways");
  }
  if (!problems.empty()) return problems;  // navigation unsafe past this point

  // sigma must be a permutation (injective on alive darts).
  {
    std::vector<char> hit(nd, 0);
    for (DartId i = 0; i < nd; ++i) {
      if (!d.darts[i].alive) continue;
      DartId s = d.darts[i].sigma;
      check(problems, !hit[s], tag("dart", s) + ": two sigma preimages");
      hit[s] = 1;
    }
    if (!problems.empty()) return problems;  // sigma cycles unsafe to walk
  }

  // Vertex-level structure.
  for (VertexId v = 0; v < static_cast<VertexId>(d.verts.size()); ++v) {
    const Vertex& vert = d.verts[v];
    if (!vert.alive) continue;
    if (vert.dart == kNoDart || !d.darts[vert.dart].alive ||
        d.darts[vert.dart].vertex != v) {
      problems.push_back(tag("vertex", v) + ": bad entry dart");
      continue;
    }
    int deg = d.degree(v);
    switch (vert.kind) {
      case VertexKind::Crossing: {
        check(problems, deg == 4, tag("crossing", v) + ": degree must be 4");
        if (deg != 4) break;
        check(problems, vert.over != kNoDart && d.darts[vert.over].alive &&
                            d.darts[vert.over].vertex == v,
              tag("crossing", v) + ": over dart not at vertex");
        // Each strand is a sigma-opposite pair carrying one component
        // crossing transversally through the vertex.
        auto ds = d.vertex_darts(v);
        check(problems, d.comp_of(ds[0]) == d.comp_of(ds[2]) &&
                            d.comp_of(ds[1]) == d.comp_of(ds[3]),
              tag("crossing", v) + ": strand pairs carry mismatched components");
        // A strand has one dart pointing in and one out.
        check(problems, d.darts[ds[0]].forward != d.darts[ds[2]].forward,
              tag("crossing", v) + ": strand passes without direction");
        check(problems, d.darts[ds[1]].forward != d.darts[ds[3]].forward,
              tag("crossing", v) + ": strand passes without direction");
        // Wedge circles are rigid and mutually unlinked: every crossing
        // needs at least one link strand.
        bool link_here = d.comps[d.comp_of(ds[0])].kind == CompKind::Link ||
                         d.comps[d.comp_of(ds[1])].kind == CompKind::Link;
        check(problems, link_here, tag("crossing", v) + ": two wedge strands cross");
        break;
      }
      case VertexKind::Dummy: {
        check(problems, deg == 2, tag("dummy", v) + ": degree must be 2");
        auto ds = d.vertex_darts(v);
        check(problems, d.comp_of(ds[0]) == d.comp_of(ds[1]),
              tag("dummy", v) + ": dummy joins two components");
        if (d.comp_of(ds[0]) != kNoComp)
          check(problems, d.comps[d.comp_of(ds[0])].kind == CompKind::Link,
                tag("dummy", v) + ": dummies belong on link circles only");
        break;
      }
      case VertexKind::Basepoint: {
        check(problems, vert.wedge >= 0 &&
                            vert.wedge < static_cast<WedgeId>(d.wedges.size()) &&
                            d.wedges[vert.wedge].alive,
              tag("basepoint", v) + ": dead wedge");
        if (vert.wedge >= 0 && static_cast<std::size_t>(vert.wedge) < d.wedges.size()) {
          const WedgeInfo& w = d.wedges[vert.wedge];
          check(problems, deg == 2 * w.genus,
                tag("basepoint", v) + ": degree must be twice the petal count");
          check(problems, w.basepoint == v, tag("basepoint", v) + ": wedge points elsewhere");
        }
        break;
      }
    }
  }

  // Component-level structure.
  std::vector<int> comp_dart_count(d.comps.size(), 0);
  for (DartId i = 0; i < nd; ++i)
    if (d.darts[i].alive) ++comp_dart_count[d.darts[i].comp];
  for (CompId c = 0; c < static_cast<CompId>(d.comps.size()); ++c) {
    const Component& comp = d.comps[c];
    if (!comp.alive) continue;
    if (comp.seed == kNoDart || !d.darts[comp.seed].alive ||
        d.comp_of(comp.seed) != c || !d.darts[comp.seed].forward) {
      problems.push_back(tag("component", c) + ": bad seed dart");
      continue;
    }
    if (comp.kind == CompKind::Link) {
      check(problems, !(comp.framing.q == 0 && comp.framing.p != 1 && comp.framing.p != -1),
            tag("component", c) + ": malformed infinite framing");
    } else {
      check(problems, comp.wedge >= 0 && comp.wedge < static_cast<WedgeId>(d.wedges.size()) &&
                          d.wedges[comp.wedge].alive,
            tag("component", c) + ": dead wedge");
      check(problems, comp.petal >= 0, tag("component", c) + ": missing petal index");
    }
    // The forward walk must close up and visit every dart of the component
    // exactly once in each direction (walk counts forward darts; alpha
    // partners are the backward darts).
    auto walk = d.component_walk(c);
    bool closed = !walk.empty();
    if (closed) {
      DartId last = walk.back();
      closed = d.strand_next(last) == walk.front();
      if (comp.kind == CompKind::Wedge) {
        // Petals start and end at the basepoint; the walk ends with kNoDart.
        closed = d.strand_next(last) == kNoDart &&
                 d.darts[walk.front()].vertex == d.wedges[comp.wedge].basepoint;
      }
    }
    check(problems, closed, tag("component", c) + ": curve does not close");
    std::set<DartId> walk_set(walk.begin(), walk.end());
    check(problems, walk_set.size() == walk.size(),
          tag("component", c) + ": curve walk repeats a dart");
    check(problems, static_cast<int>(walk.size()) * 2 == comp_dart_count[c],
          tag("component", c) + ": walk misses darts of the component");
    for (DartId w : walk) {
      check(problems, d.darts[w].forward, tag("component", c) + ": walk hit backward dart");
      check(problems, d.comp_of(w) == c, tag("component", c) + ": walk left the component");
    }
    // Dummy policy: exactly two dummies on crossing-free link circles,
    // none anywhere else.
    int dummies = 0, crossings = 0;
    for (DartId w : walk) {
      VertexId v = d.darts[w].vertex;
      if (d.verts[v].kind == VertexKind::Dummy) ++dummies;
      if (d.verts[v].kind == VertexKind::Crossing) ++crossings;
    }
    if (comp.kind == CompKind::Link) {
      if (crossings == 0)
        check(problems, dummies == 2,
              tag("component", c) + ": crossing-free circle needs exactly two dummies");
      else
        check(problems, dummies == 0,
              tag("component", c) + ": dummies on a circle with crossings");
    } else {
      check(problems, dummies == 0, tag("component", c) + ": dummy on a wedge petal");
    }
  }

  // Wedge-level structure.
  for (WedgeId w = 0; w < static_cast<WedgeId>(d.wedges.size()); ++w) {
    const WedgeInfo& wi = d.wedges[w];
    if (!wi.alive) continue;
    check(problems, wi.genus >= 1, tag("wedge", w) + ": empty wedge");
    std::set<int> petals;
    for (CompId c : d.alive_comps())
      if (d.comps[c].kind == CompKind::Wedge && d.comps[c].wedge == w)
        petals.insert(d.comps[c].petal);
    check(problems, static_cast<int>(petals.size()) == wi.genus &&
                        (petals.empty() || (*petals.begin() == 0 &&
                                            *petals.rbegin() == wi.genus - 1)),
          tag("wedge", w) + ": petal indices must be 0..genus-1");
  }

  if (!problems.empty()) return problems;

  // Euler characteristic 2 per connected piece (sphere pieces).
  {
    auto ps = pieces(d);
    auto fs = faces(d);
    std::vector<long> vcount(ps.size(), 0), ecount(ps.size(), 0), fcount(ps.size(), 0);
    std::map<DartId, int> dart_piece;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (DartId dd : ps[i]) dart_piece[dd] = static_cast<int>(i);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::set<VertexId> vs;
      for (DartId dd : ps[i]) vs.insert(d.darts[dd].vertex);
      vcount[i] = static_cast<long>(vs.size());
      ecount[i] = static_cast<long>(ps[i].size()) / 2;
    }
    for (const auto& f : fs) ++fcount[dart_piece[f.front()]];
    for (std::size_t i = 0; i < ps.size(); ++i) {
      check(problems, vcount[i] - ecount[i] + fcount[i] == 2,
            tag("piece", static_cast<long>(i)) + ": not a sphere map (V-E+F != 2)");
    }

    // Nesting forest: one entry per piece, host faces in other pieces,
    // outer faces in this piece, and no containment cycles.
    std::map<CompId, int> rep_piece;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CompId rep = piece_rep(d, ps[i].front());
      check(problems, d.nesting.count(rep) == 1,
            tag("piece", static_cast<long>(i)) + ": missing placement entry");
      rep_piece[rep] = static_cast<int>(i);
    }
    check(problems, d.nesting.size() == ps.size(), "stale placement entries");
    for (const auto& [rep, nest] : d.nesting) {
      if (!rep_piece.count(rep)) continue;
      int pi = rep_piece[rep];
      if (nest.outer == kNoDart || !d.darts[nest.outer].alive ||
          dart_piece.find(nest.outer) == dart_piece.end() ||
          dart_piece[nest.outer] != pi) {
        problems.push_back(tag("piece", pi) + ": outer-face dart not in piece");
        continue;
      }
      if (nest.host != kNoDart) {
        if (!d.darts[nest.host].alive || dart_piece[nest.host] == pi) {
          problems.push_back(tag("piece", pi) + ": host dart dead or self-hosted");
          continue;
        }
      }
    }
    // Cycle check: follow host links piece-to-piece.
    for (const auto& [rep, nest] : d.nesting) {
      (void)nest;
      std::set<CompId> seen{rep};
      CompId cur = rep;
      while (true) {
        auto it = d.nesting.find(cur);
        if (it == d.nesting.end() || it->second.host == kNoDart) break;
        CompId up = piece_rep(d, it->second.host);
        if (seen.count(up)) {
          problems.push_back("containment cycle through piece of component " +
                             std::to_string(rep));
          break;
        }
        seen.insert(up);
        cur = up;
      }
    }
  }

  return problems;
}

void require_valid(const Diagram& d, const std::string& where) {
  auto problems = validate(d);
  if (!problems.empty()) {
    std::string msg = where + ": invalid diagram:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::logic_error(msg);
  }
}

}  // namespace zq
