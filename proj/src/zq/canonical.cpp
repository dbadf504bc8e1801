#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "zq/builder.hpp"
#include "zq/diagram.hpp"

// Canonical form.  Each piece is encoded as the lexicographically smallest
// breadth-first labeling of its darts over all start darts, visiting
// neighbors in the order (edge partner, rotation successor).  The rotation
// is never reflected, so mirror diagrams keep distinct codes.  Curve
// traversal flags are deliberately left out: which way a circle is walked
// is bookkeeping, not part of the diagram.
//
// Pieces are then assembled into the incidence tree of pieces and
// complementary regions (each piece touches a region through exactly one of
// its faces), and the tree code is minimized over all choices of root
// region, which frees the code from the arbitrary rooting of the stored
// placement forest.

namespace zq {

namespace {

using Code = std::vector<int64_t>;

constexpr int64_t kUpMarker = -1;
constexpr int64_t kRegionOpen = -2;
constexpr int64_t kRegionClose = -3;
constexpr int64_t kFaceSection = -4;
constexpr int64_t kCompSection = -6;

struct TreeView {
  // region leader dart (kNoDart = ambient) -> (piece index, face rep) pairs
  std::map<DartId, std::vector<std::pair<size_t, DartId>>> incidence;
  std::vector<std::vector<DartId>> piece_darts;
  std::map<DartId, DartId> region_of_face;  // face rep -> region leader
};

// Piece code for one start dart: dart table, component table, then one
// entry per face (ordered by smallest dart label) that either marks the
// face toward the parent region or embeds the child region's subtree code.
Code piece_code(const Diagram& d, const TreeView& tv, size_t piece,
                DartId start, DartId parent_region, int depth);

Code region_code(const Diagram& d, const TreeView& tv, DartId region,
                 size_t parent_piece, bool has_parent, int depth) {
  // The recursion alternates region / piece nodes of the incidence tree, so
  // a healthy walk is at most one call per node.
  if (depth > static_cast<int>(tv.piece_darts.size() + tv.incidence.size()))
    throw std::logic_error("placement forest has a cycle");
  std::vector<Code> kids;
  for (const auto& [piece, face] : tv.incidence.at(region)) {
    if (has_parent && piece == parent_piece) continue;
    Code best;
    for (DartId s : tv.piece_darts[piece]) {
      Code c = piece_code(d, tv, piece, s, region, depth + 1);
      if (best.empty() || c < best) best = std::move(c);
    }
    kids.push_back(std::move(best));
  }
  std::sort(kids.begin(), kids.end());
  Code out{kRegionOpen};
  for (const Code& k : kids) out.insert(out.end(), k.begin(), k.end());
  out.push_back(kRegionClose);
  return out;
}

Code piece_code(const Diagram& d, const TreeView& tv, size_t piece,
                DartId start, DartId parent_region, int depth) {
  const std::vector<DartId>& darts = tv.piece_darts[piece];
  std::map<DartId, int64_t> label;
  std::vector<DartId> order;
  label[start] = 0;
  order.push_back(start);
  for (size_t i = 0; i < order.size(); ++i) {
    for (DartId nb : {d.alpha(order[i]), d.sigma(order[i])}) {
      if (!label.count(nb)) {
        label[nb] = static_cast<int64_t>(order.size());
        order.push_back(nb);
      }
    }
  }
  if (order.size() != darts.size())
    throw std::logic_error("piece traversal did not cover the piece");

  Code code;
  std::map<CompId, int64_t> comp_label;
  std::vector<CompId> comp_order;
  for (DartId x : order) {
    CompId c = d.comp_of(x);
    if (!comp_label.count(c)) {
      comp_label[c] = static_cast<int64_t>(comp_order.size());
      comp_order.push_back(c);
    }
    const Vertex& v = d.verts[d.vertex_of(x)];
    int64_t kind = static_cast<int64_t>(v.kind);
    int64_t over = 2;
    if (v.kind == VertexKind::Crossing) over = d.on_over_strand(x) ? 1 : 0;
    code.insert(code.end(),
                {label.at(d.alpha(x)), label.at(d.sigma(x)), kind, over,
                 comp_label.at(c)});
  }

  code.push_back(kCompSection);
  std::map<WedgeId, int64_t> wedge_label;
  for (CompId c : comp_order) {
    const Component& comp = d.comps[c];
    int64_t wl = -1;
    if (comp.kind == CompKind::Wedge) {
      if (!wedge_label.count(comp.wedge))
        wedge_label[comp.wedge] = static_cast<int64_t>(wedge_label.size());
      wl = wedge_label.at(comp.wedge);
    }
    code.insert(code.end(),
                {static_cast<int64_t>(comp.kind), comp.framing.p,
                 comp.framing.q, wl, static_cast<int64_t>(comp.petal)});
  }

  code.push_back(kFaceSection);
  std::map<int64_t, DartId> face_by_label;  // min dart label -> face rep
  std::set<DartId> seen;
  for (DartId x : order) {
    DartId rep = face_rep(d, x);
    if (seen.count(rep)) continue;
    seen.insert(rep);
    int64_t min_label = label.at(x);
    DartId y = rep;
    do {
      min_label = std::min(min_label, label.at(y));
      y = d.face_next(y);
    } while (y != rep);
    face_by_label[min_label] = rep;
  }
  for (const auto& [ml, rep] : face_by_label) {
    DartId region = tv.region_of_face.at(rep);
    if (region == parent_region) {
      code.push_back(kUpMarker);
    } else {
      Code sub = region_code(d, tv, region, piece, true, depth + 1);
      code.insert(code.end(), sub.begin(), sub.end());
    }
  }
  return code;
}

TreeView build_tree_view(const Diagram& d) {
  TreeView tv;
  tv.piece_darts = pieces(d);
  std::map<DartId, size_t> piece_of;
  for (size_t i = 0; i < tv.piece_darts.size(); ++i)
    for (DartId x : tv.piece_darts[i]) piece_of[x] = i;

  std::set<DartId> face_reps;
  for (size_t i = 0; i < tv.piece_darts.size(); ++i)
    for (DartId x : tv.piece_darts[i]) face_reps.insert(face_rep(d, x));
  for (DartId rep : face_reps) {
    DartId region = region_leader(d, rep);
    tv.region_of_face[rep] = region;
    tv.incidence[region].emplace_back(piece_of.at(rep), rep);
  }
  // The ambient region exists even when nothing is placed directly in it.
  tv.incidence.emplace(kNoDart, std::vector<std::pair<size_t, DartId>>{});
  return tv;
}

}  // namespace

std::string canonical_code(const Diagram& d) {
  TreeView tv = build_tree_view(d);
  Code best;
  bool first = true;
  for (const auto& [region, inc] : tv.incidence) {
    if (inc.empty()) continue;
    Code c = region_code(d, tv, region, 0, false, 0);
    if (first || c < best) {
      best = std::move(c);
      first = false;
    }
  }
  std::string out;
  for (size_t i = 0; i < best.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(best[i]);
  }
  return out;
}

bool isomorphic(const Diagram& a, const Diagram& b) {
  return canonical_code(a) == canonical_code(b);
}

uint64_t diagram_hash(const Diagram& d) {
  std::string code = canonical_code(d);
  uint64_t h = 1469598103934665603ull;
  for (char ch : code) {
    h ^= static_cast<uint64_t>(static_cast<unsigned char>(ch));
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace zq
