#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zq/rational.hpp"

namespace zq {

// A diagram is a combinatorial map: darts (half-edges) with an edge
// involution `alpha` and a counterclockwise vertex rotation `sigma`.
// Vertices are crossings (degree 4, with a designated over-strand),
// dummy vertices (degree 2, placed only to keep crossing-free circles
// representable), and wedge basepoints (degree 2g, rigid rotation).
//
// Orientation conventions, pinned by tests:
//   - sigma(d) is the next dart counterclockwise around d's vertex;
//   - a dart points away from its vertex along its edge;
//   - face_next(d) = sigma(alpha(d)) walks the face on the LEFT of d,
//     so faces are the orbits of that walk and V - E + F = 2 holds per
//     connected piece;
//   - at a crossing the two strands are the sigma-opposite dart pairs,
//     and a strand entering along a dart x (x pointing back the way we
//     came) continues through sigma(sigma(x)).

using DartId = std::int32_t;
using VertexId = std::int32_t;
using CompId = std::int32_t;
using WedgeId = std::int32_t;

constexpr DartId kNoDart = -1;
constexpr VertexId kNoVertex = -1;
constexpr CompId kNoComp = -1;

enum class VertexKind : std::uint8_t { Crossing, Dummy, Basepoint };
enum class CompKind : std::uint8_t { Link, Wedge };

struct Dart {
  DartId alpha = kNoDart;
  DartId sigma = kNoDart;
  VertexId vertex = kNoVertex;
  CompId comp = kNoComp;
  bool forward = false;  // points with the component's traversal direction
  bool alive = false;
};

struct Vertex {
  VertexKind kind = VertexKind::Dummy;
  DartId dart = kNoDart;   // some dart at this vertex
  DartId over = kNoDart;   // crossings: a dart lying on the over strand
  WedgeId wedge = -1;      // basepoints: owning wedge
  bool alive = false;
};

struct Component {
  CompKind kind = CompKind::Link;
  Rational framing;      // link circles only
  WedgeId wedge = -1;    // wedge circles: owning wedge
  std::int32_t petal = -1;  // wedge circles: which petal of the wedge
  DartId seed = kNoDart;    // some forward dart on the curve
  bool alive = false;
};

struct WedgeInfo {
  VertexId basepoint = kNoVertex;
  std::int32_t genus = 0;  // number of petals
  bool alive = false;
};

// Placement of one connected piece in the sphere arrangement.  `host` is a
// dart of another piece naming the face the piece floats in (kNoDart means
// the ambient region), `outer` is a dart of this piece naming which of its
// own faces meets that region.  Keyed by the piece's smallest alive
// component id.  The rooting at the ambient region is a representation
// choice; canonical codes quotient it away.
struct Nesting {
  DartId host = kNoDart;
  DartId outer = kNoDart;
};

struct Diagram {
  std::vector<Dart> darts;
  std::vector<Vertex> verts;
  std::vector<Component> comps;
  std::vector<WedgeInfo> wedges;
  std::map<CompId, Nesting> nesting;

  DartId alpha(DartId d) const { return darts[d].alpha; }
  DartId sigma(DartId d) const { return darts[d].sigma; }
  DartId sigma_inv(DartId d) const;
  DartId face_next(DartId d) const { return sigma(alpha(d)); }
  VertexId vertex_of(DartId d) const { return darts[d].vertex; }
  CompId comp_of(DartId d) const { return darts[d].comp; }

  int degree(VertexId v) const;
  std::vector<DartId> vertex_darts(VertexId v) const;  // sigma cycle from verts[v].dart

  // Strand continuation: d points along the travel direction; returns the
  // dart continuing the strand past the far endpoint of d's edge, or
  // kNoDart when the strand ends (wedge basepoint).
  DartId strand_next(DartId d) const;

  // True if d lies on the over strand of its (crossing) vertex.
  bool on_over_strand(DartId d) const;

  std::vector<DartId> alive_darts() const;
  std::vector<CompId> alive_comps() const;
  int crossing_count() const;

  // The darts of a component's curve in traversal order (all pointing
  // forward along the curve, starting at the seed).
  std::vector<DartId> component_walk(CompId c) const;

  // The edges (as one chosen dart each, forward preferred) of a component.
  std::vector<DartId> component_edges(CompId c) const;
};

// --- global structure -------------------------------------------------

// Face orbits of the left-face walk, each a cycle of darts.
std::vector<std::vector<DartId>> faces(const Diagram& d);

// Representative dart of d's face orbit: the minimum dart id in the orbit.
DartId face_rep(const Diagram& d, DartId dart);

// Partition of alive darts into connected pieces (orbits of <alpha, sigma>).
// Returns for each piece the sorted list of its darts.
std::vector<std::vector<DartId>> pieces(const Diagram& d);

// Smallest alive component id in the piece containing dart `dart`.
CompId piece_rep(const Diagram& d, DartId dart);

// Crossing sign under the right-hand convention: +1 when the over strand's
// outgoing dart, rotated one step counterclockwise, is the under strand's
// outgoing dart.  Depends on the stored traversal directions.
int crossing_sign(const Diagram& d, VertexId v);

// Sum of signs of crossings between the two (distinct) components, halved.
std::int64_t linking_number(const Diagram& d, CompId a, CompId b);

// Structural checks.  Returns human-readable problems; empty means valid.
std::vector<std::string> validate(const Diagram& d);

// Convenience: throws std::logic_error listing problems if invalid.
void require_valid(const Diagram& d, const std::string& where);

// --- canonical form (canonical.cpp) ------------------------------------

// Canonical code of the whole diagram: per-piece minimal breadth-first
// codes (over all starting darts, rotation direction fixed; traversal
// directions of curves are not part of the code) combined with the
// canonicalized region tree of the sphere arrangement.
std::string canonical_code(const Diagram& d);

bool isomorphic(const Diagram& a, const Diagram& b);

std::uint64_t diagram_hash(const Diagram& d);

}  // namespace zq
