#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "zq/diagram.hpp"

namespace zq {

using BigInt = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<BigInt>>;

// Smith normal form with its unimodular transforms: u * a * v = diag.
// Diagonal entries are nonnegative and each divides the next; arithmetic is
// exact at any size.  Pivots are chosen by smallest nonzero magnitude,
// which keeps coefficients tame on the small matrices diagrams produce.
struct SmithResult {
  std::vector<BigInt> diagonal;  // length min(rows, cols)
  Matrix u, v;
};
SmithResult smith_normal_form(Matrix a);

// Isomorphism class of a finitely generated abelian group: invariant
// factors (each > 1, successive divisibility) plus free rank.
struct HomologyInvariant {
  std::vector<BigInt> factors;
  int free_rank = 0;
  bool operator==(const HomologyInvariant& o) const = default;
  std::string str() const;  // e.g. "0", "Z/5", "Z^2 + Z/2 + Z/4"
};
HomologyInvariant parse_homology(const std::string& text);

// Cokernel of an m x n relation matrix acting on n generators.
HomologyInvariant cokernel(Matrix rel, size_t generators);

// Symmetric linking matrix over all alive components in id order.
// Off-diagonal entries are linking numbers; diagonal entries carry the
// integral part of the framing for link components (display/cross-check
// data, not used by the homology computation).
struct LinkingData {
  std::vector<CompId> comps;
  Matrix matrix;
};
LinkingData linking_data(const Diagram& d);

// One generator per component meridian (link circles and wedge circles
// alike), one relation per link component i with framing p/q:
//   p*m_i + q*(sum over other components of lk(i,j)*m_j) = 0.
// Columns follow alive component ids ascending; rows follow link component
// ids ascending.
Matrix relation_matrix(const Diagram& d);

// First homology of the presented manifold, in two flavors: the
// boundary-respecting group over all meridians, and the quotient by wedge
// meridians (wedge columns deleted), which is the homology after filling
// the boundary handles.
struct HomologyPair {
  HomologyInvariant bounded;
  HomologyInvariant filled;
  bool operator==(const HomologyPair& o) const = default;
};
HomologyPair first_homology(const Diagram& d);

}  // namespace zq
