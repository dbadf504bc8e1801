#include "doctest.h"
#include "fixtures.hpp"
#include "zq/builder.hpp"
#include "zq/invariants.hpp"

using namespace zq;

namespace {

Matrix mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Matrix out(n, std::vector<BigInt>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

void check_snf(const Matrix& a, const std::vector<BigInt>& want) {
  SmithResult s = smith_normal_form(a);
  CHECK(s.diagonal == want);
  // The transforms reproduce the diagonal exactly.
  Matrix d = mul(mul(s.u, a), s.v);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = 0; j < d[i].size(); ++j)
      CHECK(d[i][j] == (i == j && i < want.size() ? want[i] : BigInt(0)));
}

}  // namespace

TEST_CASE("smith normal form on pinned matrices") {
  check_snf({{BigInt(0)}}, {BigInt(0)});
  check_snf({{BigInt(2), BigInt(4)}, {BigInt(6), BigInt(8)}},
            {BigInt(2), BigInt(4)});
  check_snf({{BigInt(0), BigInt(1)}, {BigInt(1), BigInt(0)}},
            {BigInt(1), BigInt(1)});
  check_snf({{BigInt(3)}}, {BigInt(3)});
  // Divisibility chain on a matrix that needs the coupling step.
  check_snf({{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}},
            {BigInt(1), BigInt(6)});
}

TEST_CASE("group names print and parse") {
  HomologyInvariant h;
  CHECK(h.str() == "0");
  h.free_rank = 1;
  CHECK(h.str() == "Z");
  h.free_rank = 2;
  h.factors = {BigInt(2), BigInt(4)};
  CHECK(h.str() == "Z^2 + Z/2 + Z/4");
  CHECK(parse_homology("Z^2 + Z/2 + Z/4") == h);
  CHECK(parse_homology(" Z^2+Z/4 + Z/2") == h);
  CHECK(parse_homology("0") == HomologyInvariant{});
  CHECK_THROWS(parse_homology("Q/Z"));
}

TEST_CASE("isolated circle framed 3/2 presents Z/3") {
  Diagram d;
  add_unknot(d, Rational(3, 2), kNoDart);
  Matrix rel = relation_matrix(d);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0] == std::vector<BigInt>{BigInt(3)});
  HomologyPair h = first_homology(d);
  CHECK(h.bounded.str() == "Z/3");
  CHECK(h.filled.str() == "Z/3");
}

TEST_CASE("infinity framing kills its meridian") {
  Diagram d;
  add_unknot(d, Rational::infinity(+1), kNoDart);
  CHECK(first_homology(d).bounded.str() == "0");
}

TEST_CASE("zero framing leaves a free meridian") {
  Diagram d;
  add_unknot(d, Rational::integer(0), kNoDart);
  CHECK(first_homology(d).bounded.str() == "Z");
}

TEST_CASE("bare wedge has free rank its genus") {
  Diagram d;
  add_wedge(d, 2, kNoDart);
  HomologyPair h = first_homology(d);
  CHECK(h.bounded.str() == "Z^2");
  CHECK(h.filled.str() == "0");
}

TEST_CASE("split +1 and -1 circles present the trivial group") {
  Diagram d;
  add_unknot(d, Rational::integer(1), kNoDart);
  add_unknot(d, Rational::integer(-1), kNoDart);
  CHECK(first_homology(d).bounded.str() == "0");
}

TEST_CASE("clasped circles follow the determinant of the linking matrix") {
  Diagram d = zqtest::make_hopf(Rational::integer(2), Rational::integer(3));
  LinkingData ld = linking_data(d);
  REQUIRE(ld.matrix.size() == 2);
  CHECK(ld.matrix[0][0] == 2);
  CHECK(ld.matrix[1][1] == 3);
  CHECK(ld.matrix[0][1] == -1);
  CHECK(ld.matrix[1][0] == -1);
  // |H1| = |det| = |2*3 - 1| = 5
  CHECK(first_homology(d).bounded.str() == "Z/5");
}

TEST_CASE("reversing a curve orientation changes nothing") {
  Diagram d = zqtest::make_hopf(Rational::integer(2), Rational::integer(3));
  HomologyPair before = first_homology(d);
  int64_t lk_before = linking_number(d, 0, 1);
  for (auto& dart : d.darts)
    if (dart.alive && dart.comp == 1) dart.forward = !dart.forward;
  refresh_seeds(d);
  CHECK(linking_number(d, 0, 1) == -lk_before);
  CHECK(first_homology(d) == before);
}

TEST_CASE("ring around a wedge circle relates the wedge meridian") {
  Diagram d;
  add_wedge(d, 1, kNoDart);
  // Ring around the petal's strand: cross the petal edge.
  CompId petal = 0;
  insert_bundle_ring(d, {d.comps[petal].seed}, Rational::integer(0), true);
  renormalize_dummies(d);
  reconcile_nesting(d);
  CHECK(validate(d).empty());
  HomologyPair h = first_homology(d);
  // Relation lk * x = 0 kills the wedge meridian; the ring meridian is free.
  CHECK(h.bounded.str() == "Z");
  CHECK(h.filled.str() == "Z");

  // An infinity-framed ring instead leaves the wedge generator untouched.
  Diagram e;
  add_wedge(e, 1, kNoDart);
  insert_bundle_ring(e, {e.comps[0].seed}, Rational::infinity(+1), true);
  renormalize_dummies(e);
  reconcile_nesting(e);
  CHECK(validate(e).empty());
  CHECK(first_homology(e).bounded.str() == "Z");
  Diagram bare;
  add_wedge(bare, 1, kNoDart);
  CHECK(first_homology(e).bounded == first_homology(bare).bounded);
}
