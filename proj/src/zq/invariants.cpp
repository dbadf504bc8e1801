#include "zq/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace zq {

namespace {

BigInt abs_val(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

Matrix identity(size_t n) {
  Matrix m(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithResult smith_normal_form(Matrix a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  SmithResult res;
  res.u = identity(rows);
  res.v = identity(cols);

  auto row_sub = [&](size_t dst, size_t src, const BigInt& q) {
    for (size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
    for (size_t j = 0; j < rows; ++j) res.u[dst][j] -= q * res.u[src][j];
  };
  auto col_sub = [&](size_t dst, size_t src, const BigInt& q) {
    for (size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (size_t i = 0; i < cols; ++i) res.v[i][dst] -= q * res.v[i][src];
  };
  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(res.u[i], res.u[j]);
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < cols; ++r) std::swap(res.v[r][i], res.v[r][j]);
  };

  size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero pivot in the trailing block.
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < rows; ++i) {
      for (size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (!found || abs_val(a[i][j]) < abs_val(a[pi][pj])) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) break;
    if (pi != t) row_swap(t, pi);
    if (pj != t) col_swap(t, pj);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        row_sub(i, t, q);
        if (a[i][t] != 0) {
          row_swap(t, i);  // remainder is strictly smaller; Euclid descends
          settled = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        col_sub(j, t, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          settled = false;
        }
      }
      if (!settled) continue;
      // Enforce divisibility into the trailing block before moving on.
      for (size_t i = t + 1; i < rows && settled; ++i) {
        for (size_t j = t + 1; j < cols && settled; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            row_sub(t, i, BigInt(-1));  // pulls row i into row t
            settled = false;
          }
        }
      }
    }
    ++t;
  }

  for (size_t i = 0; i < std::min(rows, cols); ++i) {
    if (a[i][i] < 0) {
      for (size_t j = 0; j < cols; ++j) a[i][j] = -a[i][j];
      for (size_t j = 0; j < rows; ++j) res.u[i][j] = -res.u[i][j];
    }
    res.diagonal.push_back(a[i][i]);
  }
  return res;
}

std::string HomologyInvariant::str() const {
  if (free_rank == 0 && factors.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank == 1) {
    out << "Z";
    first = false;
  } else if (free_rank > 1) {
    out << "Z^" << free_rank;
    first = false;
  }
  for (const BigInt& f : factors) {
    if (!first) out << " + ";
    out << "Z/" << f;
    first = false;
  }
  return out.str();
}

HomologyInvariant parse_homology(const std::string& text) {
  HomologyInvariant h;
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "0" || s.empty()) return h;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, '+')) {
    if (part == "Z") {
      h.free_rank += 1;
    } else if (part.rfind("Z^", 0) == 0) {
      h.free_rank += std::stoi(part.substr(2));
    } else if (part.rfind("Z/", 0) == 0) {
      h.factors.push_back(BigInt(part.substr(2)));
    } else {
      throw std::runtime_error("unreadable group expression: " + part);
    }
  }
  std::sort(h.factors.begin(), h.factors.end());
  return h;
}

HomologyInvariant cokernel(Matrix rel, size_t generators) {
  HomologyInvariant h;
  if (generators == 0) return h;
  if (rel.empty()) {
    h.free_rank = static_cast<int>(generators);
    return h;
  }
  SmithResult s = smith_normal_form(std::move(rel));
  int rank = 0;
  for (const BigInt& dgn : s.diagonal) {
    if (dgn == 0) continue;
    ++rank;
    if (dgn > 1) h.factors.push_back(dgn);
  }
  h.free_rank = static_cast<int>(generators) - rank;
  std::sort(h.factors.begin(), h.factors.end());
  return h;
}

LinkingData linking_data(const Diagram& d) {
  LinkingData out;
  out.comps = d.alive_comps();
  size_t n = out.comps.size();
  out.matrix.assign(n, std::vector<BigInt>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    const Component& ci = d.comps[out.comps[i]];
    if (ci.kind == CompKind::Link && !ci.framing.is_infinite())
      out.matrix[i][i] = ci.framing.p / ci.framing.q;
    for (size_t j = i + 1; j < n; ++j) {
      BigInt lk = linking_number(d, out.comps[i], out.comps[j]);
      out.matrix[i][j] = lk;
      out.matrix[j][i] = lk;
    }
  }
  return out;
}

Matrix relation_matrix(const Diagram& d) {
  std::vector<CompId> comps = d.alive_comps();
  Matrix rel;
  for (size_t i = 0; i < comps.size(); ++i) {
    const Component& ci = d.comps[comps[i]];
    if (ci.kind != CompKind::Link) continue;
    std::vector<BigInt> row(comps.size(), 0);
    row[i] = ci.framing.p;
    for (size_t j = 0; j < comps.size(); ++j) {
      if (j == i) continue;
      row[j] = BigInt(ci.framing.q) * linking_number(d, comps[i], comps[j]);
    }
    rel.push_back(std::move(row));
  }
  return rel;
}

HomologyPair first_homology(const Diagram& d) {
  std::vector<CompId> comps = d.alive_comps();
  Matrix rel = relation_matrix(d);
  HomologyPair out;
  out.bounded = cokernel(rel, comps.size());

  // Filling the boundary kills the wedge meridians: drop their columns.
  std::vector<size_t> keep;
  for (size_t j = 0; j < comps.size(); ++j)
    if (d.comps[comps[j]].kind == CompKind::Link) keep.push_back(j);
  Matrix filled;
  for (const auto& row : rel) {
    std::vector<BigInt> r;
    for (size_t j : keep) r.push_back(row[j]);
    filled.push_back(std::move(r));
  }
  out.filled = cokernel(filled, keep.size());
  return out;
}

}  // namespace zq
