#include "qderham/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdr {

ZMat zmat_identity(size_t n) {
  ZMat a(n, ZVec(n, mpz_class(0)));
  for (size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size(), k = b.size(), m = b[0].size();
  ZMat r(n, ZVec(m, mpz_class(0)));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("zmat_mul: shape mismatch");
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  }
  return r;
}

ZVec zmat_apply(const ZMat& a, const ZVec& x) {
  ZVec r(a.size(), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != x.size()) throw std::invalid_argument("zmat_apply: shape mismatch");
    for (size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) r[i] += a[i][j] * x[j];
  }
  return r;
}

ZVec zvec_scaled(const mpz_class& c, const ZVec& v) {
  ZVec r(v);
  for (auto& x : r) x *= c;
  return r;
}

namespace {

bool row_is_zero(const ZVec& r) {
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

}  // namespace

ZMat row_hnf(ZMat a) {
  if (a.empty()) return a;
  size_t rows = a.size(), cols = a[0].size();
  size_t pr = 0;  // next pivot row
  for (size_t col = 0; col < cols && pr < rows; ++col) {
    // eliminate below pr in this column using gcd steps
    for (size_t i = pr + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      if (a[pr][col] == 0) {
        std::swap(a[pr], a[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 a[pr][col].get_mpz_t(), a[i][col].get_mpz_t());
      mpz_class u = a[pr][col] / g, v = a[i][col] / g;
      for (size_t j = col; j < cols; ++j) {
        mpz_class x = a[pr][j], y = a[i][j];
        a[pr][j] = s * x + t * y;
        a[i][j] = u * y - v * x;
      }
    }
    if (a[pr][col] == 0) continue;
    if (a[pr][col] < 0)
      for (size_t j = col; j < cols; ++j) a[pr][j] = -a[pr][j];
    // reduce entries above the pivot
    for (size_t i = 0; i < pr; ++i) {
      if (a[i][col] == 0) continue;
      mpz_class qq;
      mpz_fdiv_q(qq.get_mpz_t(), a[i][col].get_mpz_t(), a[pr][col].get_mpz_t());
      if (qq == 0) continue;
      for (size_t j = col; j < cols; ++j) a[i][j] -= qq * a[pr][j];
    }
    ++pr;
  }
  a.resize(pr);
  a.erase(std::remove_if(a.begin(), a.end(), row_is_zero), a.end());
  return a;
}

ZMat row_hnf_with_modulus(ZMat a, const mpz_class& M, size_t ncols) {
  if (M <= 0) throw std::invalid_argument("row_hnf_with_modulus: modulus must be positive");
  if (ncols == 0) return {};
  for (auto& r : a)
    for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
  a.erase(std::remove_if(a.begin(), a.end(), row_is_zero), a.end());
  for (size_t j = 0; j < ncols; ++j) {
    ZVec r(ncols, 0);
    r[j] = M;
    a.push_back(std::move(r));
  }
  size_t rows = a.size();
  size_t pr = 0;
  for (size_t col = 0; col < ncols && pr < rows; ++col) {
    for (size_t i = pr + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      if (a[pr][col] == 0) {
        std::swap(a[pr], a[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 a[pr][col].get_mpz_t(), a[i][col].get_mpz_t());
      mpz_class u = a[pr][col] / g, v = a[i][col] / g;
      a[pr][col] = g;
      a[i][col] = 0;
      // Columns past col may be reduced mod M: the still untouched M*e_j
      // generator rows absorb the difference, so the row span is unchanged.
      for (size_t j = col + 1; j < ncols; ++j) {
        mpz_class x = a[pr][j], y = a[i][j];
        mpz_class nx = s * x + t * y;
        mpz_class ny = u * y - v * x;
        mpz_fdiv_r(a[pr][j].get_mpz_t(), nx.get_mpz_t(), M.get_mpz_t());
        mpz_fdiv_r(a[i][j].get_mpz_t(), ny.get_mpz_t(), M.get_mpz_t());
      }
    }
    if (a[pr][col] == 0) continue;
    for (size_t i = 0; i < pr; ++i) {
      if (a[i][col] == 0) continue;
      mpz_class qq;
      mpz_fdiv_q(qq.get_mpz_t(), a[i][col].get_mpz_t(), a[pr][col].get_mpz_t());
      if (qq == 0) continue;
      for (size_t j = col; j < ncols; ++j) a[i][j] -= qq * a[pr][j];
    }
    ++pr;
  }
  a.resize(pr);
  a.erase(std::remove_if(a.begin(), a.end(), row_is_zero), a.end());
  return a;
}

bool hnf_contains(const ZMat& h, ZVec v) {
  size_t row = 0;
  size_t cols = v.size();
  for (size_t col = 0; col < cols; ++col) {
    if (v[col] == 0) continue;
    // advance to the row whose pivot is at col, if any
    while (row < h.size()) {
      size_t pivot = 0;
      while (pivot < cols && h[row][pivot] == 0) ++pivot;
      if (pivot >= col) break;
      ++row;
    }
    if (row >= h.size()) return false;
    size_t pivot = 0;
    while (pivot < cols && h[row][pivot] == 0) ++pivot;
    if (pivot != col) return false;
    if (!mpz_divisible_p(v[col].get_mpz_t(), h[row][pivot].get_mpz_t())) return false;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), v[col].get_mpz_t(), h[row][pivot].get_mpz_t());
    for (size_t j = col; j < cols; ++j) v[j] -= c * h[row][j];
  }
  return true;
}

bool lattice_equal(const ZMat& a, const ZMat& b) {
  return row_hnf(a) == row_hnf(b);
}

ZMat z_kernel(const ZMat& a, size_t ncols) {
  // rows of [a^T | I], reduce, keep rows with zero a^T-part
  size_t m = a.size();
  ZMat aug(ncols, ZVec(m + ncols, mpz_class(0)));
  for (size_t i = 0; i < ncols; ++i) {
    for (size_t r = 0; r < m; ++r) aug[i][r] = a[r][i];
    aug[i][m + i] = 1;
  }
  ZMat h = row_hnf(std::move(aug));
  ZMat ker;
  for (const auto& row : h) {
    bool zero_head = true;
    for (size_t j = 0; j < m; ++j)
      if (row[j] != 0) {
        zero_head = false;
        break;
      }
    if (!zero_head) continue;
    ker.emplace_back(row.begin() + m, row.end());
  }
  return ker;
}

std::optional<ZVec> solve_left(const ZMat& a, const ZVec& b) {
  if (a.empty()) {
    if (row_is_zero(b)) return ZVec{};
    return std::nullopt;
  }
  size_t m = a.size(), cols = a[0].size();
  if (b.size() != cols) throw std::invalid_argument("solve_left: shape mismatch");
  ZMat aug(m, ZVec(cols + m, mpz_class(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols + i] = 1;
  }
  ZMat h = row_hnf(std::move(aug));
  ZVec v(b);
  ZVec coeff(m, mpz_class(0));
  size_t row = 0;
  for (size_t col = 0; col < cols; ++col) {
    if (v[col] == 0) continue;
    while (row < h.size()) {
      size_t pivot = 0;
      while (pivot < cols && h[row][pivot] == 0) ++pivot;
      if (pivot >= col) break;
      ++row;
    }
    if (row >= h.size()) return std::nullopt;
    size_t pivot = 0;
    while (pivot < cols && h[row][pivot] == 0) ++pivot;
    if (pivot != col) return std::nullopt;
    if (!mpz_divisible_p(v[col].get_mpz_t(), h[row][pivot].get_mpz_t()))
      return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), v[col].get_mpz_t(), h[row][pivot].get_mpz_t());
    for (size_t j = col; j < cols; ++j) v[j] -= c * h[row][j];
    for (size_t j = 0; j < m; ++j) coeff[j] += c * h[row][cols + j];
  }
  if (!row_is_zero(v)) return std::nullopt;
  return coeff;
}

std::vector<mpz_class> snf_invariants(ZMat a) {
  a = row_hnf(std::move(a));
  if (a.empty()) return {};
  size_t rows = a.size(), cols = a[0].size();
  std::vector<mpz_class> inv;
  size_t top = 0, left = 0;
  while (top < rows && left < cols) {
    // find a nonzero entry in the working block
    size_t pi = top, pj = left;
    bool found = false;
    for (size_t i = top; i < rows && !found; ++i)
      for (size_t j = left; j < cols && !found; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[top], a[pi]);
    for (size_t i = top; i < rows; ++i) std::swap(a[i][left], a[i][pj]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column
      for (size_t i = top + 1; i < rows; ++i) {
        if (a[i][left] == 0) continue;
        if (!mpz_divisible_p(a[i][left].get_mpz_t(), a[top][left].get_mpz_t())) {
          mpz_class g, s, t;
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                     a[top][left].get_mpz_t(), a[i][left].get_mpz_t());
          mpz_class u = a[top][left] / g, v = a[i][left] / g;
          for (size_t j = left; j < cols; ++j) {
            mpz_class x = a[top][j], y = a[i][j];
            a[top][j] = s * x + t * y;
            a[i][j] = u * y - v * x;
          }
        } else {
          mpz_class c = a[i][left] / a[top][left];
          for (size_t j = left; j < cols; ++j) a[i][j] -= c * a[top][j];
        }
      }
      // clear row
      for (size_t j = left + 1; j < cols; ++j) {
        if (a[top][j] == 0) continue;
        if (!mpz_divisible_p(a[top][j].get_mpz_t(), a[top][left].get_mpz_t())) {
          mpz_class g, s, t;
          mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                     a[top][left].get_mpz_t(), a[top][j].get_mpz_t());
          mpz_class u = a[top][left] / g, v = a[top][j] / g;
          for (size_t i = top; i < rows; ++i) {
            mpz_class x = a[i][left], y = a[i][j];
            a[i][left] = s * x + t * y;
            a[i][j] = u * y - v * x;
          }
          dirty = true;  // column may be dirty again
        } else {
          mpz_class c = a[top][j] / a[top][left];
          for (size_t i = top; i < rows; ++i) a[i][j] -= c * a[i][left];
        }
      }
      if (!dirty) {
        // check column is still clear
        for (size_t i = top + 1; i < rows; ++i)
          if (a[i][left] != 0) {
            dirty = true;
            break;
          }
      }
    }
    // ensure divisibility by the rest of the block
    bool restart = false;
    for (size_t i = top + 1; i < rows && !restart; ++i)
      for (size_t j = left + 1; j < cols && !restart; ++j)
        if (a[i][j] != 0 &&
            !mpz_divisible_p(a[i][j].get_mpz_t(), a[top][left].get_mpz_t())) {
          // add row i to row top and redo this pivot
          for (size_t k = left; k < cols; ++k) a[top][k] += a[i][k];
          restart = true;
        }
    if (restart) continue;
    mpz_class d = a[top][left];
    if (d < 0) d = -d;
    inv.push_back(d);
    ++top;
    ++left;
  }
  return inv;
}

std::vector<mpz_class> quotient_invariants(const ZMat& a, size_t n) {
  std::vector<mpz_class> inv = snf_invariants(a);
  std::vector<mpz_class> out;
  for (const auto& d : inv)
    if (d != 1) out.push_back(d);
  size_t rank = inv.size();
  for (size_t i = rank; i < n; ++i) out.emplace_back(0);
  return out;
}

std::vector<mpz_class> subquotient_invariants(const ZMat& big, const ZMat& sub) {
  ZMat h = row_hnf(big);
  // express each generator of sub in the basis h
  ZMat coords;
  for (const auto& g : sub) {
    auto c = solve_left(h, g);
    if (!c) throw std::domain_error("subquotient_invariants: sub not contained in big");
    coords.push_back(*c);
  }
  return quotient_invariants(coords, h.size());
}

ZMat preimage_lattice(const ZMat& m, const ZMat& l, size_t n) {
  // { x : m x = sum y_i l_i } => kernel of [m | -l^T] projected to x
  size_t rows = m.size();
  size_t k = l.size();
  ZMat block(rows, ZVec(n + k, mpz_class(0)));
  for (size_t i = 0; i < rows; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("preimage_lattice: shape mismatch");
    for (size_t j = 0; j < n; ++j) block[i][j] = m[i][j];
    for (size_t j = 0; j < k; ++j) {
      if (l[j].size() != rows) throw std::invalid_argument("preimage_lattice: l shape");
      block[i][n + j] = -l[j][i];
    }
  }
  ZMat ker = z_kernel(block, n + k);
  ZMat out;
  for (const auto& row : ker) out.emplace_back(row.begin(), row.begin() + n);
  return row_hnf(std::move(out));
}

mpz_class lattice_index_in_zn(const ZMat& a, size_t n) {
  ZMat h = row_hnf(a);
  if (h.size() != n) throw std::domain_error("lattice_index_in_zn: not full rank");
  mpz_class det = 1;
  for (size_t i = 0; i < n; ++i) {
    size_t pivot = 0;
    while (pivot < n && h[i][pivot] == 0) ++pivot;
    det *= h[i][pivot];
  }
  return det;
}

void ScaledLattice::canonicalize() {
  rows = row_hnf(std::move(rows));
  if (den < 0) den = -den;
  if (den == 0) throw std::domain_error("ScaledLattice: zero denominator");
  mpz_class g = den;
  for (const auto& r : rows)
    for (const auto& x : r) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  if (rows.empty()) {
    den = 1;
    return;
  }
  if (g > 1) {
    for (auto& r : rows)
      for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
}

bool ScaledLattice::contains(const QVec& v) const {
  // v in (1/den) rowspan <=> den*v in rowspan; den*v must be integral
  ZVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    mpq_class scaled = v[i] * mpq_class(den);
    if (scaled.get_den() != 1) return false;
    w[i] = scaled.get_num();
  }
  return hnf_contains(rows, std::move(w));
}

bool ScaledLattice::operator==(const ScaledLattice& o) const {
  return den == o.den && ncols == o.ncols && rows == o.rows;
}

ScaledLattice scaled_from_rational(const QMat& gens, size_t ncols) {
  mpz_class den = 1;
  for (const auto& row : gens)
    for (const auto& c : row) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      den = l;
    }
  ZMat rows;
  rows.reserve(gens.size());
  for (const auto& row : gens) {
    if (row.size() != ncols) throw std::invalid_argument("scaled_from_rational: shape");
    ZVec r(ncols);
    for (size_t j = 0; j < ncols; ++j) {
      mpq_class scaled = row[j] * mpq_class(den);
      r[j] = scaled.get_num();
    }
    rows.push_back(std::move(r));
  }
  ScaledLattice out{den, std::move(rows), ncols};
  out.canonicalize();
  return out;
}

}  // namespace qdr
