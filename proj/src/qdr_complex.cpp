#include "qderham/qdr_complex.hpp"

#include <bit>
#include <stdexcept>

namespace qdr {

namespace {

void enumerate_exps(unsigned nvars, unsigned total, Exp& cur, unsigned pos,
                    std::vector<Exp>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (unsigned v = 0; v <= total; ++v) {
    cur[pos] = v;
    enumerate_exps(nvars, total - v, cur, pos + 1, out);
  }
}

std::vector<Exp> exps_of_total(unsigned nvars, unsigned total) {
  if (nvars == 0) {
    if (total == 0) return {Exp{}};
    return {};
  }
  std::vector<Exp> out;
  Exp cur(nvars, 0);
  enumerate_exps(nvars, total, cur, 0, out);
  return out;
}

}  // namespace

ZMat scalar_mult_matrix(const QSeries& f) {
  const TruncContext& ctx = f.context();
  unsigned dim = ctx.dim();
  ZMat m(dim, ZVec(dim, mpz_class(0)));
  for (unsigned col = 0; col < dim; ++col) {
    std::vector<mpq_class> e(dim, mpq_class(0));
    e[col] = 1;
    QSeries basis_vec(ctx, std::move(e));
    QSeries img = f * basis_vec;
    for (unsigned row = 0; row < dim; ++row) {
      const mpq_class& c = img.coeff(row);
      if (c.get_den() != 1)
        throw std::domain_error("scalar_mult_matrix: non-integral coefficient");
      m[row][col] = c.get_num();
    }
  }
  return m;
}

FilteredComplex::FilteredComplex(TruncContext ctx, unsigned nvars,
                                 unsigned degree_bound, unsigned fil_depth)
    : ctx_(std::move(ctx)),
      nvars_(nvars),
      degree_bound_(degree_bound),
      fil_depth_(fil_depth) {
  if (!ctx_.q1_basis())
    throw std::domain_error("FilteredComplex: context must be a (q-1)-power basis");
  if (ctx_.base != Base::Int)
    throw std::domain_error("FilteredComplex: integer base required for lattice "
                            "cohomology");
  build();
}

void FilteredComplex::build() {
  unsigned wmax = max_weight();
  basis_.assign(wmax + 1, {});
  diff_.assign(wmax + 1, {});
  for (unsigned w = 0; w <= wmax; ++w) {
    basis_[w].assign(nvars_ + 1, {});
    for (unsigned j = 0; j <= nvars_; ++j) {
      if (j > w) continue;
      unsigned xdeg = w - j;
      if (xdeg > degree_bound_) continue;
      auto exps = exps_of_total(nvars_, xdeg);
      for (unsigned mask = 0; mask < (1u << nvars_); ++mask) {
        if (static_cast<unsigned>(std::popcount(mask)) != j) continue;
        for (const auto& e : exps) basis_[w][j].push_back({mask, e});
      }
      std::sort(basis_[w][j].begin(), basis_[w][j].end());
    }
  }
  // differentials, flattened
  unsigned dim = ctx_.dim();
  for (unsigned w = 0; w <= wmax; ++w) {
    diff_[w].assign(nvars_ + 1, ZMat{});
    for (unsigned j = 0; j < nvars_; ++j) {
      const auto& src = basis_[w][j];
      const auto& dst = basis_[w][j + 1];
      ZMat m(dst.size() * dim, ZVec(src.size() * dim, mpz_class(0)));
      for (size_t c = 0; c < src.size(); ++c) {
        const auto& [mask, e] = src[c];
        for (unsigned i = 0; i < nvars_; ++i) {
          if (mask & (1u << i)) continue;
          if (e[i] == 0) continue;
          Exp e2 = e;
          e2[i] -= 1;
          FormBasisElem target{mask | (1u << i), e2};
          auto it = std::lower_bound(dst.begin(), dst.end(), target);
          if (it == dst.end() || !(*it == target))
            throw std::logic_error("FilteredComplex: missing differential target");
          size_t r = static_cast<size_t>(it - dst.begin());
          int sign = std::popcount(mask & ((1u << i) - 1)) % 2 ? -1 : 1;
          ZMat block = scalar_mult_matrix(q_integer(ctx_, e[i]));
          for (unsigned a = 0; a < dim; ++a)
            for (unsigned b = 0; b < dim; ++b)
              if (block[a][b] != 0)
                m[r * dim + a][c * dim + b] += sign * block[a][b];
        }
      }
      diff_[w][j] = std::move(m);
    }
  }
}

const std::vector<FormBasisElem>& FilteredComplex::basis(unsigned j, unsigned w) const {
  static const std::vector<FormBasisElem> empty;
  if (w >= basis_.size() || j >= basis_[w].size()) return empty;
  return basis_[w][j];
}

const ZMat& FilteredComplex::differential(unsigned j, unsigned w) const {
  static const ZMat empty;
  if (w >= diff_.size() || j >= diff_[w].size()) return empty;
  return diff_[w][j];
}

size_t FilteredComplex::flat_dim(unsigned j, unsigned w) const {
  return basis(j, w).size() * ctx_.dim();
}

std::vector<size_t> FilteredComplex::fil_coords(unsigned i, unsigned j,
                                                unsigned w) const {
  unsigned shift = i > j ? i - j : 0;
  std::vector<size_t> coords;
  unsigned dim = ctx_.dim();
  size_t nb = basis(j, w).size();
  if (shift >= dim && nb > 0) return coords;  // filtration level vanishes
  for (size_t b = 0; b < nb; ++b)
    for (unsigned k = shift; k < dim; ++k) coords.push_back(b * dim + k);
  return coords;
}

ZMat FilteredComplex::fil_lattice(unsigned i, unsigned j, unsigned w) const {
  auto coords = fil_coords(i, j, w);
  ZMat rows(coords.size(), ZVec(flat_dim(j, w), mpz_class(0)));
  for (size_t r = 0; r < coords.size(); ++r) rows[r][coords[r]] = 1;
  return rows;
}

FilteredComplex FilteredComplex::reduce_mod_q1() const {
  TruncContext c1 = ctx_;
  c1.N = 1;
  // the filtration keeps its depth: at precision 1 level i is zero below
  // cohomological degree i and full from degree i on
  return FilteredComplex(c1, nvars_, degree_bound_, fil_depth_);
}

FilteredComplex build_qdr(unsigned nvars, const TruncContext& ctx,
                          unsigned degree_bound, unsigned fil_depth) {
  if (fil_depth > ctx.N)
    throw std::domain_error(
        "build_qdr: filtration depth exceeds the (q-1)-truncation; deeper "
        "levels are indistinguishable from one another");
  return FilteredComplex(ctx, nvars, degree_bound, fil_depth);
}

GradedModule cohomology(const FilteredComplex& c, unsigned level) {
  GradedModule out;
  for (unsigned w = 0; w <= c.max_weight(); ++w) {
    for (unsigned j = 0; j <= c.nvars(); ++j) {
      size_t n = c.flat_dim(j, w);
      if (n == 0) continue;
      // kernel of d restricted to the filtration sublattice
      auto coords = c.fil_coords(level, j, w);
      ZMat kernel_rows;
      const ZMat& d = c.differential(j, w);
      if (d.empty() || d[0].empty()) {
        // no outgoing differential (top degree or empty target): whole fil
        kernel_rows = c.fil_lattice(level, j, w);
      } else {
        ZMat dcols(d.size(), ZVec(coords.size(), mpz_class(0)));
        for (size_t r = 0; r < d.size(); ++r)
          for (size_t k = 0; k < coords.size(); ++k) dcols[r][k] = d[r][coords[k]];
        ZMat ker = z_kernel(dcols, coords.size());
        // embed back into ambient flat coordinates
        for (const auto& row : ker) {
          ZVec v(n, mpz_class(0));
          for (size_t k = 0; k < coords.size(); ++k) v[coords[k]] = row[k];
          kernel_rows.push_back(std::move(v));
        }
      }
      // image of the filtration piece one degree down
      ZMat image_rows;
      if (j > 0) {
        const ZMat& dprev = c.differential(j - 1, w);
        if (!dprev.empty() && !dprev[0].empty()) {
          auto pcoords = c.fil_coords(level, j - 1, w);
          for (size_t k : pcoords) {
            ZVec col(dprev.size());
            bool nonzero = false;
            for (size_t r = 0; r < dprev.size(); ++r) {
              col[r] = dprev[r][k];
              if (col[r] != 0) nonzero = true;
            }
            if (nonzero) image_rows.push_back(std::move(col));
          }
        }
      }
      auto inv = subquotient_invariants(kernel_rows, image_rows);
      if (!inv.empty()) out.piece[{j, w}] = std::move(inv);
    }
  }
  return out;
}

}  // namespace qdr
