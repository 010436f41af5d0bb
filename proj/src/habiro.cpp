#include "qderham/habiro.hpp"

#include <stdexcept>

namespace qdr {

namespace {

// I_{nblocks} (x) block, acting on flat coordinates.
ZMat block_diag(const ZMat& block, size_t nblocks) {
  size_t d = block.size();
  ZMat m(nblocks * d, ZVec(nblocks * d, mpz_class(0)));
  for (size_t b = 0; b < nblocks; ++b)
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) m[b * d + i][b * d + j] = block[i][j];
  return m;
}

ZVec apply_block_diag(const ZMat& block, const ZVec& v) {
  size_t d = block.size();
  if (v.size() % d != 0) throw std::invalid_argument("apply_block_diag: shape");
  ZVec out(v.size(), mpz_class(0));
  for (size_t b = 0; b * d < v.size(); ++b)
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        if (block[i][j] != 0 && v[b * d + j] != 0)
          out[b * d + i] += block[i][j] * v[b * d + j];
  return out;
}

}  // namespace

HabiroRescale habiro_hodge_rescale(const FilteredComplex& c, unsigned m,
                                   unsigned i_max) {
  const TruncContext& ctx = c.context();
  if (i_max > ctx.N)
    throw std::domain_error("habiro_hodge_rescale: i_max exceeds the truncation");
  if (i_max > c.fil_depth())
    throw std::domain_error("habiro_hodge_rescale: i_max exceeds the filtration depth");
  if (m == 0) throw std::domain_error("habiro_hodge_rescale: m must be >= 1");

  HabiroRescale out;
  out.ctx = ctx;
  out.m = m;
  out.i_max = i_max;

  QSeries qm1 = QSeries::from_qpoly(ctx, zp_qm_minus_one(m));
  ZMat mult = scalar_mult_matrix(qm1);
  unsigned dim = ctx.dim();

  // powers of the multiplication matrix
  std::vector<ZMat> mult_pow(i_max + 1);
  mult_pow[0] = zmat_identity(dim);
  for (unsigned k = 1; k <= i_max; ++k) mult_pow[k] = zmat_mul(mult, mult_pow[k - 1]);

  unsigned wmax = c.degree_bound();
  out.cleared.resize(wmax + 1);
  out.normalized_valid = i_max < ctx.N;
  if (out.normalized_valid) {
    out.reduced_ctx = ctx;
    out.reduced_ctx.N = ctx.N - i_max;
    out.normalized.resize(wmax + 1);
  }

  for (unsigned w = 0; w <= wmax; ++w) {
    size_t nb = c.basis(0, w).size();
    size_t n = nb * dim;
    ZMat gens;
    // sum over levels: (q^m-1)^{i_max-i} fil^i
    for (unsigned i = 0; i <= i_max; ++i) {
      ZMat fil = c.fil_lattice(i, 0, w);
      const ZMat& p = mult_pow[i_max - i];
      for (const auto& row : fil) gens.push_back(apply_block_diag(p, row));
    }
    out.cleared[w] = row_hnf(std::move(gens));

    if (out.normalized_valid) {
      // y known modulo (q-1)^{N-i_max} with (q^m-1)^{i_max} y in cleared
      ZMat pre = preimage_lattice(block_diag(mult_pow[i_max], nb), out.cleared[w], n);
      unsigned rdim = out.reduced_ctx.dim();
      ZMat proj;
      for (const auto& row : pre) {
        ZVec v(nb * rdim);
        for (size_t b = 0; b < nb; ++b)
          for (unsigned k = 0; k < rdim; ++k) v[b * rdim + k] = row[b * dim + k];
        proj.push_back(std::move(v));
      }
      out.normalized[w] = row_hnf(std::move(proj));
    }
  }
  return out;
}

bool HabiroRescale::contains(unsigned w, const ZVec& numerator,
                             unsigned den_pow) const {
  if (den_pow > i_max)
    throw std::domain_error("HabiroRescale::contains: denominator power exceeds i_max");
  if (w >= cleared.size())
    throw std::invalid_argument("HabiroRescale::contains: weight out of range");
  QSeries qm1 = QSeries::from_qpoly(ctx, zp_qm_minus_one(m));
  ZMat mult = scalar_mult_matrix(qm1);
  ZVec v = numerator;
  for (unsigned k = den_pow; k < i_max; ++k) v = apply_block_diag(mult, v);
  return hnf_contains(cleared[w], std::move(v));
}

}  // namespace qdr
