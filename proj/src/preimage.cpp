#include "qderham/preimage.hpp"

#include <set>
#include <stdexcept>

namespace qdr {

namespace {

void enumerate_upto(unsigned nvars, unsigned bound, Exp& cur, unsigned pos,
                    unsigned used, std::vector<Exp>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (unsigned v = 0; used + v <= bound; ++v) {
    cur[pos] = v;
    enumerate_upto(nvars, bound, cur, pos + 1, used + v, out);
  }
}

}  // namespace

void QuotientSpec::validate() const {
  if (nvars == 0) throw std::invalid_argument("QuotientSpec: need at least one variable");
  std::set<unsigned> seen;
  for (const auto& [var, exp] : relations) {
    if (var >= nvars)
      throw std::invalid_argument("QuotientSpec: relation variable out of range");
    if (exp == 0) throw std::invalid_argument("QuotientSpec: relation exponent must be >= 1");
    if (!seen.insert(var).second)
      throw std::invalid_argument(
          "QuotientSpec: repeated relation variable; pure powers of distinct "
          "variables are the only supported regular sequences");
  }
}

unsigned QuotientSpec::depth(const Exp& e) const {
  unsigned d = 0;
  for (const auto& [var, exp] : relations) d += e[var] / exp;
  return d;
}

PreimageFiltration preimage_filtration(const QuotientSpec& spec,
                                       const TruncContext& ctx,
                                       unsigned depth_bound,
                                       const mpz_class& denominator_bound) {
  spec.validate();
  if (!ctx.q1_basis())
    throw std::domain_error("preimage_filtration: (q-1)-power context required");

  PreimageFiltration out;
  out.ctx = ctx;
  out.spec = spec;
  out.depth_bound = depth_bound;
  out.denominator_bound = denominator_bound;
  out.max_denominator_seen = 1;

  Exp cur(spec.nvars, 0);
  enumerate_upto(spec.nvars, spec.degree_bound, cur, 0, 0, out.basis);
  std::sort(out.basis.begin(), out.basis.end());

  unsigned dim = ctx.dim();
  size_t n = out.basis.size() * dim;

  // divided-power denominator of each monomial: prod over relations of
  // (e_k / a_k)! -- the scale on which the rational filtration generators
  // live.  The declared bound caps these.
  std::vector<mpz_class> pd(out.basis.size(), mpz_class(1));
  for (size_t b = 0; b < out.basis.size(); ++b) {
    for (const auto& [var, exp] : spec.relations) {
      unsigned j = out.basis[b][var] / exp;
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), j);
      pd[b] *= f;
    }
    if (pd[b] > out.max_denominator_seen) out.max_denominator_seen = pd[b];
  }
  if (out.max_denominator_seen > denominator_bound)
    throw std::domain_error(
        "preimage_filtration: divided-power denominator " +
        out.max_denominator_seen.get_str() + " exceeds the declared bound " +
        denominator_bound.get_str());

  out.fil.resize(depth_bound + 1);
  for (unsigned level = 0; level <= depth_bound; ++level) {
    // rational generators of sum_{a+b>=level} (q-1)^a fil^b: one generator
    // s^a x^e / pd(e) per admissible pair; integerize rows (the span is what
    // matters), take the annihilator, then its annihilator: the integral
    // saturation is exactly the preimage lattice.
    ZMat gens;
    for (size_t b = 0; b < out.basis.size(); ++b) {
      unsigned d = spec.depth(out.basis[b]);
      for (unsigned a = 0; a < dim; ++a) {
        if (a + d < level) continue;
        ZVec row(n, mpz_class(0));
        row[b * dim + a] = 1;  // pd(e) scales away in the span
        gens.push_back(std::move(row));
      }
    }
    ZMat ann = z_kernel(gens, n);
    out.fil[level] = row_hnf(z_kernel(ann, n));
  }
  return out;
}

bool PreimageFiltration::contains(unsigned level, const ZVec& v) const {
  if (level >= fil.size())
    throw std::invalid_argument("PreimageFiltration::contains: level out of range");
  return hnf_contains(fil[level], ZVec(v));
}

}  // namespace qdr
