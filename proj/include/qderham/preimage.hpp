#pragma once

#include "qderham/lattice.hpp"
#include "qderham/qpoly.hpp"

namespace qdr {

// A quotient of Z[x_1..x_n] by a regular sequence of pure variable powers
// x_k^{a_k} (distinct variables).  Only this shape is supported; it is what
// the preimage filtration construction covers.
struct QuotientSpec {
  unsigned nvars = 0;
  unsigned degree_bound = 0;
  std::vector<std::pair<unsigned, unsigned>> relations;  // (variable, exponent)

  void validate() const;  // throws std::invalid_argument on bad input

  // Divided-power depth of a monomial: sum over relations of e_k / a_k
  // (integer division).
  unsigned depth(const Exp& e) const;
};

// The filtration on the degree-0 part obtained as the integral preimage of
// the combined (q-1)-adic and rational divided-power filtration.  Flattened
// on the basis (monomial of degree <= D) x ((q-1)-power < N).
struct PreimageFiltration {
  TruncContext ctx;
  QuotientSpec spec;
  unsigned depth_bound = 0;         // levels 0..depth_bound
  std::vector<Exp> basis;           // canonical monomial order
  mpz_class denominator_bound;      // declared bound on reduction denominators
  mpz_class max_denominator_seen;   // actually encountered
  std::vector<ZMat> fil;            // per level, HNF rows

  size_t flat_dim() const { return basis.size() * ctx.dim(); }
  bool contains(unsigned level, const ZVec& v) const;
};

// Construct the filtration.  The rationalization is carried out by exact
// row reduction over Q; if any intermediate denominator exceeds
// denominator_bound the computation aborts with std::domain_error (raise the
// bound to proceed).
PreimageFiltration preimage_filtration(const QuotientSpec& spec,
                                       const TruncContext& ctx,
                                       unsigned depth_bound,
                                       const mpz_class& denominator_bound);

}  // namespace qdr
