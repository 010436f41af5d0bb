#pragma once

#include "qderham/lattice.hpp"
#include "qderham/qpoly.hpp"

namespace qdr {

// The two-variable q-divided power in cleared form: numerator
// (x-y)(x-qy)...(x-q^{d-1}y), denominator (q;q)_d.  No fraction field is
// materialized; the pair is only ever combined after scaling by (q-1)^d.
struct QDividedPower {
  unsigned d = 0;
  QPolynomial numerator;    // vars (x, y), weight bound d
  QSeries denominator;      // (q;q)_d
};

QDividedPower gamma_tilde(unsigned d, const TruncContext& ctx);

// Symbolic right-hand side of a derivative identity: sign * gamma~^d with
// y replaced by q^{y_twist} y.
struct GammaImage {
  int sign = 1;
  unsigned d = 0;
  unsigned y_twist = 0;
};

// d/dx gamma~^d = gamma~^{d-1}(x, y) and
// d/dy gamma~^d = -gamma~^{d-1}(x, qy), for the (1-q)-normalized
// q-derivative.  Both return the image; verify_dgamma checks the cleared
// polynomial identities exactly in Z[q][x, y].
GammaImage dgamma_dx(const QDividedPower& g);
GammaImage dgamma_dy(const QDividedPower& g);
bool verify_dgamma(unsigned d);

// Lattice model of the q-divided-power envelope of the ideal (x - y) at
// truncation: the span of monomials, the scaled divided powers
// (q-1)^d gamma~^d, and their products up to the degree bound, as a scaled
// integer lattice on (monomial) x (power of q-1) coordinates, taken
// together with p^K times the integral lattice.  Row denominators are
// normalized to pure p-powers (prime-to-p factors are units of the base).
struct EnvelopeLattice {
  TruncContext ctx;                // Padic base, (q-1)-power modulus
  unsigned p = 0;
  unsigned degree_bound = 0;
  std::vector<std::pair<unsigned, unsigned>> monomials;  // sorted by (a+b, a)
  ScaledLattice lat;

  size_t flat_dim() const { return monomials.size() * ctx.dim(); }
  size_t monomial_index(unsigned a, unsigned b) const;

  // Membership over the p-adic base: prime-to-p parts of denominators are
  // units and are cleared before the integral lattice test.
  bool contains(QVec v) const;
};

EnvelopeLattice envelope_generate(unsigned p, unsigned D, const TruncContext& ctx);

// Flat rational coordinates of (q-1)^d gamma~^d times x^a y^b on the
// envelope basis.
QVec scaled_gamma_coords(const EnvelopeLattice& env, unsigned d, unsigned a,
                         unsigned b);

// Product of two flat elements (polynomial multiplication block by block);
// throws if the product exceeds the degree bound.
QVec envelope_product(const EnvelopeLattice& env, const QVec& a, const QVec& b);

// Staged verification that x^{p^alpha} - y^{p^alpha} is divisible by
// [p^alpha]_q inside the envelope: divide by Phi_{p^i}(q) for i = 1..alpha
// and test lattice membership after every stage.
struct DivisibilityWitness {
  bool ok = false;
  unsigned p = 0, alpha = 0, deg = 0, qprec = 0, pprec = 0;
  std::vector<char> stage_ok;      // one entry per cyclotomic stage
  QVec quotient;                   // flat coordinates of the final quotient
};

DivisibilityWitness check_p_power_divisibility(unsigned p, unsigned alpha,
                                               unsigned deg,
                                               const TruncContext& ctx);

}  // namespace qdr
