#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "qderham/ratpoly.hpp"

namespace qdr {

// Row-major integer matrix.  A lattice is the row span of such a matrix.
using ZMat = std::vector<std::vector<mpz_class>>;
using ZVec = std::vector<mpz_class>;
using QMat = std::vector<std::vector<mpq_class>>;
using QVec = std::vector<mpq_class>;

ZMat zmat_identity(size_t n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZVec zmat_apply(const ZMat& a, const ZVec& x);   // a * x, x a column vector
ZVec zvec_scaled(const mpz_class& c, const ZVec& v);

// Canonical row Hermite normal form of the row span: pivots positive and
// strictly right-down, entries above each pivot reduced into [0, pivot),
// zero rows removed.  Two matrices have equal row span iff equal HNF.
ZMat row_hnf(ZMat a);

// Row HNF of rowspan(a) + M * Z^n for M > 0.  Intermediate entries stay
// reduced modulo M, so this is the right call when the lattice is known to
// contain M * Z^n and a is large; plain row_hnf on a with M * identity rows
// appended returns the same matrix but lets entries grow without bound.
ZMat row_hnf_with_modulus(ZMat a, const mpz_class& M, size_t ncols);

// Is v in the row span of h (h must be in row HNF)?
bool hnf_contains(const ZMat& h, ZVec v);

// Lattice (row span) equality.
bool lattice_equal(const ZMat& a, const ZMat& b);

// Basis of { x in Z^n : a * x = 0 } for an m x n matrix acting on column
// vectors.  Rows of the result are a basis of the (saturated) kernel.
ZMat z_kernel(const ZMat& a, size_t ncols);

// Solve x * a = b over Z.  Returns the coefficient vector when solvable.
std::optional<ZVec> solve_left(const ZMat& a, const ZVec& b);

// Nonzero Smith invariant factors of a, in divisibility order.
std::vector<mpz_class> snf_invariants(ZMat a);

// Invariant factors of Z^n / rowspan(a): torsion factors (> 1) followed by
// one 0 per free rank.  Factors equal to 1 are dropped.
std::vector<mpz_class> quotient_invariants(const ZMat& a, size_t n);

// Invariant factors of rowspan(big) / rowspan(sub); sub must be contained
// in big.  Same output convention as quotient_invariants.
std::vector<mpz_class> subquotient_invariants(const ZMat& big, const ZMat& sub);

// { x in Z^n : m * x in rowspan(l) }, for m with ncols = n.
ZMat preimage_lattice(const ZMat& m, const ZMat& l, size_t n);

// Determinant (up to sign, returned non-negative) of the row span of a full
// rank lattice in Z^n, i.e. the index [Z^n : L].  Throws if rank < n.
mpz_class lattice_index_in_zn(const ZMat& a, size_t n);

// A lattice with a declared scalar denominator: the set (1/den) * rowspan.
// canonicalize() puts rows into HNF and makes den minimal.
struct ScaledLattice {
  mpz_class den = 1;
  ZMat rows;
  size_t ncols = 0;

  void canonicalize();
  bool contains(const QVec& v) const;  // rows must already be in HNF
  bool operator==(const ScaledLattice& o) const;
};

// Build a ScaledLattice from rational generators (clears denominators).
ScaledLattice scaled_from_rational(const QMat& gens, size_t ncols);

}  // namespace qdr
