#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qderham/lattice.hpp"
#include "qderham/zpoly.hpp"

namespace qdr {

// Graded homotopy rings of circle-equivariant connective K-theory fixed
// points, presented degree by degree as labeled integer lattices.  Degrees
// are homotopical (even); beta sits in degree 2, orientation classes t, t_m,
// v in degree -2, u-classes in degree 2.

struct PrecisionTriple {
  unsigned p = 0;       // completion prime, 0 when integral
  unsigned p_prec = 0;  // p-adic precision, 0 when exact
  unsigned q_prec = 0;  // adic precision in the q-direction, 0 when exact
};

struct DegreeComponent {
  long degree = 0;
  unsigned rank = 0;
  std::vector<mpz_class> torsion;   // invariant factors > 1, usually empty
  std::vector<std::string> basis;   // one label per basis row
  ScaledLattice lattice;            // coordinates when the degree lives in a
                                    // fixed rational ambient; ncols 0 if not
};

struct GradedRingPresentation {
  std::string display;
  unsigned m = 1;
  PrecisionTriple prec;
  std::map<long, DegreeComponent> comp;  // nonzero even degrees only
  ZPoly beta_image;  // coefficient of the u-generator under beta, if any
};

// ---- ring elements ------------------------------------------------------

// Element of Z[b,q]/(q^m-1): a beta power times a reduced q-polynomial.
struct GenuineElem {
  unsigned beta = 0;
  ZPoly f;
};

GenuineElem genuine_reduce(unsigned m, unsigned beta, ZPoly f);
GenuineElem genuine_mul(unsigned m, const GenuineElem& a, const GenuineElem& b);
bool genuine_is_zero(const GenuineElem& a);

// Element of Z[b,q][[t_m]]/(b t_m - (q^m-1)) truncated at t_m^nprec.
// Cells are (t-power, beta-power) -> q-polynomial; the normal form cancels
// beta against t_m into a factor q^m-1 and reduces each cell modulo
// (q^m-1)^(nprec - t-power).
struct HfpElem {
  std::map<std::pair<unsigned, unsigned>, ZPoly> cell;
};

HfpElem hfp_gen(unsigned t_pow, unsigned beta_pow, ZPoly f);
HfpElem hfp_normalize(unsigned m, unsigned nprec, HfpElem x);
HfpElem hfp_add(unsigned m, unsigned nprec, const HfpElem& a, const HfpElem& b);
HfpElem hfp_mul(unsigned m, unsigned nprec, const HfpElem& a, const HfpElem& b);
bool hfp_is_zero(const HfpElem& x);

// The canonical map to the m = 1 ring: t_m -> [m]_q t, q -> q, b -> b.
HfpElem hfp_compare_to_circle(unsigned m, unsigned nprec, const HfpElem& x);

// Element of Z_p[[q-1]][u,v]/(uv - [p]_q) truncated at (q-1)^nprec, p^kprec.
// Cells are (u-power, v-power) -> coefficients in powers of s = q-1.
struct TateElem {
  std::map<std::pair<unsigned, unsigned>, std::vector<mpz_class>> cell;
};

TateElem tate_gen(unsigned u_pow, unsigned v_pow, std::vector<mpz_class> s_coeffs);
TateElem tate_normalize(unsigned p, unsigned kprec, unsigned nprec, TateElem x);
TateElem tate_mul(unsigned p, unsigned kprec, unsigned nprec, const TateElem& a,
                  const TateElem& b);
bool tate_is_zero(const TateElem& x);

// ---- presentations ------------------------------------------------------

GradedRingPresentation pi_genuine(unsigned m, long degree_bound);

GradedRingPresentation pi_homotopy_fixed(unsigned m, long degree_bound, unsigned nprec);

GradedRingPresentation pi_geometric(unsigned m, long degree_bound);

GradedRingPresentation pi_geometric_localized(unsigned m, unsigned nprec,
                                              long degree_bound);

// The p-complete piece for m = p^alpha * m_p with m_p prime to p, presented
// after base change along q -> q^{m_p} and completion at Phi_m.  beta maps
// to (q^{m/p}-1) times the degree-2 generator; the reduced coefficient is
// stored in beta_image.
GradedRingPresentation pi_geometric_p_complete(unsigned p, unsigned alpha,
                                               unsigned m_p, unsigned kprec,
                                               long degree_bound);

GradedRingPresentation tc_minus_zpzeta(unsigned p, unsigned kprec, unsigned nprec,
                                       long degree_bound);

// Coefficients of the m-series ((1+bt)^m - 1)/b: entry j is binomial(m, j+1),
// the coefficient on b^j t^(j+1).
std::vector<mpz_class> m_series(unsigned m);

// Generators of the degree-2k lattice of pi_geometric(m) in the power basis
// of Z[q]/Phi_m(q), before Hermite reduction.  Exposed so that determinism
// under generator reordering can be tested.
QMat geometric_degree_generators(unsigned m, unsigned k);

// ---- maps and consistency checks ---------------------------------------

// Inflation q -> q^n, b -> b, from Z[b,q]/(q^m-1) into Z[b,q]/(q^{mn}-1).
GenuineElem inflate(unsigned m, unsigned n, const GenuineElem& x);

struct InflationReport {
  unsigned m = 0, n = 0;
  long bound = 0;
  bool relation_ok = false;    // q^m-1 lands in (q^{mn}-1)
  bool base_change_iso = false;  // per-degree lattice of the base change is Z^{mn}
  bool ok = false;
};

InflationReport inflation_check(unsigned m, unsigned n, long degree_bound);

struct FractureDatum {
  unsigned m = 1;
  GradedRingPresentation localized;
  std::vector<GradedRingPresentation> p_complete;  // one per prime dividing m
};

FractureDatum fracture_datum(unsigned m, long degree_bound, unsigned kprec,
                             unsigned nprec);

struct FractureDegree {
  long degree = 0;
  unsigned rank_pullback = 0;
  unsigned rank_reference = 0;
  bool match = false;
  bool surjective = false;
};

struct FractureReport {
  unsigned m = 0;
  unsigned kprec = 0, nprec = 0;
  long bound = 0;
  bool gluing_ok = false;
  bool ok = false;
  std::string status;
  std::vector<FractureDegree> degrees;
};

// Assembles, per even degree <= bound, the pullback of
//   localized piece -> rationalized p-complete pieces <- p-complete pieces
// as an integer lattice with denominators bounded by m^nprec and compares it
// with the degree lattice of pi_geometric(m).  Also checks that the pieces
// jointly cover the rationalized ambient at the declared denominator budget
// and that every gluing map preserves the defining relations.
FractureReport fracture_assemble(unsigned m, long degree_bound, unsigned kprec,
                                 unsigned nprec);

struct PullbackDegree {
  long degree = 0;
  unsigned kernel_rank = 0;
  bool exact = false;
};

struct PullbackReport {
  unsigned p = 0;
  unsigned kprec = 0;
  long bound = 0;
  bool ok = false;
  std::string status;  // "ok", "insufficient precision", or mismatch text
  std::vector<PullbackDegree> degrees;
};

// Exactness of 0 -> genuine -> homotopy-fixed (+) geometric -> Tate per
// degree at p-precision kprec: the kernel lattice of the difference map must
// equal the image of Z[b,q]/(q^p-1).  kprec = 1 cannot separate (q-1)^(p-1)
// from Phi_p(q) and is reported as insufficient precision.
PullbackReport genuine_pullback_check(unsigned p, long degree_bound, unsigned kprec);

}  // namespace qdr
