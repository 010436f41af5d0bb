#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdr {

// Dense polynomial in q with integer coefficients, index = degree.
// Invariant: no trailing zero (the zero polynomial is the empty vector).
using ZPoly = std::vector<mpz_class>;

ZPoly zp_normalize(ZPoly a);
ZPoly zp_from(std::vector<long> coeffs);
bool zp_is_zero(const ZPoly& a);
int zp_deg(const ZPoly& a);  // -1 for zero
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_scal(const mpz_class& c, const ZPoly& a);
ZPoly zp_pow(const ZPoly& a, unsigned e);

// Division by a monic divisor; remainder stays integral.
void zp_divmod_monic(const ZPoly& a, const ZPoly& monic, ZPoly& quot, ZPoly& rem);

// Exact division, throws std::domain_error if the remainder is nonzero or a
// coefficient division fails.  Divisor need not be monic.
ZPoly zp_exact_div(const ZPoly& a, const ZPoly& b);

// Substitute q -> q^n (n >= 1).
ZPoly zp_subst_pow(const ZPoly& a, unsigned n);

// Evaluate at an integer point.
mpz_class zp_eval(const ZPoly& a, const mpz_class& x);

// a(b(q)) by Horner.
ZPoly zp_compose(const ZPoly& a, const ZPoly& b);

std::string zp_to_string(const ZPoly& a, const std::string& var = "q");

// q^m - 1
ZPoly zp_qm_minus_one(unsigned m);

// 1 + q + ... + q^{m-1}
ZPoly q_integer_poly(unsigned m);

// m-th cyclotomic polynomial, computed by exact division and cached.
const ZPoly& cyclotomic(unsigned m);

std::vector<unsigned> divisors_of(unsigned m);
unsigned euler_phi(unsigned m);

}  // namespace qdr
