#pragma once

#include <gmpxx.h>

#include <vector>

#include "qderham/zpoly.hpp"

namespace qdr {

// Dense polynomial in q with rational coefficients.  Same trailing-zero
// invariant as ZPoly.
using RPoly = std::vector<mpq_class>;

RPoly rp_normalize(RPoly a);
RPoly rp_from_z(const ZPoly& a);
bool rp_is_zero(const RPoly& a);
int rp_deg(const RPoly& a);
RPoly rp_add(const RPoly& a, const RPoly& b);
RPoly rp_sub(const RPoly& a, const RPoly& b);
RPoly rp_mul(const RPoly& a, const RPoly& b);
RPoly rp_scal(const mpq_class& c, const RPoly& a);

// Remainder modulo a monic integer polynomial.
RPoly rp_rem_monic(const RPoly& a, const ZPoly& monic);

// General division over Q: a = quot * b + rem with deg rem < deg b.
void rp_divmod(const RPoly& a, const RPoly& b, RPoly& quot, RPoly& rem);

// Extended gcd over Q[q]: returns monic g with g = u*a + v*b.
RPoly rp_xgcd(const RPoly& a, const RPoly& b, RPoly& u, RPoly& v);

// Common denominator of all coefficients (1 for the zero polynomial).
mpz_class rp_common_den(const RPoly& a);

}  // namespace qdr
