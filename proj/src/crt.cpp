#include "qderham/crt.hpp"

#include <stdexcept>

namespace qdr {

namespace {

TruncContext component_context(const TruncContext& big, unsigned d) {
  TruncContext c = big;
  c.qmod = QMod::CycPow;
  c.m = d;
  return c;
}

}  // namespace

namespace {

// The idempotents of base[q]/(q^m-1)^N -> prod_d base[q]/Phi_d^N exist only
// when every prime dividing m is invertible in the base.
void require_split_exists(const TruncContext& ctx) {
  if (ctx.m == 1) return;
  mpz_class m(ctx.m);
  switch (ctx.base) {
    case Base::Int:
      throw std::domain_error(
          "crt_split: splitting idempotents are not integral over Z; localize "
          "the primes dividing " + m.get_str());
    case Base::IntLoc: {
      mpz_class rest = m, g;
      while (rest != 1) {
        mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), ctx.loc_m.get_mpz_t());
        if (g == 1)
          throw std::domain_error("crt_split: prime factor of m=" + m.get_str() +
                                  " not inverted in Z[1/" + ctx.loc_m.get_str() + "]");
        while (mpz_divisible_p(rest.get_mpz_t(), g.get_mpz_t()))
          mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), g.get_mpz_t());
      }
      return;
    }
    case Base::Padic:
      if (ctx.m % ctx.p == 0)
        throw std::domain_error("crt_split: p divides m, cyclotomic factors are "
                                "not coprime p-adically");
      return;
  }
}

}  // namespace

std::map<unsigned, QSeries> crt_split(const QSeries& f) {
  const TruncContext& ctx = f.context();
  if (ctx.qmod != QMod::QmOnePow)
    throw std::domain_error("crt_split: context must be modulo (q^m-1)^N");
  require_split_exists(ctx);
  std::map<unsigned, QSeries> out;
  RPoly rep = f.to_qpoly();
  for (unsigned d : divisors_of(ctx.m)) {
    TruncContext cc = component_context(ctx, d);
    out.emplace(d, QSeries::from_qpoly(cc, rep));
  }
  return out;
}

QSeries crt_combine(const TruncContext& target,
                    const std::map<unsigned, QSeries>& comps) {
  if (target.qmod != QMod::QmOnePow)
    throw std::domain_error("crt_combine: target must be modulo (q^m-1)^N");
  auto divs = divisors_of(target.m);
  if (comps.size() != divs.size())
    throw std::invalid_argument("crt_combine: wrong number of components");
  // g = sum_d c_d * E_d where E_d = (M/M_d) * inv(M/M_d mod M_d), computed
  // over Q[q] and validated against the base ring at the end.
  RPoly acc;
  ZPoly M = target.modulus();
  for (unsigned d : divs) {
    auto it = comps.find(d);
    if (it == comps.end())
      throw std::invalid_argument("crt_combine: missing component for divisor " +
                                  std::to_string(d));
    const QSeries& cd = it->second;
    if (cd.context().qmod != QMod::CycPow || cd.context().m != d ||
        cd.context().N != target.N)
      throw std::invalid_argument("crt_combine: component context mismatch at divisor " +
                                  std::to_string(d));
    ZPoly Md = zp_pow(cyclotomic(d), target.N);
    ZPoly cof = zp_exact_div(M, Md);
    // invert cof modulo Md over Q
    RPoly u, v;
    RPoly g = rp_xgcd(rp_from_z(cof), rp_from_z(Md), u, v);
    if (rp_deg(g) != 0)
      throw std::logic_error("crt_combine: cofactor not invertible modulo component");
    RPoly e = rp_mul(rp_from_z(cof), u);  // idempotent representative, = 1 mod Md
    RPoly term = rp_mul(cd.to_qpoly(), e);
    acc = rp_add(acc, rp_rem_monic(term, M));
  }
  return QSeries::from_qpoly(target, acc);
}

}  // namespace qdr
