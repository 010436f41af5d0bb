#include "qderham/ratpoly.hpp"

#include <stdexcept>

namespace qdr {

RPoly rp_normalize(RPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

RPoly rp_from_z(const ZPoly& a) {
  RPoly r;
  r.reserve(a.size());
  for (const auto& c : a) r.emplace_back(c);
  return r;
}

bool rp_is_zero(const RPoly& a) { return a.empty(); }

int rp_deg(const RPoly& a) { return static_cast<int>(a.size()) - 1; }

RPoly rp_add(const RPoly& a, const RPoly& b) {
  RPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return rp_normalize(std::move(r));
}

RPoly rp_sub(const RPoly& a, const RPoly& b) {
  RPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return rp_normalize(std::move(r));
}

RPoly rp_mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return rp_normalize(std::move(r));
}

RPoly rp_scal(const mpq_class& c, const RPoly& a) {
  if (c == 0) return {};
  RPoly r(a);
  for (auto& x : r) x *= c;
  return r;
}

RPoly rp_rem_monic(const RPoly& a, const ZPoly& monic) {
  if (monic.empty() || monic.back() != 1)
    throw std::domain_error("rp_rem_monic: divisor not monic");
  RPoly rem = a;
  int db = zp_deg(monic);
  while (rp_deg(rem) >= db) {
    int k = rp_deg(rem) - db;
    mpq_class c = rem.back();
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * mpq_class(monic[i]);
    rem = rp_normalize(std::move(rem));
  }
  return rem;
}

void rp_divmod(const RPoly& a, const RPoly& b, RPoly& quot, RPoly& rem) {
  if (b.empty()) throw std::domain_error("rp_divmod: divide by zero");
  rem = a;
  quot.clear();
  int db = rp_deg(b);
  if (rp_deg(a) >= db) quot.assign(a.size() - b.size() + 1, mpq_class(0));
  mpq_class lead = b.back();
  while (rp_deg(rem) >= db) {
    int k = rp_deg(rem) - db;
    mpq_class c = rem.back() / lead;
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    rem = rp_normalize(std::move(rem));
  }
  quot = rp_normalize(std::move(quot));
}

RPoly rp_xgcd(const RPoly& a, const RPoly& b, RPoly& u, RPoly& v) {
  RPoly r0 = rp_normalize(a), r1 = rp_normalize(b);
  RPoly u0 = {mpq_class(1)}, v0 = {}, u1 = {}, v1 = {mpq_class(1)};
  while (!rp_is_zero(r1)) {
    RPoly q, r2;
    rp_divmod(r0, r1, q, r2);
    RPoly u2 = rp_sub(u0, rp_mul(q, u1));
    RPoly v2 = rp_sub(v0, rp_mul(q, v1));
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (!rp_is_zero(r0)) {
    mpq_class inv = 1 / r0.back();
    r0 = rp_scal(inv, r0);
    u0 = rp_scal(inv, u0);
    v0 = rp_scal(inv, v0);
  }
  u = std::move(u0);
  v = std::move(v0);
  return r0;
}

mpz_class rp_common_den(const RPoly& a) {
  mpz_class d = 1;
  for (const auto& c : a) {
    mpz_class g;
    mpz_lcm(g.get_mpz_t(), d.get_mpz_t(), c.get_den().get_mpz_t());
    d = g;
  }
  return d;
}

}  // namespace qdr
