#include "qderham/zpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace qdr {

ZPoly zp_normalize(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zp_from(std::vector<long> coeffs) {
  ZPoly r;
  r.reserve(coeffs.size());
  for (long c : coeffs) r.emplace_back(c);
  return zp_normalize(std::move(r));
}

bool zp_is_zero(const ZPoly& a) { return a.empty(); }

int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zp_normalize(std::move(r));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zp_normalize(std::move(r));
}

ZPoly zp_neg(const ZPoly& a) {
  ZPoly r(a);
  for (auto& c : r) c = -c;
  return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return zp_normalize(std::move(r));
}

ZPoly zp_scal(const mpz_class& c, const ZPoly& a) {
  if (c == 0) return {};
  ZPoly r(a);
  for (auto& x : r) x *= c;
  return r;
}

ZPoly zp_pow(const ZPoly& a, unsigned e) {
  ZPoly r = zp_from({1});
  ZPoly base = a;
  while (e) {
    if (e & 1u) r = zp_mul(r, base);
    e >>= 1u;
    if (e) base = zp_mul(base, base);
  }
  return r;
}

void zp_divmod_monic(const ZPoly& a, const ZPoly& monic, ZPoly& quot, ZPoly& rem) {
  if (monic.empty() || monic.back() != 1)
    throw std::domain_error("zp_divmod_monic: divisor not monic");
  rem = a;
  quot.assign(a.size() > monic.size() - 1 ? a.size() - monic.size() + 1 : 0, mpz_class(0));
  int db = zp_deg(monic);
  while (zp_deg(rem) >= db) {
    int k = zp_deg(rem) - db;
    mpz_class c = rem.back();
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * monic[i];
    rem = zp_normalize(std::move(rem));
  }
  quot = zp_normalize(std::move(quot));
}

ZPoly zp_exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("zp_exact_div: divide by zero");
  if (a.empty()) return {};
  ZPoly rem = a;
  int db = zp_deg(b);
  if (zp_deg(a) < db) throw std::domain_error("zp_exact_div: not divisible");
  ZPoly quot(a.size() - b.size() + 1, mpz_class(0));
  while (zp_deg(rem) >= db) {
    int k = zp_deg(rem) - db;
    mpz_class c;
    if (!mpz_divisible_p(rem.back().get_mpz_t(), b.back().get_mpz_t()))
      throw std::domain_error("zp_exact_div: not divisible");
    mpz_divexact(c.get_mpz_t(), rem.back().get_mpz_t(), b.back().get_mpz_t());
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    rem = zp_normalize(std::move(rem));
  }
  if (!rem.empty()) throw std::domain_error("zp_exact_div: not divisible");
  return zp_normalize(std::move(quot));
}

ZPoly zp_subst_pow(const ZPoly& a, unsigned n) {
  if (n == 0) throw std::domain_error("zp_subst_pow: n must be >= 1");
  if (a.empty()) return {};
  ZPoly r((a.size() - 1) * n + 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i * n] = a[i];
  return zp_normalize(std::move(r));
}

mpz_class zp_eval(const ZPoly& a, const mpz_class& x) {
  mpz_class r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

ZPoly zp_compose(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  for (size_t i = a.size(); i-- > 0;) {
    r = zp_mul(r, b);
    if (a[i] != 0) {
      if (r.empty()) r.emplace_back(0);
      r[0] += a[i];
      r = zp_normalize(std::move(r));
    }
  }
  return r;
}

std::string zp_to_string(const ZPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    mpz_class c = a[i];
    if (first) {
      if (c < 0) os << "-", c = -c;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (i == 0)
      os << c.get_str();
    else {
      if (c != 1) os << c.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

ZPoly zp_qm_minus_one(unsigned m) {
  ZPoly r(m + 1, mpz_class(0));
  r[0] = -1;
  r[m] = 1;
  return r;
}

ZPoly q_integer_poly(unsigned m) {
  ZPoly r(m, mpz_class(1));
  return zp_normalize(std::move(r));
}

std::vector<unsigned> divisors_of(unsigned m) {
  std::vector<unsigned> ds;
  for (unsigned d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      ds.push_back(d);
      if (d != m / d) ds.push_back(m / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

unsigned euler_phi(unsigned m) {
  unsigned r = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

const ZPoly& cyclotomic(unsigned m) {
  static std::map<unsigned, ZPoly> cache;
  static std::mutex mu;
  if (m == 0) throw std::domain_error("cyclotomic: m must be >= 1");
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Fill the cache for all divisors in increasing order; each step only
  // needs strictly smaller divisors, which are already present.
  for (unsigned d : divisors_of(m)) {
    if (cache.count(d)) continue;
    ZPoly val;
    if (d == 1) {
      val = zp_from({-1, 1});
    } else {
      val = zp_qm_minus_one(d);
      for (unsigned e : divisors_of(d))
        if (e != d) val = zp_exact_div(val, cache.at(e));
    }
    cache.emplace(d, std::move(val));
  }
  return cache.at(m);
}

}  // namespace qdr
