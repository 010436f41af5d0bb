#include "qderham/qseries.hpp"

#include <sstream>
#include <stdexcept>

namespace qdr {

namespace {

// First N coefficients of the expansion of poly around q = 1, i.e. the
// representative modulo (q-1)^N on the (q-1)-power basis.  Computed by
// repeated synthetic division by (q-1).
std::vector<mpq_class> taylor_at_one(RPoly poly, unsigned N) {
  std::vector<mpq_class> out(N, mpq_class(0));
  for (unsigned i = 0; i < N && !poly.empty(); ++i) {
    // divide by (q-1): poly = quot*(q-1) + rem, rem = poly(1)
    RPoly quot(poly.size() > 1 ? poly.size() - 1 : 0, mpq_class(0));
    mpq_class carry = 0;
    for (size_t j = poly.size(); j-- > 1;) {
      carry += poly[j];
      quot[j - 1] = carry;
    }
    out[i] = carry + poly[0];
    poly = rp_normalize(std::move(quot));
  }
  return out;
}

RPoly expand_from_one(const std::vector<mpq_class>& c) {
  // sum_i c[i] * (q-1)^i by Horner
  RPoly qm1 = {mpq_class(-1), mpq_class(1)};
  RPoly r;
  for (size_t i = c.size(); i-- > 0;) {
    r = rp_mul(r, qm1);
    if (c[i] != 0) {
      if (r.empty()) r.emplace_back(0);
      r[0] += c[i];
      r = rp_normalize(std::move(r));
    }
  }
  return r;
}

}  // namespace

QSeries::QSeries(TruncContext ctx, std::vector<mpq_class> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  if (c_.size() != ctx_.dim())
    throw std::invalid_argument("QSeries: coefficient count does not match context");
  canonicalize_scalars();
}

void QSeries::canonicalize_scalars() {
  switch (ctx_.base) {
    case Base::Int:
      for (const auto& c : c_)
        if (c.get_den() != 1)
          throw std::domain_error("QSeries: coefficient " + c.get_str() +
                                  " not integral over Z");
      break;
    case Base::IntLoc: {
      for (const auto& c : c_) {
        mpz_class den = c.get_den();
        mpz_class g;
        while (den != 1) {
          mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), ctx_.loc_m.get_mpz_t());
          if (g == 1)
            throw std::domain_error("QSeries: denominator " + c.get_den().get_str() +
                                    " not invertible in Z[1/" + ctx_.loc_m.get_str() + "]");
          while (mpz_divisible_p(den.get_mpz_t(), g.get_mpz_t()))
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
      }
      break;
    }
    case Base::Padic: {
      mpz_class pk = ctx_.char_modulus();
      for (auto& c : c_) {
        mpz_class den = c.get_den(), inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()) == 0)
          throw std::domain_error("QSeries: denominator " + den.get_str() +
                                  " not a p-adic unit (p=" + std::to_string(ctx_.p) + ")");
        mpz_class v = c.get_num() * inv;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), pk.get_mpz_t());
        c = mpq_class(v);
      }
      break;
    }
  }
}

QSeries QSeries::zero(const TruncContext& ctx) {
  return QSeries(ctx, std::vector<mpq_class>(ctx.dim(), mpq_class(0)));
}

QSeries QSeries::one(const TruncContext& ctx) { return constant(ctx, 1); }

QSeries QSeries::constant(const TruncContext& ctx, const mpq_class& c) {
  std::vector<mpq_class> v(ctx.dim(), mpq_class(0));
  v[0] = c;
  return QSeries(ctx, std::move(v));
}

QSeries QSeries::q(const TruncContext& ctx) {
  return from_qpoly(ctx, zp_from({0, 1}));
}

QSeries QSeries::from_qpoly(const TruncContext& ctx, const RPoly& poly) {
  if (ctx.q1_basis()) return QSeries(ctx, taylor_at_one(poly, ctx.N));
  RPoly rem = rp_rem_monic(poly, ctx.modulus());
  std::vector<mpq_class> v(ctx.dim(), mpq_class(0));
  for (size_t i = 0; i < rem.size(); ++i) v[i] = rem[i];
  return QSeries(ctx, std::move(v));
}

QSeries QSeries::from_qpoly(const TruncContext& ctx, const ZPoly& poly) {
  return from_qpoly(ctx, rp_from_z(poly));
}

RPoly QSeries::to_qpoly() const {
  if (ctx_.q1_basis()) return expand_from_one(c_);
  RPoly r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c);
  return rp_normalize(std::move(r));
}

bool QSeries::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool QSeries::operator==(const QSeries& o) const {
  return ctx_ == o.ctx_ && c_ == o.c_;
}

QSeries QSeries::operator+(const QSeries& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("QSeries: context mismatch in +");
  std::vector<mpq_class> v(c_);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
  return QSeries(ctx_, std::move(v));
}

QSeries QSeries::operator-(const QSeries& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("QSeries: context mismatch in -");
  std::vector<mpq_class> v(c_);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
  return QSeries(ctx_, std::move(v));
}

QSeries QSeries::operator-() const {
  std::vector<mpq_class> v(c_);
  for (auto& x : v) x = -x;
  return QSeries(ctx_, std::move(v));
}

QSeries QSeries::operator*(const QSeries& o) const {
  if (ctx_ != o.ctx_) throw std::invalid_argument("QSeries: context mismatch in *");
  if (ctx_.q1_basis()) {
    std::vector<mpq_class> v(ctx_.N, mpq_class(0));
    for (unsigned i = 0; i < ctx_.N; ++i) {
      if (c_[i] == 0) continue;
      for (unsigned j = 0; j + i < ctx_.N; ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return QSeries(ctx_, std::move(v));
  }
  return from_qpoly(ctx_, rp_mul(to_qpoly(), o.to_qpoly()));
}

QSeries QSeries::scaled(const mpq_class& c) const {
  std::vector<mpq_class> v(c_);
  for (auto& x : v) x *= c;
  return QSeries(ctx_, std::move(v));
}

QSeries QSeries::pow(unsigned e) const {
  QSeries r = one(ctx_);
  QSeries base = *this;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

QSeries QSeries::adams(unsigned n) const {
  if (n == 0) throw std::domain_error("adams: n must be >= 1");
  RPoly p = to_qpoly();
  RPoly sub;
  if (!p.empty()) {
    sub.assign((p.size() - 1) * n + 1, mpq_class(0));
    for (size_t i = 0; i < p.size(); ++i) sub[i * n] = p[i];
    sub = rp_normalize(std::move(sub));
  }
  return from_qpoly(ctx_, sub);
}

QSeries QSeries::convert(const TruncContext& target) const {
  return from_qpoly(target, to_qpoly());
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  std::string var = ctx_.q1_basis() ? "(q-1)" : "q";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
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
  if (first) os << "0";
  os << "  [" << ctx_.descriptor() << "]";
  return os.str();
}

QSeries q_integer(const TruncContext& ctx, unsigned m) {
  return QSeries::from_qpoly(ctx, q_integer_poly(m));
}

QSeries q_factorial(const TruncContext& ctx, unsigned m) {
  QSeries r = QSeries::one(ctx);
  for (unsigned j = 2; j <= m; ++j) r = r * q_integer(ctx, j);
  return r;
}

QSeries q_pochhammer(const TruncContext& ctx, unsigned d) {
  QSeries r = QSeries::one(ctx);
  for (unsigned j = 1; j <= d; ++j) {
    ZPoly f = zp_neg(zp_qm_minus_one(j));  // 1 - q^j
    r = r * QSeries::from_qpoly(ctx, f);
  }
  return r;
}

mpz_class integer_binomial(const mpz_class& u, unsigned n) {
  mpz_class r = 1;
  for (unsigned k = 1; k <= n; ++k) {
    r *= (u - static_cast<long>(k) + 1);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), k);
  }
  return r;
}

QSeries cyclotomic_series(const TruncContext& ctx, unsigned d) {
  return QSeries::from_qpoly(ctx, cyclotomic(d));
}

CyclotomicFamily CyclotomicFamily::from_polynomial(
    const ZPoly& f, const std::vector<unsigned>& levels, unsigned N) {
  std::map<unsigned, QSeries> comp;
  for (unsigned m : levels)
    comp.emplace(m, QSeries::from_qpoly(TruncContext::integral_qm(m, N), f));
  return CyclotomicFamily(std::move(comp));
}

CyclotomicFamily::CyclotomicFamily(std::map<unsigned, QSeries> components)
    : comp_(std::move(components)) {
  for (const auto& [m, fm] : comp_) {
    for (unsigned d : divisors_of(m)) {
      if (d == m) continue;
      auto it = comp_.find(d);
      if (it == comp_.end())
        throw std::invalid_argument("CyclotomicFamily: level set not divisor-closed (" +
                                    std::to_string(m) + " present, " +
                                    std::to_string(d) + " missing)");
      // the level-m component must reduce to the level-d component
      if (fm.convert(it->second.context()) != it->second)
        throw std::invalid_argument(
            "CyclotomicFamily: components at levels " + std::to_string(m) + " and " +
            std::to_string(d) + " are incompatible");
    }
  }
}

QSeries q_power_u(const TruncContext& ctx, const mpz_class& u) {
  if (!ctx.q1_basis())
    throw std::domain_error("q_power_u: requires a (q-1)-power context");
  if (ctx.base == Base::Padic && ctx.N > 1) {
    // v_p((N-1)!) must stay below K for the series to be well defined in
    // u mod p^K.
    unsigned long vp = 0;
    unsigned long pw = ctx.p;
    while (pw <= ctx.N - 1) {
      vp += (ctx.N - 1) / pw;
      if (pw > (ctx.N - 1) / ctx.p) break;
      pw *= ctx.p;
    }
    if (vp >= ctx.K)
      throw std::domain_error(
          "q_power_u: v_p((N-1)!) >= K, binomial coefficients lose all p-adic "
          "precision");
  }
  std::vector<mpq_class> v(ctx.N, mpq_class(0));
  for (unsigned n = 0; n < ctx.N; ++n) v[n] = mpq_class(integer_binomial(u, n));
  return QSeries(ctx, std::move(v));
}

}  // namespace qdr
