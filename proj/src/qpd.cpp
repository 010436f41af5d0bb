#include "qderham/qpd.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdr {

namespace {

using QV = std::vector<mpq_class>;

// coefficients of f(1+s) mod s^N
QV s_series(const ZPoly& f, unsigned N) {
  QV out(N, mpq_class(0));
  for (size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0) continue;
    mpz_class bin = 1;
    for (unsigned j = 0; j < N && j <= k; ++j) {
      out[j] += mpq_class(f[k] * bin);
      bin = bin * mpz_class(k - j) / mpz_class(j + 1);
    }
  }
  return out;
}

QV series_mul(const QV& a, const QV& b, unsigned N) {
  QV out(N, mpq_class(0));
  for (unsigned i = 0; i < N; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; i + j < N; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

QV series_inverse(const QV& f, unsigned N) {
  if (f[0] == 0) throw std::domain_error("series_inverse: zero constant term");
  QV out(N, mpq_class(0));
  out[0] = 1 / f[0];
  for (unsigned k = 1; k < N; ++k) {
    mpq_class acc = 0;
    for (unsigned i = 0; i < k; ++i) acc += out[i] * f[k - i];
    out[k] = -acc / f[0];
  }
  return out;
}

// exact two-variable polynomials with Z[q] coefficients
using XYPoly = std::map<std::pair<unsigned, unsigned>, ZPoly>;

void xy_add_term(XYPoly& p, unsigned a, unsigned b, const ZPoly& c) {
  ZPoly& slot = p[{a, b}];
  slot = zp_add(slot, c);
  if (zp_is_zero(slot)) p.erase({a, b});
}

// multiply by (x - q^j y)
XYPoly xy_mul_linear(const XYPoly& p, unsigned j) {
  XYPoly out;
  ZPoly qj(j + 1, mpz_class(0));
  qj[j] = 1;
  for (const auto& [e, c] : p) {
    xy_add_term(out, e.first + 1, e.second, c);
    xy_add_term(out, e.first, e.second + 1, zp_neg(zp_mul(c, qj)));
  }
  return out;
}

XYPoly xy_one() {
  XYPoly p;
  p[{0, 0}] = ZPoly{1};
  return p;
}

// (x - y)(x - qy)...(x - q^{d-1}y), exactly
XYPoly numerator_poly(unsigned d) {
  XYPoly p = xy_one();
  for (unsigned j = 0; j < d; ++j) p = xy_mul_linear(p, j);
  return p;
}

XYPoly xy_mul(const XYPoly& p, const XYPoly& r) {
  XYPoly out;
  for (const auto& [e, c] : p)
    for (const auto& [f, g] : r)
      xy_add_term(out, e.first + f.first, e.second + f.second, zp_mul(c, g));
  return out;
}

ZPoly q_factorial_poly(unsigned d) {
  ZPoly f{1};
  for (unsigned i = 1; i <= d; ++i) f = zp_mul(f, q_integer_poly(i));
  return f;
}

// all multisets of parts >= 2 with sum <= bound, as non-increasing vectors
void enumerate_multisets(unsigned bound, unsigned max_part, std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out) {
  out.push_back(cur);
  for (unsigned d = std::min(bound, max_part); d >= 2; --d) {
    cur.push_back(d);
    enumerate_multisets(bound - d, d, cur, out);
    cur.pop_back();
  }
}

mpz_class prime_to_p_part(const mpz_class& n, unsigned p) {
  mpz_class out = n < 0 ? mpz_class(-n) : n;
  while (out % p == 0) mpz_divexact_ui(out.get_mpz_t(), out.get_mpz_t(), p);
  return out;
}

// flat rational coordinates of poly * scal on the envelope basis
QV flatten(const EnvelopeLattice& env, const XYPoly& poly, const QV& scal) {
  unsigned N = env.ctx.N;
  QV row(env.flat_dim(), mpq_class(0));
  for (const auto& [e, c] : poly) {
    size_t b = env.monomial_index(e.first, e.second);
    QV cs = series_mul(s_series(c, N), scal, N);
    for (unsigned k = 0; k < N; ++k) row[b * N + k] = cs[k];
  }
  return row;
}

}  // namespace

QDividedPower gamma_tilde(unsigned d, const TruncContext& ctx) {
  QPolynomial num(ctx, 2, d);
  XYPoly p = numerator_poly(d);
  for (const auto& [e, c] : p)
    num.add_term({e.first, e.second}, QSeries::from_qpoly(ctx, c));
  return QDividedPower{d, std::move(num), q_pochhammer(ctx, d)};
}

GammaImage dgamma_dx(const QDividedPower& g) {
  if (g.d == 0) throw std::domain_error("dgamma_dx: d must be >= 1");
  return GammaImage{1, g.d - 1, 0};
}

GammaImage dgamma_dy(const QDividedPower& g) {
  if (g.d == 0) throw std::domain_error("dgamma_dy: d must be >= 1");
  return GammaImage{-1, g.d - 1, 1};
}

bool verify_dgamma(unsigned d) {
  if (d == 0) return false;
  // exact in Z[q][x,y]: take enough (q-1)-precision to hold every q-degree
  unsigned N = d * (d - 1) / 2 + d + 2;
  auto ctx = TruncContext::integral(N);
  QDividedPower g = gamma_tilde(d, ctx);
  QDividedPower h = gamma_tilde(d - 1, ctx);
  QSeries one_minus_q = QSeries::one(ctx) - QSeries::q(ctx);
  QSeries one_minus_qd = QSeries::one(ctx) - QSeries::q(ctx).pow(d);

  QPolynomial lhs_x = q_partial(g.numerator, 0).scaled(one_minus_q);
  QPolynomial rhs_x = h.numerator.scaled(one_minus_qd);
  if (lhs_x != rhs_x) return false;

  QPolynomial lhs_y = q_partial(g.numerator, 1).scaled(one_minus_q);
  QPolynomial rhs_y = sigma_q(h.numerator, 1).scaled(-one_minus_qd);
  return lhs_y == rhs_y;
}

bool EnvelopeLattice::contains(QVec v) const {
  mpz_class den = 1;
  for (const auto& c : v) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    den = l;
  }
  mpz_class unit = prime_to_p_part(den, p);
  if (unit != 1)
    for (auto& c : v) c *= mpq_class(unit);
  return lat.contains(v);
}

size_t EnvelopeLattice::monomial_index(unsigned a, unsigned b) const {
  auto it = std::lower_bound(
      monomials.begin(), monomials.end(), std::make_pair(a, b),
      [](const std::pair<unsigned, unsigned>& l, const std::pair<unsigned, unsigned>& r) {
        unsigned ld = l.first + l.second, rd = r.first + r.second;
        return ld != rd ? ld < rd : l.first < r.first;
      });
  if (it == monomials.end() || *it != std::make_pair(a, b))
    throw std::invalid_argument("EnvelopeLattice: monomial outside the degree bound");
  return it - monomials.begin();
}

EnvelopeLattice envelope_generate(unsigned p, unsigned D, const TruncContext& ctx) {
  if (ctx.base != Base::Padic || ctx.p != p)
    throw std::invalid_argument("envelope_generate: context must be p-adic at the same prime");
  if (!ctx.q1_basis())
    throw std::invalid_argument("envelope_generate: (q-1)-power context required");

  EnvelopeLattice env;
  env.ctx = ctx;
  env.p = p;
  env.degree_bound = D;
  for (unsigned w = 0; w <= D; ++w)
    for (unsigned a = 0; a <= w; ++a) env.monomials.emplace_back(a, w - a);

  unsigned N = ctx.N;
  size_t n = env.flat_dim();

  std::vector<std::vector<unsigned>> multisets;
  std::vector<unsigned> cur;
  enumerate_multisets(D, D, cur, multisets);

  QMat gens;
  for (const auto& ms : multisets) {
    unsigned total = 0;
    XYPoly poly = xy_one();
    ZPoly fact{1};
    for (unsigned d : ms) {
      total += d;
      poly = xy_mul(poly, numerator_poly(d));
      fact = zp_mul(fact, q_factorial_poly(d));
    }
    QV scal = series_inverse(s_series(fact, N), N);
    if (total % 2 == 1)
      for (auto& c : scal) c = -c;
    for (unsigned a = 0; a + total <= D; ++a) {
      for (unsigned b = 0; a + b + total <= D; ++b) {
        XYPoly shifted;
        for (const auto& [e, c] : poly)
          shifted[{e.first + a, e.second + b}] = c;
        QV base = flatten(env, shifted, scal);
        // row denominators are normalized to pure p-powers
        mpz_class den = 1;
        for (const auto& c : base) {
          mpz_class l;
          mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
          den = l;
        }
        mpz_class unit = prime_to_p_part(den, p);
        if (unit != 1)
          for (auto& c : base) c *= mpq_class(unit);
        for (unsigned k = 0; k < N; ++k) {
          // multiply by s^k: shift within every monomial block
          QV row(n, mpq_class(0));
          for (size_t bl = 0; bl * N < n; ++bl)
            for (unsigned i = 0; i + k < N; ++i)
              row[bl * N + i + k] = base[bl * N + i];
          gens.push_back(std::move(row));
        }
      }
    }
  }
  // The lattice contains p^K Z^n, so after clearing the common p-power
  // denominator the HNF can run with all entries reduced mod p^K * den.
  mpz_class den = 1;
  for (const auto& row : gens)
    for (const auto& c : row) {
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      den = l;
    }
  ZMat scaled(gens.size(), ZVec(n));
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < n; ++j) {
      mpq_class v = gens[i][j] * den;
      scaled[i][j] = v.get_num();
    }
  env.lat.den = den;
  env.lat.ncols = n;
  env.lat.rows = row_hnf_with_modulus(std::move(scaled), ctx.char_modulus() * den, n);
  env.lat.canonicalize();
  return env;
}

QVec scaled_gamma_coords(const EnvelopeLattice& env, unsigned d, unsigned a,
                         unsigned b) {
  unsigned N = env.ctx.N;
  XYPoly poly = numerator_poly(d);
  XYPoly shifted;
  for (const auto& [e, c] : poly) shifted[{e.first + a, e.second + b}] = c;
  QV scal = series_inverse(s_series(q_factorial_poly(d), N), N);
  if (d % 2 == 1)
    for (auto& c : scal) c = -c;
  return flatten(env, shifted, scal);
}

QVec envelope_product(const EnvelopeLattice& env, const QVec& a, const QVec& b) {
  unsigned N = env.ctx.N;
  if (a.size() != env.flat_dim() || b.size() != env.flat_dim())
    throw std::invalid_argument("envelope_product: shape");
  QVec out(env.flat_dim(), mpq_class(0));
  for (size_t i = 0; i < env.monomials.size(); ++i) {
    QV ai(a.begin() + i * N, a.begin() + (i + 1) * N);
    bool ai_zero = std::all_of(ai.begin(), ai.end(),
                               [](const mpq_class& c) { return c == 0; });
    if (ai_zero) continue;
    for (size_t j = 0; j < env.monomials.size(); ++j) {
      QV bj(b.begin() + j * N, b.begin() + (j + 1) * N);
      bool bj_zero = std::all_of(bj.begin(), bj.end(),
                                 [](const mpq_class& c) { return c == 0; });
      if (bj_zero) continue;
      unsigned u = env.monomials[i].first + env.monomials[j].first;
      unsigned v = env.monomials[i].second + env.monomials[j].second;
      size_t tgt = env.monomial_index(u, v);  // throws beyond the bound
      QV prod = series_mul(ai, bj, N);
      for (unsigned k = 0; k < N; ++k) out[tgt * N + k] += prod[k];
    }
  }
  return out;
}

DivisibilityWitness check_p_power_divisibility(unsigned p, unsigned alpha,
                                               unsigned deg,
                                               const TruncContext& ctx) {
  unsigned power = 1;
  for (unsigned i = 0; i < alpha; ++i) power *= p;
  if (power > deg)
    throw std::domain_error("check_p_power_divisibility: degree bound below p^alpha");

  EnvelopeLattice env = envelope_generate(p, deg, ctx);
  unsigned N = ctx.N;
  QVec v(env.flat_dim(), mpq_class(0));
  v[env.monomial_index(power, 0) * N] = 1;
  v[env.monomial_index(0, power) * N] = -1;

  DivisibilityWitness w;
  w.p = p;
  w.alpha = alpha;
  w.deg = deg;
  w.qprec = ctx.N;
  w.pprec = ctx.K;
  w.ok = true;
  unsigned q = 1;
  for (unsigned i = 1; i <= alpha; ++i) {
    q *= p;
    QV inv = series_inverse(s_series(cyclotomic(q), N), N);
    for (size_t bl = 0; bl * N < v.size(); ++bl) {
      QV block(v.begin() + bl * N, v.begin() + (bl + 1) * N);
      QV prod = series_mul(block, inv, N);
      for (unsigned k = 0; k < N; ++k) v[bl * N + k] = prod[k];
    }
    bool okstage = env.contains(v);
    w.stage_ok.push_back(okstage ? 1 : 0);
    if (!okstage) w.ok = false;
  }
  w.quotient = v;
  return w;
}

}  // namespace qdr
