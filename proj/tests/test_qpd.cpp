#include "doctest.h"
#include "qderham/qpd.hpp"

using namespace qdr;

namespace {

int vp(unsigned p, mpz_class n) {
  if (n == 0) return 0;
  if (n < 0) n = -n;
  int r = 0;
  while (n % p == 0) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++r;
  }
  return r;
}

// block of the (graded) envelope lattice living on the degree-w monomials
ScaledLattice degree_block(const EnvelopeLattice& env, unsigned w) {
  unsigned N = env.ctx.N;
  size_t start = 0;
  while (env.monomials[start].first + env.monomials[start].second != w) ++start;
  size_t cols = (w + 1) * N;
  ScaledLattice out{env.lat.den, {}, cols};
  for (const auto& row : env.lat.rows) {
    bool inside = false, outside = false;
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0) continue;
      if (j >= start * N && j < start * N + cols) inside = true;
      else outside = true;
    }
    REQUIRE_FALSE((inside && outside));  // generators are homogeneous
    if (inside)
      out.rows.emplace_back(row.begin() + start * N,
                            row.begin() + start * N + cols);
  }
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("gamma_tilde numerators and denominators") {
  auto ctx = TruncContext::integral(8);
  QDividedPower g0 = gamma_tilde(0, ctx);
  CHECK(g0.numerator.coeff({0, 0}) == QSeries::one(ctx));
  CHECK(g0.denominator == QSeries::one(ctx));

  QDividedPower g1 = gamma_tilde(1, ctx);
  CHECK(g1.numerator.coeff({1, 0}) == QSeries::one(ctx));
  CHECK(g1.numerator.coeff({0, 1}) == -QSeries::one(ctx));
  CHECK(g1.denominator == QSeries::from_qpoly(ctx, zp_from({1, -1})));

  // N_2 = x^2 - (1+q) xy + q y^2, (q;q)_2 = 1 - q - q^2 + q^3
  QDividedPower g2 = gamma_tilde(2, ctx);
  CHECK(g2.numerator.coeff({2, 0}) == QSeries::one(ctx));
  CHECK(g2.numerator.coeff({1, 1}) == QSeries::from_qpoly(ctx, zp_from({-1, -1})));
  CHECK(g2.numerator.coeff({0, 2}) == QSeries::from_qpoly(ctx, zp_from({0, 1})));
  CHECK(g2.denominator == QSeries::from_qpoly(ctx, zp_from({1, -1, -1, 1})));

  // N_3 = x^3 - (1+q+q^2) x^2 y + (q+q^2+q^3) x y^2 - q^3 y^3
  QDividedPower g3 = gamma_tilde(3, ctx);
  CHECK(g3.numerator.coeff({3, 0}) == QSeries::one(ctx));
  CHECK(g3.numerator.coeff({2, 1}) ==
        QSeries::from_qpoly(ctx, zp_from({-1, -1, -1})));
  CHECK(g3.numerator.coeff({1, 2}) ==
        QSeries::from_qpoly(ctx, zp_from({0, 1, 1, 1})));
  CHECK(g3.numerator.coeff({0, 3}) ==
        QSeries::from_qpoly(ctx, zp_from({0, 0, 0, -1})));
}

TEST_CASE("derivative identities hold exactly through d = 8") {
  for (unsigned d = 1; d <= 8; ++d) CHECK(verify_dgamma(d));

  auto ctx = TruncContext::integral(6);
  QDividedPower g2 = gamma_tilde(2, ctx);
  GammaImage dx = dgamma_dx(g2);
  CHECK(dx.sign == 1);
  CHECK(dx.d == 1);
  CHECK(dx.y_twist == 0);
  QDividedPower g3 = gamma_tilde(3, ctx);
  GammaImage dy = dgamma_dy(g3);
  CHECK(dy.sign == -1);
  CHECK(dy.d == 2);
  CHECK(dy.y_twist == 1);
  CHECK_THROWS_AS(dgamma_dx(gamma_tilde(0, ctx)), std::domain_error);
}

TEST_CASE("envelope at degree 0 is the scalar lattice") {
  auto ctx = TruncContext::padic(2, 4, 3);
  EnvelopeLattice env = envelope_generate(2, 0, ctx);
  CHECK(env.flat_dim() == 3);
  CHECK(env.lat.den == 1);
  CHECK(lattice_equal(env.lat.rows, zmat_identity(3)));
}

TEST_CASE("envelope strictly extends the monomial lattice at p = 2") {
  auto ctx = TruncContext::padic(2, 4, 4);
  EnvelopeLattice env = envelope_generate(2, 2, ctx);
  CHECK(env.lat.den > 1);
  CHECK(vp(2, env.lat.den) > 0);
  CHECK(env.lat.den == (mpz_class(1) << vp(2, env.lat.den)));  // pure 2-power

  QVec g2 = scaled_gamma_coords(env, 2, 0, 0);
  CHECK(env.contains(g2));
  ScaledLattice monomial{1, zmat_identity(env.flat_dim()),
                         env.flat_dim()};
  CHECK_FALSE(monomial.contains(g2));

  // every monomial is in the envelope
  for (size_t i = 0; i < env.flat_dim(); ++i) {
    QVec e(env.flat_dim(), mpq_class(0));
    e[i] = 1;
    CHECK(env.contains(e));
  }
}

TEST_CASE("scaled divided powers and their products lie in the envelope") {
  for (unsigned p : {2u, 3u}) {
    auto ctx = TruncContext::padic(p, 4, 4);
    EnvelopeLattice env = envelope_generate(p, 6, ctx);
    for (unsigned d = 0; d <= 6; ++d)
      CHECK(env.contains(scaled_gamma_coords(env, d, 0, 0)));
    // monomial shifts
    CHECK(env.contains(scaled_gamma_coords(env, 2, 1, 2)));
    CHECK(env.contains(scaled_gamma_coords(env, 3, 3, 0)));
    // closure on generator pairs within the bound
    for (unsigned d1 = 2; d1 <= 4; ++d1)
      for (unsigned d2 = d1; d1 + d2 <= 6; ++d2) {
        QVec prod = envelope_product(env, scaled_gamma_coords(env, d1, 0, 0),
                                     scaled_gamma_coords(env, d2, 0, 0));
        CHECK(env.contains(prod));
      }
    QVec mixed = envelope_product(env, scaled_gamma_coords(env, 2, 0, 1),
                                  scaled_gamma_coords(env, 3, 0, 0));
    CHECK(env.contains(mixed));
  }
}

TEST_CASE("q = 1 envelope equals the classical divided-power lattice") {
  // frozen p-valuations of the classical covolume per degree
  std::map<unsigned, std::vector<int>> frozen = {
      {2, {0, 0, -1, -2, -5, -8, -12}}, {3, {0, 0, 0, -1, -2, -3, -5}}};
  for (unsigned p : {2u, 3u}) {
    unsigned K = 5;
    auto ctx = TruncContext::padic(p, K, 1);
    EnvelopeLattice env = envelope_generate(p, 6, ctx);
    for (unsigned w = 0; w <= 6; ++w) {
      ScaledLattice block = degree_block(env, w);
      // classical lattice: x^a y^b (x-y)^c / p^{vp(c!)} plus p^K units
      QMat rows;
      for (unsigned c = 0; c <= w; ++c) {
        mpz_class fact = 1;
        for (unsigned i = 2; i <= c; ++i) fact *= i;
        mpz_class scale(1);
        for (int e = vp(p, fact); e > 0; --e) scale *= p;
        for (unsigned a = 0; a + c <= w; ++a) {
          unsigned b = w - c - a;
          // (x-y)^c expanded: x^{c-i} y^i carries (-1)^i binom(c,i)
          QVec row(w + 1, mpq_class(0));
          mpz_class bin = 1;
          for (unsigned i = 0; i <= c; ++i) {
            // slot of x^{a+c-i} y^{b+i}: monomials sorted by x-exponent
            mpq_class coef(i % 2 ? -bin : bin, scale);
            row[a + c - i] += coef;
            bin = bin * (c - i) / (i + 1);
          }
          rows.push_back(std::move(row));
        }
      }
      mpz_class pk = 1;
      for (unsigned i = 0; i < K; ++i) pk *= p;
      for (unsigned i = 0; i <= w; ++i) {
        QVec unit(w + 1, mpq_class(0));
        unit[i] = mpq_class(pk);
        rows.push_back(std::move(unit));
      }
      ScaledLattice classical = scaled_from_rational(rows, w + 1);
      CHECK(block == classical);

      mpz_class index = lattice_index_in_zn(block.rows, w + 1);
      int covol = vp(p, index) - int(w + 1) * vp(p, block.den);
      CHECK(covol == frozen[p][w]);
    }
  }
}

TEST_CASE("divisibility witness at p = 2, alpha = 1") {
  auto ctx = TruncContext::padic(2, 5, 6);
  DivisibilityWitness w = check_p_power_divisibility(2, 1, 2, ctx);
  CHECK(w.ok);
  REQUIRE(w.stage_ok.size() == 1);
  CHECK(w.stage_ok[0] == 1);
  CHECK(w.qprec == 6);
  CHECK(w.pprec == 5);

  // quotient = (x^2 - y^2)/(1+q): x^2 and y^2 blocks carry the series of
  // 1/(2+s), coefficient (-1)^k / 2^{k+1}; everything else vanishes
  EnvelopeLattice env = envelope_generate(2, 2, ctx);
  size_t bx = env.monomial_index(2, 0), by = env.monomial_index(0, 2);
  for (unsigned k = 0; k < 6; ++k) {
    mpq_class expect(k % 2 ? -1 : 1, mpz_class(1) << (k + 1));
    CHECK(w.quotient[bx * 6 + k] == expect);
    CHECK(w.quotient[by * 6 + k] == -expect);
  }
  for (size_t i = 0; i < w.quotient.size(); ++i) {
    size_t b = i / 6;
    if (b != bx && b != by) CHECK(w.quotient[i] == 0);
  }

  // the decomposition quotient = (q-1)^2 gamma~^2 + (x-y) y certifies
  // membership independently
  QVec expect = scaled_gamma_coords(env, 2, 0, 0);
  expect[env.monomial_index(1, 1) * 6] += 1;
  expect[env.monomial_index(0, 2) * 6] -= 1;
  CHECK(w.quotient == expect);
}

TEST_CASE("divisibility witnesses at (3,1) and (2,2)") {
  auto ctx3 = TruncContext::padic(3, 5, 6);
  DivisibilityWitness w3 = check_p_power_divisibility(3, 1, 3, ctx3);
  CHECK(w3.ok);

  auto ctx2 = TruncContext::padic(2, 5, 6);
  DivisibilityWitness w4 = check_p_power_divisibility(2, 2, 6, ctx2);
  CHECK(w4.ok);
  REQUIRE(w4.stage_ok.size() == 2);
  CHECK(w4.stage_ok[0] == 1);
  CHECK(w4.stage_ok[1] == 1);
}

TEST_CASE("staged division equals division by the full q-analog") {
  auto ctx = TruncContext::padic(2, 5, 6);
  DivisibilityWitness staged = check_p_power_divisibility(2, 2, 4, ctx);
  CHECK(staged.ok == (staged.stage_ok[0] && staged.stage_ok[1]));

  // divide x^4 - y^4 by [4]_q = Phi_2 Phi_4 in one shot and compare
  EnvelopeLattice env = envelope_generate(2, 4, ctx);
  QVec v(env.flat_dim(), mpq_class(0));
  v[env.monomial_index(4, 0) * 6] = 1;
  v[env.monomial_index(0, 4) * 6] = -1;
  QVec inv4(6, mpq_class(0));
  {
    // 1/[4]_q as a series in s = q-1, by inverting 4 + 6s + 4s^2 + s^3
    std::vector<mpq_class> f = {4, 6, 4, 1, 0, 0};
    inv4[0] = mpq_class(1) / f[0];
    for (unsigned k = 1; k < 6; ++k) {
      mpq_class acc = 0;
      for (unsigned i = 0; i < k; ++i) acc += inv4[i] * f[k - i];
      inv4[k] = -acc / f[0];
    }
  }
  QVec direct(env.flat_dim(), mpq_class(0));
  for (size_t b = 0; b < env.monomials.size(); ++b)
    for (unsigned i = 0; i < 6; ++i) {
      if (v[b * 6 + i] == 0) continue;
      for (unsigned j = 0; i + j < 6; ++j)
        direct[b * 6 + i + j] += v[b * 6 + i] * inv4[j];
    }
  CHECK(direct == staged.quotient);
  CHECK(env.contains(direct) == staged.ok);
}

TEST_CASE("non-members are rejected") {
  auto ctx = TruncContext::padic(2, 5, 6);
  EnvelopeLattice env = envelope_generate(2, 2, ctx);
  // x^2/[2]_q alone is not in the envelope (its q = 1 image x^2/2 is not a
  // classical divided power)
  QVec v(env.flat_dim(), mpq_class(0));
  size_t b = env.monomial_index(2, 0);
  for (unsigned k = 0; k < 6; ++k)
    v[b * 6 + k] = mpq_class(k % 2 ? -1 : 1, mpz_class(1) << (k + 1));
  CHECK_FALSE(env.contains(v));

  // same at precision 1, directly against the classical lattice
  auto ctx1 = TruncContext::padic(2, 5, 1);
  EnvelopeLattice env1 = envelope_generate(2, 2, ctx1);
  QVec v1(env1.flat_dim(), mpq_class(0));
  v1[env1.monomial_index(2, 0)] = mpq_class(1, 2);
  CHECK_FALSE(env1.contains(v1));
}

TEST_CASE("divisibility check validates its bounds") {
  auto ctx = TruncContext::padic(2, 5, 6);
  CHECK_THROWS_AS(check_p_power_divisibility(2, 2, 3, ctx), std::domain_error);
  CHECK_THROWS_AS(envelope_generate(3, 4, ctx), std::invalid_argument);
  CHECK_THROWS_AS(envelope_generate(2, 4, TruncContext::integral(4)),
                  std::invalid_argument);
}
