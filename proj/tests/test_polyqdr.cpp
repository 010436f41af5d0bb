#include <random>

#include "doctest.h"
#include "qderham/habiro.hpp"
#include "qderham/preimage.hpp"
#include "qderham/qdr_complex.hpp"
#include "qderham/qpoly.hpp"

using namespace qdr;

namespace {

QSeries zpoly_series(const TruncContext& ctx, std::initializer_list<long> cs) {
  ZPoly p;
  for (long c : cs) p.push_back(c);
  return QSeries::from_qpoly(ctx, p);
}

QPolynomial random_poly(std::mt19937& rng, const TruncContext& ctx,
                        unsigned nvars, unsigned bound, unsigned max_deg) {
  QPolynomial f(ctx, nvars, bound);
  std::uniform_int_distribution<int> nterms(1, 4), cdist(-5, 5);
  for (int t = nterms(rng); t > 0; --t) {
    Exp e(nvars, 0);
    unsigned left = max_deg;
    for (unsigned i = 0; i < nvars; ++i) {
      std::uniform_int_distribution<unsigned> d(0, left);
      e[i] = d(rng);
      left -= e[i];
    }
    ZPoly c;
    for (int k = 0; k < 3; ++k) c.push_back(cdist(rng));
    QSeries s = QSeries::from_qpoly(ctx, c);
    if (!s.is_zero()) f.add_term(e, s);
  }
  return f;
}

QForm random_form(std::mt19937& rng, const TruncContext& ctx, unsigned nvars,
                  unsigned bound, unsigned deg) {
  QForm w(ctx, nvars, bound, deg);
  for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
    if (__builtin_popcount(mask) != (int)deg) continue;
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng))
      w.add_component(mask, random_poly(rng, ctx, nvars, bound,
                                        bound > deg ? bound - deg : 0));
  }
  return w;
}

bool zmat_is_zero(const ZMat& a) {
  for (const auto& r : a)
    for (const auto& x : r)
      if (x != 0) return false;
  return true;
}

// flat coordinates of s^k * x^e on the degree-0 basis of c at weight w
ZVec flat_unit(const FilteredComplex& c, unsigned w, const Exp& e, unsigned k) {
  const auto& basis = c.basis(0, w);
  unsigned dim = c.context().dim();
  ZVec v(basis.size() * dim, mpz_class(0));
  for (size_t b = 0; b < basis.size(); ++b)
    if (basis[b].exps == e) {
      v[b * dim + k] = 1;
      return v;
    }
  throw std::logic_error("flat_unit: monomial not in basis");
}

unsigned long binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned long r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("q-derivative on monomials") {
  auto ctx = TruncContext::integral(5);
  QPolynomial x3 = QPolynomial::monomial(ctx, 1, 6, {3}, QSeries::one(ctx));
  QPolynomial d = q_partial(x3, 0);
  CHECK(d.coeff({2}) == q_integer(ctx, 3));
  CHECK(d.coeff({3}).is_zero());

  QPolynomial one = QPolynomial::monomial(ctx, 1, 6, {0}, QSeries::one(ctx));
  CHECK(q_partial(one, 0).is_zero());

  QPolynomial x1x2 = QPolynomial::monomial(ctx, 2, 6, {1, 1}, QSeries::one(ctx));
  CHECK(q_partial(x1x2, 0) ==
        QPolynomial::monomial(ctx, 2, 6, {0, 1}, QSeries::one(ctx)));
  CHECK(q_partial(x1x2, 1) ==
        QPolynomial::monomial(ctx, 2, 6, {1, 0}, QSeries::one(ctx)));

  // substitution ordering fixed by the product rule at f = g = x
  QPolynomial x = QPolynomial::monomial(ctx, 1, 6, {1}, QSeries::one(ctx));
  QPolynomial lhs = q_partial(x * x, 0);
  QPolynomial rhs = q_partial(x, 0) * x + sigma_q(x, 0) * q_partial(x, 0);
  CHECK(lhs == rhs);
  CHECK(lhs.coeff({1}) == q_integer(ctx, 2));
}

TEST_CASE("twisted product rule on random pairs") {
  std::mt19937 rng(0xC0FFEE);
  std::vector<TruncContext> ctxs = {TruncContext::integral(6),
                                    TruncContext::localized(6, 1, 4),
                                    TruncContext::padic(3, 5, 4)};
  for (int iter = 0; iter < 500; ++iter) {
    const auto& ctx = ctxs[iter % ctxs.size()];
    std::uniform_int_distribution<unsigned> nv(1, 3);
    unsigned n = nv(rng);
    QPolynomial f = random_poly(rng, ctx, n, 8, 4);
    QPolynomial g = random_poly(rng, ctx, n, 8, 4);
    std::uniform_int_distribution<unsigned> vi(0, n - 1);
    unsigned i = vi(rng);
    QPolynomial lhs = q_partial(f * g, i);
    QPolynomial rhs = q_partial(f, i) * g + sigma_q(f, i) * q_partial(g, i);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("differential squares to zero on random forms") {
  std::mt19937 rng(0xBADA55);
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<unsigned> nv(1, 3), nd(2, 8), nn(1, 8);
    unsigned n = nv(rng), D = nd(rng), N = nn(rng);
    auto ctx = TruncContext::integral(N);
    std::uniform_int_distribution<unsigned> dd(0, n - 1);
    QForm w = random_form(rng, ctx, n, D, dd(rng));
    CHECK(q_nabla(q_nabla(w)).is_zero());
  }
}

TEST_CASE("built complexes: d∘d = 0 and filtration shape") {
  std::mt19937 rng(0x5EED);
  // sizes sampled within n <= 3, D <= 8, N <= 8
  std::vector<std::array<unsigned, 4>> sizes = {
      {1, 8, 8, 8}, {2, 6, 5, 4}, {2, 8, 3, 3},
      {3, 5, 3, 3}, {3, 8, 2, 2}, {3, 4, 6, 5}};
  for (auto [n, D, N, L] : sizes) {
    FilteredComplex c = build_qdr(n, TruncContext::integral(N), D, L);
    for (unsigned w = 0; w <= c.max_weight(); ++w) {
      for (unsigned j = 0; j + 1 <= n; ++j) {
        if (c.flat_dim(j, w) == 0) continue;
        ZMat dd = zmat_mul(c.differential(j + 1, w), c.differential(j, w));
        CHECK(zmat_is_zero(dd));
      }
      for (unsigned i = 0; i <= L; ++i) {
        for (unsigned j = 0; j <= n; ++j) {
          if (c.flat_dim(j, w) == 0) continue;
          auto cur = c.fil_coords(i, j, w);
          // full module from degree i up
          if (j >= i) CHECK(cur.size() == c.flat_dim(j, w));
          if (i < L) {
            auto nxt = c.fil_coords(i + 1, j, w);
            // descending chain
            CHECK(std::includes(cur.begin(), cur.end(), nxt.begin(), nxt.end()));
            // (q-1) * fil^i lands in fil^{i+1}: bump the s-power of each
            // coordinate in fil^i
            unsigned dim = c.context().dim();
            ZMat nxt_lat = c.fil_lattice(i + 1, j, w);
            for (size_t k : cur) {
              unsigned spow = k % dim;
              if (spow + 1 >= dim) continue;  // s*top truncates to 0
              ZVec shifted(c.flat_dim(j, w), mpz_class(0));
              shifted[k + 1] = 1;
              CHECK(hnf_contains(nxt_lat, std::move(shifted)));
            }
          }
          // the differential respects the filtration
          const ZMat& d = c.differential(j, w);
          if (j < n && !d.empty() && c.flat_dim(j + 1, w) > 0) {
            ZMat tgt = c.fil_lattice(i, j + 1, w);
            for (size_t k : c.fil_coords(i, j, w)) {
              ZVec col(d.size());
              for (size_t r = 0; r < d.size(); ++r) col[r] = d[r][k];
              CHECK(hnf_contains(tgt, std::move(col)));
            }
          }
        }
      }
    }
    (void)rng;
  }
}

TEST_CASE("zero-variable complex is the base ring") {
  auto ctx = TruncContext::integral(4);
  FilteredComplex c = build_qdr(0, ctx, 0, 3);
  CHECK(c.flat_dim(0, 0) == 4);
  CHECK(c.differential(0, 0).empty());
  for (unsigned i = 0; i <= 3; ++i) {
    auto coords = c.fil_coords(i, 0, 0);
    CHECK(coords.size() == 4 - i);
    for (size_t k : coords) CHECK(k >= i);
  }
}

TEST_CASE("one-variable filtration matches the announced shape") {
  auto ctx = TruncContext::integral(4);
  FilteredComplex c = build_qdr(1, ctx, 5, 2);
  for (unsigned w = 1; w <= 5; ++w) {
    auto c0 = c.fil_coords(1, 0, w);
    for (size_t k : c0) CHECK(k % 4 >= 1);  // (q-1) Z[x]
    CHECK(c0.size() == 3);
    CHECK(c.fil_coords(1, 1, w).size() == c.flat_dim(1, w));  // full dx part
  }
}

TEST_CASE("two-variable weight-2 differential matrix") {
  auto ctx = TruncContext::integral(4);
  FilteredComplex c = build_qdr(2, ctx, 4, 1);

  // d(x1^2) = [2]_q x1 dx1, d(x1 x2) = x2 dx1 + x1 dx2, d(x2^2) = [2]_q x2 dx2
  QPolynomial x1sq = QPolynomial::monomial(ctx, 2, 4, {2, 0}, QSeries::one(ctx));
  QForm f0(ctx, 2, 4, 0);
  f0.add_component(0, x1sq);
  QForm d0 = q_nabla(f0);
  CHECK(d0.component(1).coeff({1, 0}) == q_integer(ctx, 2));
  CHECK(d0.component(2).is_zero());

  QPolynomial x1x2 = QPolynomial::monomial(ctx, 2, 4, {1, 1}, QSeries::one(ctx));
  QForm f1(ctx, 2, 4, 0);
  f1.add_component(0, x1x2);
  QForm d1 = q_nabla(f1);
  CHECK(d1.component(1).coeff({0, 1}) == QSeries::one(ctx));
  CHECK(d1.component(2).coeff({1, 0}) == QSeries::one(ctx));

  // flat differential agrees: image of x1 x2 (s^0 slot) is x2 dx1 + x1 dx2
  const ZMat& d = c.differential(0, 2);
  const auto& src = c.basis(0, 2);
  const auto& tgt = c.basis(1, 2);
  unsigned dim = ctx.dim();
  size_t col = 0;
  while (!(src[col].exps == Exp{1, 1})) ++col;
  ZVec img(d.size());
  for (size_t r = 0; r < d.size(); ++r) img[r] = d[r][col * dim];
  ZVec expect(tgt.size() * dim, mpz_class(0));
  for (size_t b = 0; b < tgt.size(); ++b) {
    if (tgt[b].mask == 1 && tgt[b].exps == Exp{0, 1}) expect[b * dim] = 1;
    if (tgt[b].mask == 2 && tgt[b].exps == Exp{1, 0}) expect[b * dim] = 1;
  }
  CHECK(img == expect);
}

TEST_CASE("one-variable cohomology against the normal-form table") {
  auto ctx = TruncContext::integral(6);
  FilteredComplex c = build_qdr(1, ctx, 13, 0);
  GradedModule h = cohomology(c, 0);

  // H^0: constants only
  std::vector<mpz_class> free6(6, mpz_class(0));
  CHECK(h.piece.at({0, 0}) == free6);
  for (unsigned w = 1; w <= 13; ++w) CHECK(h.piece.count({0, w}) == 0);

  // H^1 at weight w+1 is Z[s]/(s^6, [w+1]_q); table frozen from the
  // independent Smith-form computation
  auto row = [&](unsigned w) -> std::vector<mpz_class> {
    if (!h.piece.count({1, w})) return {};
    return h.piece.at({1, w});
  };
  auto Z = [](std::initializer_list<long> v) {
    return std::vector<mpz_class>(v.begin(), v.end());
  };
  CHECK(row(1) == Z({}));
  CHECK(row(2) == Z({64}));
  CHECK(row(3) == Z({27, 27}));
  CHECK(row(4) == Z({4, 8, 128}));
  CHECK(row(5) == Z({5, 5, 25, 25}));
  CHECK(row(6) == Z({27, 1728}));
  CHECK(row(7) == Z({7, 7, 7, 7, 7, 7}));
  CHECK(row(8) == Z({2, 2, 2, 8, 16, 256}));
  CHECK(row(9) == Z({3, 3, 3, 3, 81, 81}));
  CHECK(row(10) == Z({5, 5, 25, 1600}));
  CHECK(row(11) == Z({11, 11, 11, 11, 11, 11}));
  CHECK(row(12) == Z({4, 216, 3456}));
  CHECK(row(13) == Z({13, 13, 13, 13, 13, 13}));
}

TEST_CASE("q = 1 reduction is the classical complex with Hodge shape") {
  auto ctx = TruncContext::integral(3);
  FilteredComplex c = build_qdr(1, ctx, 13, 2);
  FilteredComplex r = c.reduce_mod_q1();
  CHECK(r.context().dim() == 1);
  CHECK(r.fil_depth() == 2);

  // fil^1 = (0 -> Z[x] dx)
  for (unsigned w = 1; w <= 13; ++w) {
    CHECK(r.fil_coords(1, 0, w).empty());
    CHECK(r.fil_coords(1, 1, w).size() == r.flat_dim(1, w));
  }

  // H^1 at weight w is Z/w
  GradedModule h = cohomology(r, 0);
  CHECK(h.piece.at({0, 0}) == std::vector<mpz_class>{0});
  CHECK(h.piece.count({1, 1}) == 0);
  for (unsigned w = 2; w <= 13; ++w)
    CHECK(h.piece.at({1, w}) == std::vector<mpz_class>{w});
}

TEST_CASE("reduced graded ranks match form dimensions") {
  for (unsigned n = 1; n <= 3; ++n) {
    FilteredComplex c = build_qdr(n, TruncContext::integral(n), 10, n);
    FilteredComplex r = c.reduce_mod_q1();
    for (unsigned w = 0; w <= 10; ++w) {
      for (unsigned j = 0; j <= n; ++j) {
        // rank of weight-w degree-j forms: choose the dx subset, then a
        // monomial of degree w - j
        unsigned long expect =
            (w >= j && w - j <= 10) ? binom(n, j) * binom(w - j + n - 1, n - 1)
                                    : 0;
        CHECK(r.flat_dim(j, w) == expect);
        // Hodge shape: gr^i vanishes below degree i and is everything at i
        for (unsigned i = 0; i <= n; ++i) {
          size_t fil = r.fil_coords(i, j, w).size();
          CHECK(fil == (j >= i ? r.flat_dim(j, w) : 0));
        }
      }
    }
  }
}

TEST_CASE("habiro rescale: trivial filtration leaves the ring unchanged") {
  auto ctx = TruncContext::integral(4);
  FilteredComplex c = build_qdr(1, ctx, 3, 2);
  HabiroRescale h = habiro_hodge_rescale(c, 1, 0);
  CHECK(h.normalized_valid);
  CHECK(h.reduced_ctx.N == 4);
  for (unsigned w = 0; w <= 3; ++w) {
    size_t n = c.flat_dim(0, w);
    CHECK(lattice_equal(h.cleared[w], zmat_identity(n)));
    CHECK(lattice_equal(h.normalized[w], zmat_identity(n)));
  }
}

TEST_CASE("habiro rescale membership at m = 1, depth 2") {
  auto ctx = TruncContext::integral(4);
  FilteredComplex c = build_qdr(1, ctx, 3, 2);
  HabiroRescale h = habiro_hodge_rescale(c, 1, 2);
  for (unsigned w = 0; w <= 3; ++w) {
    Exp e{w};
    // x^w itself
    CHECK(h.contains(w, flat_unit(c, w, e, 0), 0));
    // (q-1)/(q-1) = 1
    CHECK(h.contains(w, flat_unit(c, w, e, 1), 1));
    // 1/(q-1) stays out
    CHECK_FALSE(h.contains(w, flat_unit(c, w, e, 0), 1));
    // (q-1)^2/(q-1)^2
    CHECK(h.contains(w, flat_unit(c, w, e, 2), 2));
    // (q-1)/(q-1)^2 stays out
    CHECK_FALSE(h.contains(w, flat_unit(c, w, e, 1), 2));
  }
  // per-weight cleared lattice against a direct generator enumeration
  QSeries s = QSeries::q(ctx) - QSeries::one(ctx);
  ZMat mult = scalar_mult_matrix(s);
  for (unsigned w = 0; w <= 3; ++w) {
    ZMat gens;
    for (unsigned i = 0; i <= 2; ++i)
      for (const auto& row : c.fil_lattice(i, 0, w)) {
        ZVec v = row;
        for (unsigned k = i; k < 2; ++k) v = zmat_apply(mult, v);
        gens.push_back(std::move(v));
      }
    CHECK(lattice_equal(gens, h.cleared[w]));
  }
}

TEST_CASE("habiro rescale at m = 6 clears through q^6 - 1") {
  auto ctx = TruncContext::integral(3);
  FilteredComplex c = build_qdr(1, ctx, 2, 1);
  HabiroRescale h = habiro_hodge_rescale(c, 6, 1);
  CHECK(h.normalized_valid);
  CHECK(h.reduced_ctx.N == 2);
  for (unsigned w = 0; w <= 2; ++w) {
    Exp e{w};
    CHECK(h.contains(w, flat_unit(c, w, e, 0), 0));
    CHECK(h.contains(w, flat_unit(c, w, e, 1), 1));   // (q-1)/(q^6-1)
    CHECK_FALSE(h.contains(w, flat_unit(c, w, e, 0), 1));  // 1/(q^6-1)
  }
}

TEST_CASE("habiro rescale rejects excessive depth") {
  auto ctx = TruncContext::integral(3);
  FilteredComplex c = build_qdr(1, ctx, 2, 2);
  CHECK_THROWS_AS(habiro_hodge_rescale(c, 1, 4), std::domain_error);
  CHECK_THROWS_AS(habiro_hodge_rescale(c, 1, 3), std::domain_error);
  HabiroRescale full = habiro_hodge_rescale(c, 1, 2);
  CHECK(full.i_max == 2);  // i_max = fil depth < N is fine
}

TEST_CASE("preimage filtration: order independence and chain shape") {
  auto ctx = TruncContext::integral(3);
  QuotientSpec a{2, 5, {{0, 2}, {1, 3}}};
  QuotientSpec b{2, 5, {{1, 3}, {0, 2}}};
  PreimageFiltration fa = preimage_filtration(a, ctx, 3, 1000);
  PreimageFiltration fb = preimage_filtration(b, ctx, 3, 1000);
  REQUIRE(fa.fil.size() == 4);
  for (unsigned i = 0; i <= 3; ++i) CHECK(fa.fil[i] == fb.fil[i]);

  unsigned dim = ctx.dim();
  size_t n = fa.flat_dim();
  for (unsigned i = 0; i < 3; ++i) {
    for (const auto& row : fa.fil[i + 1]) CHECK(hnf_contains(fa.fil[i], ZVec(row)));
    // (q-1) fil^i inside fil^{i+1}
    for (const auto& row : fa.fil[i]) {
      ZVec shifted(n, mpz_class(0));
      for (size_t b = 0; b * dim < n; ++b)
        for (unsigned k = 0; k + 1 < dim; ++k)
          shifted[b * dim + k + 1] = row[b * dim + k];
      CHECK(hnf_contains(fa.fil[i + 1], std::move(shifted)));
    }
  }
  // level 0 is everything
  CHECK(lattice_equal(fa.fil[0], zmat_identity(n)));
}

TEST_CASE("preimage filtration contains the (q-1)-adic part") {
  auto ctx = TruncContext::integral(4);
  QuotientSpec spec{1, 3, {}};  // no relations
  PreimageFiltration f = preimage_filtration(spec, ctx, 3, 10);
  CHECK(f.max_denominator_seen == 1);
  for (unsigned i = 0; i <= 3; ++i) {
    for (const auto& e : f.basis) {
      size_t b = std::lower_bound(f.basis.begin(), f.basis.end(), e) -
                 f.basis.begin();
      for (unsigned k = 0; k < 4; ++k) {
        ZVec v(f.flat_dim(), mpz_class(0));
        v[b * 4 + k] = 1;
        CHECK(f.contains(i, v) == (k >= i));  // pure (q-1)-adic filtration
      }
    }
  }
}

TEST_CASE("preimage filtration of x^2: divided elements enter level 1") {
  auto ctx = TruncContext::integral(4);
  QuotientSpec spec{1, 4, {{0, 2}}};
  PreimageFiltration f = preimage_filtration(spec, ctx, 3, 10);
  auto unit = [&](unsigned e, unsigned k) {
    ZVec v(f.flat_dim(), mpz_class(0));
    v[e * 4 + k] = 1;  // basis sorted: x^0, x^1, x^2, x^3, x^4
    return v;
  };
  // x^2 has divided-power depth 1, x has none
  CHECK(f.contains(1, unit(2, 0)));
  CHECK_FALSE(f.contains(1, unit(1, 0)));
  CHECK(f.contains(1, unit(0, 1)));       // (q-1)
  CHECK(f.contains(2, unit(2, 1)));       // (q-1) x^2
  CHECK(f.contains(2, unit(4, 0)));       // x^4, depth 2
  CHECK_FALSE(f.contains(2, unit(2, 0)));
  CHECK(f.max_denominator_seen == 2);     // (x^2)^[2] carries 1/2!
}

TEST_CASE("preimage filtration mod (q-1) is the Hodge filtration") {
  auto ctx = TruncContext::integral(1);
  QuotientSpec spec{2, 4, {{0, 2}, {1, 2}}};
  PreimageFiltration f = preimage_filtration(spec, ctx, 2, 10);
  for (unsigned i = 0; i <= 2; ++i) {
    for (size_t b = 0; b < f.basis.size(); ++b) {
      ZVec v(f.flat_dim(), mpz_class(0));
      v[b] = 1;
      CHECK(f.contains(i, v) == (spec.depth(f.basis[b]) >= i));
    }
  }
}

TEST_CASE("preimage filtration enforces the denominator bound") {
  auto ctx = TruncContext::integral(2);
  QuotientSpec spec{1, 6, {{0, 1}}};
  CHECK_THROWS_AS(preimage_filtration(spec, ctx, 2, 100), std::domain_error);
  PreimageFiltration f = preimage_filtration(spec, ctx, 2, 1000);
  CHECK(f.max_denominator_seen == 720);
}

TEST_CASE("preimage filtration rejects bad quotient data") {
  auto ctx = TruncContext::integral(2);
  CHECK_THROWS_AS(
      preimage_filtration(QuotientSpec{1, 3, {{0, 2}, {0, 3}}}, ctx, 1, 10),
      std::invalid_argument);
  CHECK_THROWS_AS(
      preimage_filtration(QuotientSpec{1, 3, {{2, 2}}}, ctx, 1, 10),
      std::invalid_argument);
  CHECK_THROWS_AS(
      preimage_filtration(QuotientSpec{1, 3, {{0, 0}}}, ctx, 1, 10),
      std::invalid_argument);
}
