// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Runtime budgets are part of the criteria and are enforced here.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qderham/context.hpp"
#include "qderham/kufix.hpp"
#include "qderham/lattice.hpp"
#include "qderham/qdr_complex.hpp"
#include "qderham/qpd.hpp"
#include "qderham/qseries.hpp"
#include "qderham/zpoly.hpp"

using namespace qdr;

namespace {

struct Criterion {
  const char* name;
  double budget_s;  // <= 0: no budget enforced
  std::function<bool(std::string&)> run;
};

bool fail(std::string& why, const std::string& msg) {
  if (why.empty()) why = msg;
  return false;
}

// ---- 1: cyclotomic factorization -----------------------------------------

bool crit_cyclotomic(std::string& why) {
  for (unsigned m = 1; m <= 60; ++m) {
    ZPoly prod{1};
    for (unsigned d : divisors_of(m)) prod = zp_mul(prod, cyclotomic(d));
    if (prod != zp_qm_minus_one(m))
      return fail(why, "product of cyclotomics != q^m-1 at m=" + std::to_string(m));
  }
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u,
                     41u, 43u, 47u, 53u, 59u, 61u}) {
    ZPoly prod{1};
    for (unsigned pa = p; pa <= 64; pa *= p) {
      prod = zp_mul(prod, cyclotomic(pa));
      if (prod != q_integer_poly(pa))
        return fail(why, "[p^a]_q != product of cyclotomics at p^a=" +
                             std::to_string(pa));
    }
  }
  return true;
}

// ---- 2: q-de Rham of Z[x] -------------------------------------------------

bool crit_qdr_line(std::string& why) {
  auto ctx = TruncContext::integral(6);
  auto c = build_qdr(1, ctx, 12, 1);
  for (unsigned w = 0; w <= 12; ++w)
    for (unsigned j = 0; j + 2 <= c.nvars(); ++j) {
      const ZMat& d1 = c.differential(j, w);
      const ZMat& d2 = c.differential(j + 1, w);
      if (d1.empty() || d2.empty()) continue;
      for (const auto& row : zmat_mul(d2, d1))
        for (const auto& x : row)
          if (x != 0) return fail(why, "d o d != 0");
    }
  auto h = cohomology(c, 0);
  auto hq1 = cohomology(c.reduce_mod_q1(), 0);
  for (unsigned v = 1; v <= 12; ++v) {
    // oracle: Z[q][[q-1]] / ((q-1)^6, [v]_q) as the row lattice of
    // multiplication by [v]_q on the truncated power basis
    ZMat mult = scalar_mult_matrix(q_integer(ctx, v));
    ZMat rows(mult.size(), ZVec(mult.size()));
    for (size_t i = 0; i < mult.size(); ++i)
      for (size_t j = 0; j < mult.size(); ++j) rows[j][i] = mult[i][j];
    auto oracle = quotient_invariants(rows, mult.size());
    auto it = h.piece.find({1, v});
    auto got = it == h.piece.end() ? std::vector<mpz_class>{} : it->second;
    if (got != oracle)
      return fail(why, "H^1 mismatch at weight " + std::to_string(v));
    auto itc = hq1.piece.find({1, v});
    auto gotc = itc == hq1.piece.end() ? std::vector<mpz_class>{} : itc->second;
    std::vector<mpz_class> classical;
    if (v > 1) classical.push_back(v);
    if (gotc != classical)
      return fail(why, "classical H^1 != Z/" + std::to_string(v));
  }
  return true;
}

// ---- 3: filtration shape ---------------------------------------------------

bool crit_filtration(std::string& why) {
  const unsigned N = 6, L = 4;
  for (unsigned n = 1; n <= 3; ++n) {
    auto ctx = TruncContext::integral(N);
    auto c = build_qdr(n, ctx, 10, L);
    ZMat smul = scalar_mult_matrix(QSeries::q(ctx) - QSeries::one(ctx));
    for (unsigned w = 0; w <= 10; ++w)
      for (unsigned j = 0; j <= n; ++j) {
        size_t dim = c.basis(j, w).size();
        if (dim == 0) continue;
        std::vector<ZMat> fil(L + 1);
        for (unsigned i = 0; i <= L; ++i) fil[i] = row_hnf(c.fil_lattice(i, j, w));
        for (unsigned i = 0; i < L; ++i) {
          for (const auto& r : fil[i + 1])
            if (!hnf_contains(fil[i], r))
              return fail(why, "fil^{i+1} not inside fil^i");
          // (q-1) * fil^i lands in fil^{i+1}
          for (const auto& r : fil[i]) {
            ZVec img(r.size(), mpz_class(0));
            for (size_t el = 0; el * N < r.size(); ++el)
              for (unsigned a = 0; a < N; ++a)
                for (unsigned b = 0; b < N; ++b)
                  img[el * N + a] += smul[a][b] * r[el * N + b];
            if (!hnf_contains(fil[i + 1], img))
              return fail(why, "(q-1) fil^i not inside fil^{i+1}");
          }
        }
        for (unsigned i = 0; i <= L; ++i) {
          // graded rank after killing (q-1): project to the power-0 slot
          ZMat proj;
          for (const auto& r : fil[i]) {
            ZVec p(dim);
            for (size_t el = 0; el < dim; ++el) p[el] = r[el * N];
            proj.push_back(std::move(p));
          }
          size_t rank = row_hnf(proj).size();
          size_t hodge = i <= j ? dim : 0;
          if (rank != hodge)
            return fail(why, "graded rank != Hodge rank at n=" + std::to_string(n) +
                                 " w=" + std::to_string(w) + " j=" + std::to_string(j) +
                                 " i=" + std::to_string(i));
        }
      }
  }
  return true;
}

// ---- 4: divided power derivatives and divisibility -------------------------

bool crit_divided_powers(std::string& why) {
  for (unsigned d = 1; d <= 8; ++d)
    if (!verify_dgamma(d))
      return fail(why, "derivative identity fails at d=" + std::to_string(d));
  struct Case {
    unsigned p, alpha, deg;
  };
  for (auto [p, alpha, deg] : {Case{2, 1, 2}, Case{3, 1, 3}, Case{2, 2, 6}}) {
    auto w = check_p_power_divisibility(p, alpha, deg, TruncContext::padic(p, 5, 6));
    bool stages = true;
    for (char s : w.stage_ok) stages = stages && s;
    if (!w.ok || !stages)
      return fail(why, "divisibility witness fails at p=" + std::to_string(p) +
                           " alpha=" + std::to_string(alpha));
  }
  return true;
}

// ---- 5: ku fixed points -----------------------------------------------------

bool crit_kufix(std::string& why) {
  for (unsigned m : {1u, 2u, 3u, 4u, 6u}) {
    auto rep = fracture_assemble(m, 10, 5, 6);
    if (!rep.ok || !rep.gluing_ok)
      return fail(why, "fracture fails at m=" + std::to_string(m) + ": " + rep.status);
    for (const auto& d : rep.degrees)
      if (!d.match || !d.surjective)
        return fail(why, "fracture degree mismatch at m=" + std::to_string(m));
  }
  for (unsigned p : {2u, 3u}) {
    auto rep = genuine_pullback_check(p, 10, 6);
    if (!rep.ok) return fail(why, "pullback not exact at p=" + std::to_string(p));
    for (const auto& d : rep.degrees)
      if (!d.exact) return fail(why, "pullback degree not exact at p=" + std::to_string(p));
  }
  // beta -> (q^{p^{alpha-1}} - 1) u_{p^alpha} is a ring homomorphism
  struct Case {
    unsigned p, alpha;
  };
  for (auto [p, alpha] : {Case{2, 1}, Case{3, 1}, Case{2, 2}}) {
    unsigned m = 1;
    for (unsigned i = 0; i < alpha; ++i) m *= p;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, 5);
    ZPoly beta_img = pi_geometric_p_complete(p, alpha, 1, 5, 4).beta_image;
    auto nf = [&](ZPoly f) {
      ZPoly quo, rem;
      zp_divmod_monic(f, cyclotomic(m), quo, rem);
      for (auto& cc : rem) mpz_fdiv_r(cc.get_mpz_t(), cc.get_mpz_t(), pk.get_mpz_t());
      return zp_normalize(rem);
    };
    ZPoly claimed = zp_qm_minus_one(m / p);
    if (nf(beta_img) != nf(claimed))
      return fail(why, "beta image != q^{p^{alpha-1}}-1 at p=" + std::to_string(p) +
                           " alpha=" + std::to_string(alpha));
    std::vector<GenuineElem> samples;
    for (unsigned b = 0; b <= 2; ++b)
      for (const ZPoly& f : {ZPoly{1}, ZPoly{0, 1}, ZPoly{1, 1}, ZPoly{-2, 0, 3}})
        samples.push_back(genuine_reduce(m, b, f));
    auto phi = [&](const GenuineElem& e) {
      return nf(zp_mul(e.f, zp_pow(beta_img, e.beta)));
    };
    for (const auto& x : samples)
      for (const auto& y : samples) {
        auto xy = genuine_mul(m, x, y);
        if (xy.beta != x.beta + y.beta)
          return fail(why, "comparison map drops a u power");
        if (phi(xy) != nf(zp_mul(phi(x), phi(y))))
          return fail(why, "comparison map not multiplicative at p=" +
                               std::to_string(p) + " alpha=" + std::to_string(alpha));
      }
  }
  return true;
}

// ---- 6: Adams operations and inflation --------------------------------------

bool crit_adams_inflation(std::string& why) {
  std::vector<TruncContext> ctxs = {TruncContext::integral(10)};
  for (unsigned p : {2u, 3u, 5u}) ctxs.push_back(TruncContext::padic(p, 10, 10));
  for (const auto& ctx : ctxs) {
    std::vector<QSeries> samples = {
        q_integer(ctx, 3), QSeries::q(ctx),
        QSeries::from_qpoly(ctx, zp_from({1, -2, 0, 5})),
        QSeries::from_qpoly(ctx, zp_from({0, 0, 1, 1, 7}))};
    for (const auto& f : samples)
      for (unsigned n = 1; n <= 4; ++n)
        for (unsigned k = 1; k <= 4; ++k)
          if (!(f.adams(n).adams(k) == f.adams(n * k)))
            return fail(why, "psi^n psi^k != psi^{nk} on " + ctx.descriptor());
    if (ctx.base == Base::Padic) {
      for (long u : {-9L, -4L, -1L, 0L, 1L, 5L, 12L})
        for (long v : {-7L, -2L, 0L, 3L, 8L})
          if (!(q_power_u(ctx, u) * q_power_u(ctx, v) == q_power_u(ctx, u + v)))
            return fail(why, "q^u q^v != q^{u+v} on " + ctx.descriptor());
    }
  }
  struct Case {
    unsigned m, n;
  };
  for (auto [m, n] : {Case{1, 4}, Case{2, 3}, Case{3, 2}, Case{2, 2}}) {
    auto rep = inflation_check(m, n, 6);
    if (!rep.relation_ok || !rep.base_change_iso || !rep.ok)
      return fail(why, "inflation fails at m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
  }
  return true;
}

// ---- 7: CLI determinism ------------------------------------------------------

std::string run_cmd(const std::string& cmd, int& rc) {
  std::string out;
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) {
    rc = -1;
    return out;
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  int st = pclose(p);
  rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

bool crit_cli_determinism(std::string& why) {
  const char* dir = std::getenv("QDR_TOOL_DIR");
  const char* manifest = std::getenv("QDR_MANIFEST");
  if (!dir || !manifest)
    return fail(why, "QDR_TOOL_DIR / QDR_MANIFEST not set");
  std::string d(dir);
  std::vector<std::pair<std::string, std::string>> runs = {
      {d + "/qdr build --vars 2 --ctx 'Z;(q-1)^4' --deg 6 --fil 2 --format json", ""},
      {d + "/qdr cohomology --vars 1 --ctx 'Z;(q-1)^6' --deg 8 --level 0 --format json", ""},
      {d + "/qdr reduce-q1 --vars 1 --ctx 'Z;(q-1)^6' --deg 6 --format json", ""},
      {d + "/qdr preimage --relations 'x1^2,x2^3' --vars 2 --ctx 'Z;(q-1)^4' --deg 5 "
           "--depth 3 --format json",
       ""},
      {d + "/qpd verify --p 2 --alpha 1 --deg 2 --qprec 6 --pprec 5 --format json", ""},
      {d + "/ku pi --which genuine --m 3 --max-deg 6 --format json", ""},
      {d + "/ku pi --which hfp --m 2 --max-deg 6 --qprec 3 --format json", ""},
      {d + "/ku pi --which geom --m 6 --max-deg 6 --format json", ""},
      {d + "/ku pi --which geom-p --m 2 --p 2 --alpha 1 --pprec 5 --max-deg 6 --format json",
       ""},
      {d + "/ku pi --which tcminus --p 3 --pprec 5 --qprec 4 --max-deg 6 --format json", ""},
      {d + "/ku fracture --m 6 --max-deg 6 --qprec 6 --pprec 5 --format json", ""},
      {d + "/ku pullback --p 2 --max-deg 6 --pprec 5 --format json", ""},
      {d + "/ku inflate --m 2 --n 3 --max-deg 6 --format json", ""},
      {d + "/qcheck --manifest '" + manifest + "' --jobs 1 --format json",
       d + "/qcheck --manifest '" + manifest + "' --jobs 7 --format json"},
  };
  for (const auto& [first, second] : runs) {
    int rc1 = 0, rc2 = 0;
    std::string out1 = run_cmd(first, rc1);
    std::string out2 = run_cmd(second.empty() ? first : second, rc2);
    if (rc1 != 0 || rc2 != 0)
      return fail(why, "command failed (" + std::to_string(rc1) + "/" +
                           std::to_string(rc2) + "): " + first);
    if (out1.empty()) return fail(why, "no output: " + first);
    if (out1 != out2) return fail(why, "output differs between runs: " + first);
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"cyclotomic-factorization", 1.0, crit_cyclotomic},
      {"q-de-rham-line", 10.0, crit_qdr_line},
      {"filtration-shape", 30.0, crit_filtration},
      {"divided-powers", 20.0, crit_divided_powers},
      {"ku-fixed-points", 30.0, crit_kufix},
      {"adams-inflation", 5.0, crit_adams_inflation},
      {"cli-determinism", 0.0, crit_cli_determinism},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    std::string why;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.budget_s > 0 && secs > c.budget_s) {
      ok = false;
      why = "over budget";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "AC" << i + 1 << " " << c.name << ": " << (ok ? "PASS" : "FAIL") << " ("
         << secs << "s";
    if (c.budget_s > 0) line << ", budget " << c.budget_s << "s";
    line << ")";
    if (!ok && !why.empty()) line << " " << why;
    std::printf("%s\n", line.str().c_str());
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
