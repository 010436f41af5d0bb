#include "qderham/kufix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qdr {

namespace {

mpz_class zpow(const mpz_class& b, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

ZPoly poly_mod(const ZPoly& a, const ZPoly& monic) {
  ZPoly q, r;
  zp_divmod_monic(a, monic, q, r);
  return r;
}

ZVec poly_coords(const ZPoly& f, size_t n) {
  if (f.size() > n) throw std::invalid_argument("poly_coords: degree too large");
  ZVec v(n, 0);
  for (size_t i = 0; i < f.size(); ++i) v[i] = f[i];
  return v;
}

// Matrix of multiplication by g on Z[q]/(monic), acting on column vectors of
// power-basis coordinates.
ZMat mult_matrix_mod(const ZPoly& g, const ZPoly& monic) {
  size_t n = static_cast<size_t>(zp_deg(monic));
  ZMat w(n, ZVec(n, 0));
  ZPoly col = poly_mod(g, monic);
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < col.size(); ++i) w[i][j] = col[i];
    col.insert(col.begin(), 0);  // multiply by q
    col = poly_mod(col, monic);
  }
  return w;
}

QMat zmat_to_q(const ZMat& a) {
  QMat out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i].resize(a[i].size());
    for (size_t j = 0; j < a[i].size(); ++j) out[i][j] = mpq_class(a[i][j]);
  }
  return out;
}

QMat qmat_identity(size_t n) {
  QMat out(n, QVec(n, mpq_class(0)));
  for (size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat out(n, QVec(m, mpq_class(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

QMat qmat_pow(const QMat& a, unsigned e) {
  QMat out = qmat_identity(a.size());
  for (unsigned i = 0; i < e; ++i) out = qmat_mul(out, a);
  return out;
}

// Exact Gauss-Jordan inverse; throws on a singular matrix.
QMat qmat_inverse(const QMat& a) {
  size_t n = a.size();
  QMat w = a;
  QMat inv = qmat_identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && w[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("qmat_inverse: singular");
    std::swap(w[piv], w[c]);
    std::swap(inv[piv], inv[c]);
    mpq_class d = w[c][c];
    for (size_t j = 0; j < n; ++j) {
      w[c][j] /= d;
      inv[c][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      mpq_class f = w[r][c];
      for (size_t j = 0; j < n; ++j) {
        w[r][j] -= f * w[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

ZMat zmat_pow(const ZMat& a, unsigned e) {
  ZMat out = zmat_identity(a.size());
  for (unsigned i = 0; i < e; ++i) out = zmat_mul(out, a);
  return out;
}

ZMat scalar_rows(const mpz_class& c, size_t n) {
  ZMat out = zmat_identity(n);
  for (size_t i = 0; i < n; ++i) out[i][i] = c;
  return out;
}

// Intersection of two integer row spans via the kernel of the stacked
// coefficient system.
ZMat lattice_intersection(const ZMat& a, const ZMat& b, size_t n) {
  if (a.empty() || b.empty()) return {};
  size_t ra = a.size(), rb = b.size();
  ZMat sys(n, ZVec(ra + rb, 0));
  for (size_t i = 0; i < ra; ++i)
    for (size_t c = 0; c < n; ++c) sys[c][i] = a[i][c];
  for (size_t j = 0; j < rb; ++j)
    for (size_t c = 0; c < n; ++c) sys[c][ra + j] = -b[j][c];
  ZMat ker = z_kernel(sys, ra + rb);
  ZMat rows;
  rows.reserve(ker.size());
  for (const auto& kr : ker) {
    ZVec x(n, 0);
    for (size_t i = 0; i < ra; ++i)
      for (size_t c = 0; c < n; ++c) x[c] += kr[i] * a[i][c];
    rows.push_back(std::move(x));
  }
  return row_hnf(std::move(rows));
}

std::vector<std::pair<unsigned, unsigned>> prime_factorization(unsigned m) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    unsigned a = 0;
    while (m % p == 0) m /= p, ++a;
    out.emplace_back(p, a);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string pow_label(const std::string& g, unsigned e) {
  if (e == 0) return "";
  if (e == 1) return g;
  return g + "^" + std::to_string(e);
}

std::string join_mono(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += "*";
    out += p;
  }
  return out.empty() ? "1" : out;
}

std::string qm1_label(unsigned m, unsigned e) {
  if (e == 0) return "";
  std::string base = m == 1 ? "(q-1)" : "(q^" + std::to_string(m) + "-1)";
  return pow_label(base, e);
}

// Renders (1/den) * sum row[j] q^j times b^beta_pow.
std::string q_comb_label(const mpz_class& den, const ZVec& row, unsigned beta_pow) {
  std::vector<std::pair<size_t, mpq_class>> terms;
  for (size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    mpq_class c(row[j], den);
    c.canonicalize();
    terms.emplace_back(j, c);
  }
  std::string b = pow_label("b", beta_pow);
  if (terms.empty()) return "0";
  if (terms.size() == 1) {
    auto [j, c] = terms[0];
    std::string mono = join_mono({b, pow_label("q", static_cast<unsigned>(j))});
    if (c == 1) return mono;
    if (c == -1) return "-" + mono;
    if (mono == "1") return c.get_str();
    return c.get_str() + "*" + mono;
  }
  std::string inner;
  bool first = true;
  for (auto& [j, c] : terms) {
    mpq_class a = c;
    if (first) {
      if (a < 0) inner += "-", a = -a;
    } else {
      inner += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono = pow_label("q", static_cast<unsigned>(j));
    if (mono.empty())
      inner += a.get_str();
    else if (a == 1)
      inner += mono;
    else
      inner += a.get_str() + "*" + mono;
    first = false;
  }
  if (b.empty()) return inner;
  return b + "*(" + inner + ")";
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ---- ring elements ------------------------------------------------------

GenuineElem genuine_reduce(unsigned m, unsigned beta, ZPoly f) {
  require(m >= 1, "genuine_reduce: m >= 1");
  ZPoly r(m, 0);
  for (size_t i = 0; i < f.size(); ++i) r[i % m] += f[i];
  return GenuineElem{beta, zp_normalize(std::move(r))};
}

GenuineElem genuine_mul(unsigned m, const GenuineElem& a, const GenuineElem& b) {
  return genuine_reduce(m, a.beta + b.beta, zp_mul(a.f, b.f));
}

bool genuine_is_zero(const GenuineElem& a) { return zp_is_zero(a.f); }

HfpElem hfp_gen(unsigned t_pow, unsigned beta_pow, ZPoly f) {
  HfpElem x;
  if (!zp_is_zero(f)) x.cell[{t_pow, beta_pow}] = std::move(f);
  return x;
}

HfpElem hfp_normalize(unsigned m, unsigned nprec, HfpElem x) {
  require(m >= 1 && nprec >= 1, "hfp: m >= 1 and t-precision >= 1");
  ZPoly qm1 = zp_qm_minus_one(m);
  HfpElem out;
  for (auto& [key, f] : x.cell) {
    auto [a, b] = key;
    unsigned r = std::min(a, b);
    a -= r;
    b -= r;
    if (a >= nprec) continue;
    ZPoly g = f;
    for (unsigned i = 0; i < r; ++i) g = zp_mul(g, qm1);
    g = poly_mod(g, zp_pow(qm1, nprec - a));
    if (zp_is_zero(g)) continue;
    auto it = out.cell.find({a, b});
    if (it == out.cell.end())
      out.cell[{a, b}] = std::move(g);
    else {
      it->second = poly_mod(zp_add(it->second, g), zp_pow(qm1, nprec - a));
      if (zp_is_zero(it->second)) out.cell.erase(it);
    }
  }
  return out;
}

HfpElem hfp_add(unsigned m, unsigned nprec, const HfpElem& a, const HfpElem& b) {
  HfpElem x = a;
  for (const auto& [key, f] : b.cell) {
    auto it = x.cell.find(key);
    if (it == x.cell.end())
      x.cell[key] = f;
    else
      it->second = zp_add(it->second, f);
  }
  return hfp_normalize(m, nprec, std::move(x));
}

HfpElem hfp_mul(unsigned m, unsigned nprec, const HfpElem& a, const HfpElem& b) {
  HfpElem x;
  for (const auto& [ka, fa] : a.cell)
    for (const auto& [kb, fb] : b.cell) {
      std::pair<unsigned, unsigned> key{ka.first + kb.first, ka.second + kb.second};
      ZPoly prod = zp_mul(fa, fb);
      auto it = x.cell.find(key);
      if (it == x.cell.end())
        x.cell[key] = std::move(prod);
      else
        it->second = zp_add(it->second, prod);
    }
  return hfp_normalize(m, nprec, std::move(x));
}

bool hfp_is_zero(const HfpElem& x) { return x.cell.empty(); }

HfpElem hfp_compare_to_circle(unsigned m, unsigned nprec, const HfpElem& x) {
  ZPoly mq = q_integer_poly(m);
  HfpElem out;
  for (const auto& [key, f] : x.cell) {
    ZPoly g = zp_mul(f, zp_pow(mq, key.first));
    auto it = out.cell.find(key);
    if (it == out.cell.end())
      out.cell[key] = std::move(g);
    else
      it->second = zp_add(it->second, g);
  }
  return hfp_normalize(1, nprec, std::move(out));
}

namespace {

std::vector<mpz_class> svec_reduce(std::vector<mpz_class> v, const mpz_class& pk,
                                   unsigned nprec) {
  if (v.size() > nprec) v.resize(nprec);
  for (auto& c : v) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    c = r;
  }
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

std::vector<mpz_class> svec_mul(const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b, unsigned nprec) {
  std::vector<mpz_class> out(std::min<size_t>(nprec, a.size() + b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j + i < out.size() && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TateElem tate_gen(unsigned u_pow, unsigned v_pow, std::vector<mpz_class> s_coeffs) {
  TateElem x;
  x.cell[{u_pow, v_pow}] = std::move(s_coeffs);
  return x;
}

TateElem tate_normalize(unsigned p, unsigned kprec, unsigned nprec, TateElem x) {
  require(is_prime(p), "tate: p prime");
  require(kprec >= 1 && nprec >= 1, "tate: positive precision");
  mpz_class pk = zpow(p, kprec);
  // [p]_q expanded in s = q-1.
  std::vector<mpz_class> pq = zp_compose(q_integer_poly(p), zp_from({1, 1}));
  TateElem out;
  for (auto& [key, f] : x.cell) {
    auto [a, b] = key;
    unsigned r = std::min(a, b);
    a -= r;
    b -= r;
    std::vector<mpz_class> g = f;
    for (unsigned i = 0; i < r; ++i) g = svec_mul(g, pq, nprec);
    g = svec_reduce(std::move(g), pk, nprec);
    if (g.empty()) continue;
    auto it = out.cell.find({a, b});
    if (it == out.cell.end())
      out.cell[{a, b}] = std::move(g);
    else {
      std::vector<mpz_class> s = it->second;
      s.resize(std::max(s.size(), g.size()), 0);
      for (size_t i = 0; i < g.size(); ++i) s[i] += g[i];
      s = svec_reduce(std::move(s), pk, nprec);
      if (s.empty())
        out.cell.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return out;
}

TateElem tate_mul(unsigned p, unsigned kprec, unsigned nprec, const TateElem& a,
                  const TateElem& b) {
  TateElem x;
  for (const auto& [ka, fa] : a.cell)
    for (const auto& [kb, fb] : b.cell) {
      std::pair<unsigned, unsigned> key{ka.first + kb.first, ka.second + kb.second};
      auto prod = svec_mul(fa, fb, nprec);
      auto it = x.cell.find(key);
      if (it == x.cell.end())
        x.cell[key] = std::move(prod);
      else {
        auto& s = it->second;
        s.resize(std::max(s.size(), prod.size()), 0);
        for (size_t i = 0; i < prod.size(); ++i) s[i] += prod[i];
      }
    }
  return tate_normalize(p, kprec, nprec, std::move(x));
}

bool tate_is_zero(const TateElem& x) { return x.cell.empty(); }

// ---- presentations ------------------------------------------------------

GradedRingPresentation pi_genuine(unsigned m, long degree_bound) {
  require(m >= 1, "pi_genuine: m >= 1");
  GradedRingPresentation pres;
  pres.m = m;
  pres.display =
      m == 1 ? "Z[b]" : "Z[b,q]/(" + zp_to_string(zp_qm_minus_one(m)) + ")";
  for (long d = 0; d <= degree_bound; d += 2) {
    unsigned k = static_cast<unsigned>(d / 2);
    DegreeComponent c;
    c.degree = d;
    c.rank = m;
    for (unsigned j = 0; j < m; ++j)
      c.basis.push_back(join_mono({pow_label("b", k), pow_label("q", j)}));
    c.lattice = ScaledLattice{1, zmat_identity(m), m};
    pres.comp[d] = std::move(c);
  }
  return pres;
}

GradedRingPresentation pi_homotopy_fixed(unsigned m, long degree_bound,
                                         unsigned nprec) {
  require(m >= 1 && nprec >= 1, "pi_homotopy_fixed: m >= 1, t-precision >= 1");
  GradedRingPresentation pres;
  pres.m = m;
  pres.prec.q_prec = nprec;
  std::string t = m == 1 ? "t" : "t" + std::to_string(m);
  pres.display = "Z[b,q][[" + t + "]]/(b*" + t + "-" +
                 (m == 1 ? std::string("(q-1)")
                         : "(q^" + std::to_string(m) + "-1)") +
                 ")";
  long top = degree_bound - (degree_bound % 2);
  for (long d = -top; d <= top; d += 2) {
    unsigned k = static_cast<unsigned>(d >= 0 ? d / 2 : -d / 2);
    DegreeComponent c;
    c.degree = d;
    if (d >= 0) {
      c.rank = m * nprec;
      for (unsigned i = 0; i < nprec; ++i)
        for (unsigned j = 0; j < m; ++j)
          c.basis.push_back(
              join_mono({pow_label("b", k), pow_label("q", j), qm1_label(m, i)}));
    } else {
      if (k >= nprec) continue;
      c.rank = m * (nprec - k);
      for (unsigned i = 0; i + k < nprec; ++i)
        for (unsigned j = 0; j < m; ++j)
          c.basis.push_back(
              join_mono({pow_label(t, k), pow_label("q", j), qm1_label(m, i)}));
    }
    pres.comp[d] = std::move(c);
  }
  return pres;
}

std::vector<mpz_class> m_series(unsigned m) {
  require(m >= 1, "m_series: m >= 1");
  std::vector<mpz_class> out(m);
  for (unsigned j = 1; j <= m; ++j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), m, j);
    out[j - 1] = b;
  }
  return out;
}

QMat geometric_degree_generators(unsigned m, unsigned k) {
  require(m >= 1, "geometric_degree_generators: m >= 1");
  size_t n = euler_phi(m);
  const ZPoly& phi = cyclotomic(m);
  auto primes = prime_factorization(m);
  std::vector<QMat> winv;
  winv.reserve(primes.size());
  for (auto [p, a] : primes) {
    (void)a;
    ZPoly g = poly_mod(zp_qm_minus_one(m / p), phi);
    winv.push_back(qmat_inverse(zmat_to_q(mult_matrix_mod(g, phi))));
  }
  QMat rows;
  // Exponent vectors c over the primes of m with |c| <= k, lexicographic.
  std::vector<unsigned> c(primes.size(), 0);
  while (true) {
    unsigned total = 0;
    for (unsigned ci : c) total += ci;
    if (total <= k) {
      QMat v = qmat_identity(n);
      for (size_t i = 0; i < c.size(); ++i) v = qmat_mul(v, qmat_pow(winv[i], c[i]));
      for (size_t j = 0; j < n; ++j) {
        QVec row(n);
        for (size_t i = 0; i < n; ++i) row[i] = v[i][j];
        rows.push_back(std::move(row));
      }
    }
    size_t pos = c.size();
    while (pos > 0) {
      --pos;
      if (c[pos] < k) {
        ++c[pos];
        std::fill(c.begin() + pos + 1, c.end(), 0u);
        break;
      }
      if (pos == 0) return rows;
    }
    if (c.empty()) return rows;
    bool done = true;
    for (unsigned ci : c)
      if (ci != 0) done = false;
    if (done) return rows;
  }
}

GradedRingPresentation pi_geometric(unsigned m, long degree_bound) {
  require(m >= 1, "pi_geometric: m >= 1");
  size_t n = euler_phi(m);
  GradedRingPresentation pres;
  pres.m = m;
  pres.display = m == 1 ? "Z[b]"
                        : "Z[b,t][1/[d]_ku(t), d|" + std::to_string(m) +
                              " proper]/([" + std::to_string(m) +
                              "]_ku(t)), degrees >= 0";
  for (long d = 0; d <= degree_bound; d += 2) {
    unsigned k = static_cast<unsigned>(d / 2);
    DegreeComponent c;
    c.degree = d;
    c.lattice = scaled_from_rational(geometric_degree_generators(m, k), n);
    c.rank = static_cast<unsigned>(c.lattice.rows.size());
    for (const auto& row : c.lattice.rows)
      c.basis.push_back(q_comb_label(c.lattice.den, row, k));
    pres.comp[d] = std::move(c);
  }
  return pres;
}

GradedRingPresentation pi_geometric_localized(unsigned m, unsigned nprec,
                                              long degree_bound) {
  require(m >= 1 && nprec >= 1, "pi_geometric_localized: m >= 1, precision >= 1");
  size_t n = euler_phi(m);
  GradedRingPresentation pres;
  pres.m = m;
  pres.prec.q_prec = nprec;
  pres.display = m == 1 ? "Z[b]"
                        : "Z[1/" + std::to_string(m) + "][b,q]/(" +
                              zp_to_string(cyclotomic(m)) + ")";
  mpz_class den = zpow(m, nprec);
  for (long d = 0; d <= degree_bound; d += 2) {
    unsigned k = static_cast<unsigned>(d / 2);
    DegreeComponent c;
    c.degree = d;
    c.lattice = ScaledLattice{den, zmat_identity(n), n};
    c.lattice.canonicalize();
    c.rank = static_cast<unsigned>(n);
    for (const auto& row : c.lattice.rows)
      c.basis.push_back(q_comb_label(c.lattice.den, row, k));
    pres.comp[d] = std::move(c);
  }
  return pres;
}

GradedRingPresentation pi_geometric_p_complete(unsigned p, unsigned alpha,
                                               unsigned m_p, unsigned kprec,
                                               long degree_bound) {
  require(is_prime(p), "pi_geometric_p_complete: p prime");
  require(alpha >= 1 && m_p >= 1 && kprec >= 1,
          "pi_geometric_p_complete: positive parameters");
  require(m_p % p != 0, "pi_geometric_p_complete: m_p prime to p");
  unsigned pa = 1;
  for (unsigned i = 0; i < alpha; ++i) pa *= p;
  unsigned m = pa * m_p;
  size_t n = euler_phi(m);
  GradedRingPresentation pres;
  pres.m = m;
  pres.prec.p = p;
  pres.prec.p_prec = kprec;
  pres.beta_image = poly_mod(zp_qm_minus_one(m / p), cyclotomic(m));
  std::string u = "u" + std::to_string(pa);
  pres.display = "Z_" + std::to_string(p) + "[" + u + ",q]/(" +
                 zp_to_string(cyclotomic(m)) + "), mod " + std::to_string(p) +
                 "^" + std::to_string(kprec);
  if (m_p > 1) pres.display += ", base changed along psi^" + std::to_string(m_p);
  for (long d = 0; d <= degree_bound; d += 2) {
    unsigned k = static_cast<unsigned>(d / 2);
    DegreeComponent c;
    c.degree = d;
    c.rank = static_cast<unsigned>(n);
    for (unsigned j = 0; j < n; ++j)
      c.basis.push_back(join_mono({pow_label(u, k), pow_label("q", j)}));
    c.lattice = ScaledLattice{1, zmat_identity(n), n};
    pres.comp[d] = std::move(c);
  }
  return pres;
}

GradedRingPresentation tc_minus_zpzeta(unsigned p, unsigned kprec, unsigned nprec,
                                       long degree_bound) {
  require(is_prime(p), "tc_minus_zpzeta: p prime");
  require(kprec >= 1 && nprec >= 1, "tc_minus_zpzeta: positive precision");
  GradedRingPresentation pres;
  pres.m = p;
  pres.prec = PrecisionTriple{p, kprec, nprec};
  pres.display = "Z_" + std::to_string(p) + "[[q-1]][u,v]/(u*v-[" +
                 std::to_string(p) + "]_q), mod " + std::to_string(p) + "^" +
                 std::to_string(kprec) + ", O((q-1)^" + std::to_string(nprec) + ")";
  long top = degree_bound - (degree_bound % 2);
  for (long d = -top; d <= top; d += 2) {
    unsigned k = static_cast<unsigned>(d >= 0 ? d / 2 : -d / 2);
    DegreeComponent c;
    c.degree = d;
    c.rank = nprec;
    std::string head = d == 0 ? "" : pow_label(d > 0 ? "u" : "v", k);
    for (unsigned i = 0; i < nprec; ++i)
      c.basis.push_back(join_mono({head, pow_label("(q-1)", i)}));
    pres.comp[d] = std::move(c);
  }
  return pres;
}

// ---- maps and consistency checks ---------------------------------------

GenuineElem inflate(unsigned m, unsigned n, const GenuineElem& x) {
  require(m >= 1 && n >= 1, "inflate: m, n >= 1");
  return genuine_reduce(m * n, x.beta, zp_subst_pow(x.f, n));
}

InflationReport inflation_check(unsigned m, unsigned n, long degree_bound) {
  require(m >= 1 && n >= 1, "inflation_check: m, n >= 1");
  InflationReport rep;
  rep.m = m;
  rep.n = n;
  rep.bound = degree_bound;
  rep.relation_ok =
      genuine_is_zero(genuine_reduce(m * n, 0, zp_subst_pow(zp_qm_minus_one(m), n)));
  // Base change of Z[b,q']/(q'^m-1) along q' -> q^n has Z-basis q'^j (x) q^i
  // with j < m, i < n; the map to Z[b,q]/(q^{mn}-1) sends it to q^{nj+i}.
  size_t nm = static_cast<size_t>(m) * n;
  rep.base_change_iso = true;
  for (long d = 0; d <= degree_bound; d += 2) {
    ZMat rows;
    for (unsigned j = 0; j < m; ++j)
      for (unsigned i = 0; i < n; ++i) {
        ZVec r(nm, 0);
        r[(static_cast<size_t>(n) * j + i) % nm] = 1;
        rows.push_back(std::move(r));
      }
    if (!lattice_equal(rows, zmat_identity(nm))) rep.base_change_iso = false;
  }
  rep.ok = rep.relation_ok && rep.base_change_iso;
  return rep;
}

FractureDatum fracture_datum(unsigned m, long degree_bound, unsigned kprec,
                             unsigned nprec) {
  FractureDatum datum;
  datum.m = m;
  datum.localized = pi_geometric_localized(m, nprec, degree_bound);
  for (auto [p, a] : prime_factorization(m)) {
    unsigned pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    datum.p_complete.push_back(
        pi_geometric_p_complete(p, a, m / pa, kprec, degree_bound));
  }
  return datum;
}

FractureReport fracture_assemble(unsigned m, long degree_bound, unsigned kprec,
                                 unsigned nprec) {
  require(m >= 1 && kprec >= 1 && nprec >= 1,
          "fracture_assemble: positive parameters");
  FractureReport rep;
  rep.m = m;
  rep.kprec = kprec;
  rep.nprec = nprec;
  rep.bound = degree_bound;

  size_t n = euler_phi(m);
  const ZPoly& phi = cyclotomic(m);
  auto primes = prime_factorization(m);
  std::vector<ZMat> w;
  std::vector<QMat> winv;
  std::vector<unsigned> palpha;
  for (auto [p, a] : primes) {
    ZPoly g = poly_mod(zp_qm_minus_one(m / p), phi);
    w.push_back(mult_matrix_mod(g, phi));
    winv.push_back(qmat_inverse(zmat_to_q(w.back())));
    palpha.push_back(a);
  }

  // Gluing maps preserve the defining relations: the cyclotomic relation and
  // q^m-1 die in every p-complete piece, multiplication by q commutes with
  // the beta-to-u substitution, and substitution powers compose.
  rep.gluing_ok = zp_is_zero(poly_mod(zp_qm_minus_one(m), phi)) &&
                  zp_is_zero(poly_mod(phi, phi));
  ZMat qmat = mult_matrix_mod(zp_from({0, 1}), phi);
  for (const auto& wp : w) {
    if (zmat_mul(wp, qmat) != zmat_mul(qmat, wp)) rep.gluing_ok = false;
    for (unsigned a = 1; a <= 2 && rep.gluing_ok; ++a)
      for (unsigned b = 1; b <= 2; ++b)
        if (zmat_mul(zmat_pow(wp, a), zmat_pow(wp, b)) != zmat_pow(wp, a + b))
          rep.gluing_ok = false;
  }

  GradedRingPresentation reference = pi_geometric(m, degree_bound);
  mpz_class mn = zpow(m, nprec);
  ScaledLattice localized{mn, zmat_identity(n), n};
  localized.canonicalize();

  bool all_ok = rep.gluing_ok;
  std::string first_bad;
  for (long d = 0; d <= degree_bound; d += 2) {
    unsigned k = static_cast<unsigned>(d / 2);
    FractureDegree fd;
    fd.degree = d;

    // Pullback: denominators bounded by m^nprec, and for each p the image
    // under multiplication by (q^{m/p}-1)^k must be p-integral.
    ZMat zlat = zmat_identity(n);
    bool first = true;
    for (size_t i = 0; i < primes.size(); ++i) {
      ZMat target = row_hnf(scalar_rows(zpow(primes[i].first, nprec * palpha[i]), n));
      ZMat pre = preimage_lattice(zmat_pow(w[i], k), target, n);
      zlat = first ? pre : lattice_intersection(zlat, pre, n);
      first = false;
    }
    ScaledLattice pullback{mn, std::move(zlat), n};
    pullback.canonicalize();

    const ScaledLattice& geo = reference.comp.at(d).lattice;
    fd.rank_pullback = static_cast<unsigned>(pullback.rows.size());
    fd.rank_reference = static_cast<unsigned>(geo.rows.size());
    fd.match = pullback == geo;

    // Joint surjectivity at the declared denominator budget: the localized
    // piece and the p-complete pieces together span the full truncated
    // rational ambient.
    QMat cover;
    for (size_t j = 0; j < n; ++j) {
      QVec row(n, mpq_class(0));
      row[j] = mpq_class(1, mn);
      cover.push_back(std::move(row));
    }
    bool prec_ok = true;
    for (size_t i = 0; i < primes.size(); ++i) {
      QMat vk = qmat_pow(winv[i], k);
      mpz_class den = 1;
      for (const auto& row : vk)
        for (const auto& c : row) {
          mpz_class l;
          mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
          den = l;
        }
      mpz_class budget = zpow(primes[i].first, nprec * palpha[i]);
      if (!mpz_divisible_p(budget.get_mpz_t(), den.get_mpz_t())) prec_ok = false;
      for (size_t j = 0; j < n; ++j) {
        QVec row(n);
        for (size_t r = 0; r < n; ++r) row[r] = vk[r][j];
        cover.push_back(std::move(row));
      }
    }
    if (!prec_ok) {
      rep.ok = false;
      rep.status = "insufficient precision at degree " + std::to_string(d);
      rep.degrees.push_back(fd);
      return rep;
    }
    fd.surjective = scaled_from_rational(cover, n) == localized;

    if (!(fd.match && fd.surjective) && first_bad.empty())
      first_bad = "mismatch at degree " + std::to_string(d);
    all_ok = all_ok && fd.match && fd.surjective;
    rep.degrees.push_back(std::move(fd));
  }
  rep.ok = all_ok;
  rep.status = all_ok ? "ok" : (first_bad.empty() ? "gluing map check failed" : first_bad);
  return rep;
}

PullbackReport genuine_pullback_check(unsigned p, long degree_bound, unsigned kprec) {
  require(is_prime(p), "genuine_pullback_check: p prime");
  require(kprec >= 1, "genuine_pullback_check: precision >= 1");
  PullbackReport rep;
  rep.p = p;
  rep.kprec = kprec;
  rep.bound = degree_bound;
  if (kprec < 2) {
    // Mod p the corner presentations collapse: (q-1)^(p-1) and Phi_p(q) are
    // indistinguishable, so no exactness statement can be tested.
    rep.ok = false;
    rep.status = "insufficient precision";
    return rep;
  }

  const ZPoly& phi = cyclotomic(p);
  size_t nphi = p - 1;
  mpz_class pk = zpow(p, kprec);
  ZMat pk_target = row_hnf(scalar_rows(pk, nphi));

  bool all_ok = true;
  std::string first_bad;
  long top = degree_bound - (degree_bound % 2);
  for (long d = -top; d <= top; d += 2) {
    PullbackDegree pd;
    pd.degree = d;
    if (d >= 0) {
      unsigned k = static_cast<unsigned>(d / 2);
      size_t dim = p + nphi;
      // Difference map out of the homotopy-fixed and geometric corners into
      // the Tate corner, on column coordinates.
      ZPoly qm1k = zp_pow(zp_from({-1, 1}), k);
      ZMat cols(nphi, ZVec(dim, 0));
      ZMat image_rows;
      for (unsigned j = 0; j < p; ++j) {
        ZPoly f(j + 1, 0);
        f[j] = 1;
        ZVec c = poly_coords(poly_mod(zp_mul(qm1k, f), phi), nphi);
        for (size_t i = 0; i < nphi; ++i) cols[i][j] = c[i];
        ZVec row(dim, 0);
        row[j] = 1;
        for (size_t i = 0; i < nphi; ++i) row[p + i] = c[i];
        image_rows.push_back(std::move(row));
      }
      for (size_t i = 0; i < nphi; ++i) cols[i][p + i] = -1;

      ZMat kernel = preimage_lattice(cols, pk_target, dim);
      for (size_t i = 0; i < dim; ++i) {
        ZVec row(dim, 0);
        row[i] = pk;
        image_rows.push_back(std::move(row));
      }
      pd.exact = lattice_equal(kernel, image_rows);

      ZMat mrows(dim, ZVec(nphi));
      for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < nphi; ++j) mrows[i][j] = cols[j][i];
      pd.kernel_rank = static_cast<unsigned>(dim - row_hnf(mrows).size());
    } else {
      // Genuine and geometric corners vanish; the difference map is the
      // identity from the homotopy-fixed corner onto the Tate corner.
      ZMat kernel = preimage_lattice(zmat_identity(nphi), pk_target, nphi);
      pd.exact = lattice_equal(kernel, scalar_rows(pk, nphi));
      pd.kernel_rank = 0;
    }
    if (!pd.exact && first_bad.empty())
      first_bad = "mismatch at degree " + std::to_string(d);
    all_ok = all_ok && pd.exact;
    rep.degrees.push_back(std::move(pd));
  }
  rep.ok = all_ok;
  rep.status = all_ok ? "ok" : first_bad;
  return rep;
}

}  // namespace qdr
