#include "qderham/checks.hpp"

#include <fnmatch.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "qderham/qdr_complex.hpp"
#include "qderham/qpd.hpp"
#include "qderham/sha256.hpp"

namespace qdr {

namespace {

constexpr uint64_t kDefaultSeed = 0x20a1b5eed;

std::string sfield(const OJson& obj, const char* key, const char* where) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw CheckConfigError(std::string(where) + ": missing string field \"" +
                           key + "\"");
  return obj.at(key).get<std::string>();
}

unsigned as_unsigned(const std::string& v, const char* key) {
  try {
    size_t pos = 0;
    unsigned long r = std::stoul(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<unsigned>(r);
  } catch (const std::exception&) {
    throw CheckConfigError(std::string("parameter \"") + key +
                           "\" is not a nonnegative integer: " + v);
  }
}

unsigned uparam(const CheckSpec& s, const char* key) {
  return as_unsigned(sfield(s.params, key, "params"), key);
}

unsigned uprec(const CheckSpec& s, const char* key) {
  return as_unsigned(sfield(s.precision, key, "precision"), key);
}

OJson mat_json(const ZMat& m) {
  OJson out = OJson::array();
  for (const auto& row : m) {
    OJson r = OJson::array();
    for (const auto& v : row) r.push_back(dec(v));
    out.push_back(std::move(r));
  }
  return out;
}

ZPoly random_zpoly(std::mt19937_64& rng, unsigned max_deg) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  ZPoly f(deg(rng) + 1);
  for (auto& c : f) c = coef(rng);
  return zp_normalize(std::move(f));
}

// ---- qring ---------------------------------------------------------------

OJson chk_cyclotomic_product(const CheckSpec& s, uint64_t) {
  unsigned m = uparam(s, "m");
  ZPoly qi = q_integer_poly(m);
  OJson factors = OJson::array();
  ZPoly prod = {1};
  for (unsigned d : divisors_of(m)) {
    if (d == 1) continue;
    prod = zp_mul(prod, cyclotomic(d));
    factors.push_back(zp_to_string(cyclotomic(d)));
  }
  OJson out;
  out["m"] = dec(m);
  out["q_integer"] = zp_to_string(qi);
  out["factors"] = std::move(factors);
  out["product_matches"] = prod == qi;
  return out;
}

OJson chk_context_roundtrip(const CheckSpec& s, uint64_t) {
  if (!s.params.contains("descriptors") || !s.params.at("descriptors").is_array())
    throw CheckConfigError("params: missing array field \"descriptors\"");
  OJson rt = OJson::array();
  bool all = true;
  for (const auto& d : s.params.at("descriptors")) {
    std::string desc = d.get<std::string>();
    std::string back = TruncContext::parse(desc).descriptor();
    rt.push_back(back);
    all = all && back == desc;
  }
  OJson out;
  out["descriptors"] = s.params.at("descriptors");
  out["roundtrip"] = std::move(rt);
  out["all_match"] = all;
  return out;
}

OJson chk_adams_composition(const CheckSpec& s, uint64_t seed) {
  unsigned samples = uparam(s, "samples");
  unsigned qprec = uprec(s, "q_prec");
  if (!s.params.contains("primes") || !s.params.at("primes").is_array())
    throw CheckConfigError("params: missing array field \"primes\"");
  std::vector<TruncContext> ctxs = {TruncContext::integral(qprec)};
  for (const auto& pv : s.params.at("primes")) {
    unsigned p = as_unsigned(pv.get<std::string>(), "primes");
    ctxs.push_back(TruncContext::padic(p, 10, qprec));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> nk(1, 5);
  std::uniform_int_distribution<long> expo(-50, 50);
  bool comp = true, add = true;
  OJson descs = OJson::array();
  for (const auto& ctx : ctxs) {
    descs.push_back(ctx.descriptor());
    for (unsigned i = 0; i < samples; ++i) {
      QSeries f = QSeries::from_qpoly(ctx, random_zpoly(rng, 6));
      unsigned n = nk(rng), k = nk(rng);
      if (f.adams(n).adams(k) != f.adams(n * k)) comp = false;
      if (ctx.base == Base::Padic) {
        mpz_class u = expo(rng), v = expo(rng);
        if (q_power_u(ctx, u) * q_power_u(ctx, v) != q_power_u(ctx, u + v))
          add = false;
      }
    }
  }
  OJson out;
  out["samples_per_context"] = dec(samples);
  out["contexts"] = std::move(descs);
  out["adams_composition"] = comp;
  out["q_power_additive"] = add;
  return out;
}

// ---- polyqdr ---------------------------------------------------------------

OJson chk_q_derivative(const CheckSpec& s, uint64_t) {
  unsigned w = uparam(s, "weight");
  unsigned qprec = uprec(s, "q_prec");
  auto ctx = TruncContext::integral(qprec);
  auto c = build_qdr(1, ctx, w, 0);
  const ZMat& d = c.differential(0, w);
  ZMat expect = scalar_mult_matrix(q_integer(ctx, w));
  OJson out;
  out["weight"] = dec(w);
  out["differential"] = mat_json(d);
  out["q_integer_action"] = mat_json(expect);
  out["equal"] = d == expect;
  return out;
}

OJson chk_fil_shape(const CheckSpec& s, uint64_t) {
  unsigned level = uparam(s, "level");
  unsigned max_w = uparam(s, "max_weight");
  unsigned qprec = uprec(s, "q_prec");
  auto c = build_qdr(1, TruncContext::integral(qprec), max_w, level);
  OJson weights = OJson::array();
  for (unsigned w = 1; w <= max_w; ++w) {
    OJson e;
    e["weight"] = dec(w);
    e["degree0_fil_rank"] = dec(c.fil_coords(level, 0, w).size());
    e["degree0_full_rank"] = dec(c.flat_dim(0, w));
    e["degree1_fil_rank"] = dec(c.fil_coords(level, 1, w).size());
    e["degree1_full_rank"] = dec(c.flat_dim(1, w));
    weights.push_back(std::move(e));
  }
  OJson out;
  out["nvars"] = "1";
  out["level"] = dec(level);
  out["weights"] = std::move(weights);
  return out;
}

// ---- qpd -------------------------------------------------------------------

OJson chk_gamma_tilde(const CheckSpec& s, uint64_t) {
  unsigned d = uparam(s, "d");
  auto ctx = TruncContext::parse(sfield(s.params, "ctx", "params"));
  auto g = gamma_tilde(d, ctx);
  OJson terms = OJson::array();
  for (const auto& [e, c] : g.numerator.terms()) {
    OJson t;
    OJson exps = OJson::array();
    for (unsigned x : e) exps.push_back(dec(x));
    t["exps"] = std::move(exps);
    OJson coeffs = OJson::array();
    for (const auto& v : c.coeffs()) coeffs.push_back(dec(v));
    t["coeffs"] = std::move(coeffs);
    terms.push_back(std::move(t));
  }
  OJson out;
  out["d"] = dec(d);
  out["numerator_terms"] = std::move(terms);
  out["denominator"] = qseries_json(g.denominator);
  return out;
}

OJson chk_derivative_identity(const CheckSpec& s, uint64_t) {
  unsigned max_d = uparam(s, "max_d");
  bool all = true;
  for (unsigned d = 1; d <= max_d; ++d) all = all && verify_dgamma(d);
  auto g = gamma_tilde(max_d, TruncContext::integral(2));
  auto dx = dgamma_dx(g);
  auto dy = dgamma_dy(g);
  OJson out;
  out["max_d"] = dec(max_d);
  out["identities_hold"] = all;
  out["dx_sign"] = dec(static_cast<long>(dx.sign));
  out["dx_drop"] = dec(max_d - dx.d);
  out["dx_y_twist"] = dec(dx.y_twist);
  out["dy_sign"] = dec(static_cast<long>(dy.sign));
  out["dy_drop"] = dec(max_d - dy.d);
  out["dy_y_twist"] = dec(dy.y_twist);
  return out;
}

OJson chk_divisibility(const CheckSpec& s, uint64_t) {
  unsigned p = uparam(s, "p");
  unsigned alpha = uparam(s, "alpha");
  unsigned deg = uparam(s, "deg");
  auto ctx = TruncContext::padic(p, uprec(s, "p_prec"), uprec(s, "q_prec"));
  auto w = check_p_power_divisibility(p, alpha, deg, ctx);
  OJson stages = OJson::array();
  for (char ok : w.stage_ok) stages.push_back(ok ? "1" : "0");
  OJson quot = OJson::array();
  for (const auto& c : w.quotient) quot.push_back(dec(c));
  OJson out;
  out["p"] = dec(p);
  out["alpha"] = dec(alpha);
  out["deg"] = dec(deg);
  out["ok"] = w.ok;
  out["stages"] = std::move(stages);
  out["quotient"] = std::move(quot);
  return out;
}

// ---- kufix -----------------------------------------------------------------

OJson chk_pi_genuine_degree(const CheckSpec& s, uint64_t) {
  unsigned m = uparam(s, "m");
  long degree = static_cast<long>(uparam(s, "degree"));
  auto pres = pi_genuine(m, degree);
  if (!pres.comp.count(degree))
    throw CheckConfigError("degree " + std::to_string(degree) + " absent");
  const auto& c = pres.comp.at(degree);
  OJson fs = OJson::array();
  for (const auto& t : c.torsion) fs.push_back(dec(t));
  OJson out;
  out["m"] = dec(m);
  out["degree"] = dec(degree);
  out["rank"] = dec(c.rank);
  out["invariant_factors"] = std::move(fs);
  out["basis_labels"] = c.basis;
  return out;
}

OJson chk_pi_genuine_ring(const CheckSpec& s, uint64_t) {
  return presentation_json(pi_genuine(uparam(s, "m"), uparam(s, "max_deg")));
}

OJson chk_hfp_comparison(const CheckSpec& s, uint64_t) {
  unsigned m = uparam(s, "m");
  unsigned tprec = uprec(s, "q_prec");
  auto eq = [&](const HfpElem& a, const HfpElem& b) {
    return hfp_normalize(1, tprec, a).cell == hfp_normalize(1, tprec, b).cell;
  };
  bool fixes_q = eq(hfp_compare_to_circle(m, tprec, hfp_gen(0, 0, {0, 1})),
                    hfp_gen(0, 0, {0, 1}));
  bool fixes_b = eq(hfp_compare_to_circle(m, tprec, hfp_gen(0, 1, {1})),
                    hfp_gen(0, 1, {1}));
  HfpElem rel = hfp_add(m, tprec,
                        hfp_mul(m, tprec, hfp_gen(0, 1, {1}), hfp_gen(1, 0, {1})),
                        hfp_gen(0, 0, zp_neg(zp_qm_minus_one(m))));
  bool rel_zero = hfp_is_zero(hfp_compare_to_circle(m, tprec, rel));
  std::vector<HfpElem> sample = {hfp_gen(0, 0, {1, 1}), hfp_gen(1, 0, {2}),
                                 hfp_gen(0, 1, {0, 0, 1}), hfp_gen(2, 0, {0, 1})};
  bool mult = true;
  unsigned products = 0;
  for (const auto& x : sample) {
    for (const auto& y : sample) {
      auto lhs = hfp_compare_to_circle(m, tprec, hfp_mul(m, tprec, x, y));
      auto rhs = hfp_mul(1, tprec, hfp_compare_to_circle(m, tprec, x),
                         hfp_compare_to_circle(m, tprec, y));
      mult = mult && eq(lhs, rhs);
      ++products;
    }
  }
  OJson out;
  out["m"] = dec(m);
  out["t_prec"] = dec(tprec);
  out["fixes_q"] = fixes_q;
  out["fixes_b"] = fixes_b;
  out["relation_maps_to_zero"] = rel_zero;
  out["products_checked"] = dec(products);
  out["multiplicative"] = mult;
  return out;
}

OJson chk_m_series(const CheckSpec& s, uint64_t) {
  unsigned m = uparam(s, "m");
  OJson coeffs = OJson::array();
  for (const auto& c : m_series(m)) coeffs.push_back(dec(c));
  OJson out;
  out["m"] = dec(m);
  out["coefficients"] = std::move(coeffs);
  return out;
}

OJson chk_pi_geometric_lattices(const CheckSpec& s, uint64_t) {
  return presentation_json(pi_geometric(uparam(s, "m"), uparam(s, "max_deg")),
                           true);
}

OJson chk_pi_geometric_localized(const CheckSpec& s, uint64_t) {
  return presentation_json(
      pi_geometric_localized(uparam(s, "m"), uprec(s, "q_prec"),
                             uparam(s, "max_deg")),
      true);
}

OJson chk_pi_geometric_p_complete(const CheckSpec& s, uint64_t) {
  return presentation_json(
      pi_geometric_p_complete(uparam(s, "p"), uparam(s, "alpha"),
                              uparam(s, "m_p"), uprec(s, "p_prec"),
                              uparam(s, "max_deg")));
}

OJson chk_tate_relation(const CheckSpec& s, uint64_t) {
  unsigned p = uparam(s, "p");
  unsigned kprec = uprec(s, "p_prec");
  unsigned nprec = uprec(s, "q_prec");
  TateElem uv = tate_mul(p, kprec, nprec, tate_gen(1, 0, {1}), tate_gen(0, 1, {1}));
  ZPoly pq = zp_compose(q_integer_poly(p), ZPoly{1, 1});
  TateElem expect = tate_normalize(p, kprec, nprec, tate_gen(0, 0, pq));
  OJson cells = OJson::array();
  for (const auto& [key, coeffs] : uv.cell) {
    OJson c;
    c["u"] = dec(key.first);
    c["v"] = dec(key.second);
    OJson cs = OJson::array();
    for (const auto& v : coeffs) cs.push_back(dec(v));
    c["coeffs"] = std::move(cs);
    cells.push_back(std::move(c));
  }
  OJson qi = OJson::array();
  for (const auto& c : pq) qi.push_back(dec(c));
  OJson out;
  out["p"] = dec(p);
  out["uv_cells"] = std::move(cells);
  out["q_integer_coeffs"] = std::move(qi);
  out["relation_holds"] = uv.cell == expect.cell;
  return out;
}

OJson chk_fracture(const CheckSpec& s, uint64_t) {
  auto rep = fracture_assemble(uparam(s, "m"), uparam(s, "max_deg"),
                               uprec(s, "p_prec"), uprec(s, "q_prec"));
  if (rep.status.rfind("insufficient", 0) == 0) throw CheckConfigError(rep.status);
  return fracture_json(rep);
}

OJson chk_pullback(const CheckSpec& s, uint64_t) {
  auto rep = genuine_pullback_check(uparam(s, "p"), uparam(s, "max_deg"),
                                    uprec(s, "p_prec"));
  if (rep.status.rfind("insufficient", 0) == 0) throw CheckConfigError(rep.status);
  return pullback_json(rep);
}

OJson chk_inflation(const CheckSpec& s, uint64_t) {
  return inflation_json(
      inflation_check(uparam(s, "m"), uparam(s, "n"), uparam(s, "max_deg")));
}

CheckResult run_one(const CheckSpec& s, uint64_t seed) {
  CheckResult r;
  r.name = s.name;
  r.module = s.module;
  r.operation = s.operation;
  r.source = s.source;
  const auto& reg = check_registry();
  auto it = reg.find(s.module + "." + s.operation);
  if (it == reg.end()) {
    r.status = "error";
    r.detail = "unknown operation " + s.module + "." + s.operation;
    return r;
  }
  try {
    OJson out = it->second(s, seed);
    r.digest = sha256_hex(canonical(out));
    if (s.digest.empty()) {
      r.status = "error";
      r.detail = "digest not pinned; computed " + r.digest;
    } else if (s.digest == r.digest) {
      r.status = "pass";
    } else {
      r.status = "mismatch";
      r.detail = "expected sha256 " + s.digest + ", got " + r.digest;
    }
  } catch (const std::exception& e) {
    r.status = "error";
    r.detail = e.what();
  }
  return r;
}

}  // namespace

const std::map<std::string, CheckFn>& check_registry() {
  static const std::map<std::string, CheckFn> reg = {
      {"qring.cyclotomic_product", chk_cyclotomic_product},
      {"qring.context_roundtrip", chk_context_roundtrip},
      {"qring.adams_composition", chk_adams_composition},
      {"polyqdr.q_derivative", chk_q_derivative},
      {"polyqdr.fil_shape", chk_fil_shape},
      {"qpd.gamma_tilde", chk_gamma_tilde},
      {"qpd.derivative_identity", chk_derivative_identity},
      {"qpd.divisibility", chk_divisibility},
      {"kufix.pi_genuine_degree", chk_pi_genuine_degree},
      {"kufix.pi_genuine_ring", chk_pi_genuine_ring},
      {"kufix.hfp_comparison", chk_hfp_comparison},
      {"kufix.m_series", chk_m_series},
      {"kufix.pi_geometric_lattices", chk_pi_geometric_lattices},
      {"kufix.pi_geometric_localized", chk_pi_geometric_localized},
      {"kufix.pi_geometric_p_complete", chk_pi_geometric_p_complete},
      {"kufix.tate_relation", chk_tate_relation},
      {"kufix.fracture", chk_fracture},
      {"kufix.pullback", chk_pullback},
      {"kufix.inflation", chk_inflation},
  };
  return reg;
}

std::vector<CheckSpec> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckConfigError("cannot open manifest " + path);
  OJson j;
  try {
    j = OJson::parse(in);
  } catch (const std::exception& e) {
    throw CheckConfigError(std::string("manifest parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("checks") || !j.at("checks").is_array())
    throw CheckConfigError("manifest: expected top-level {\"checks\": [...]}");
  std::vector<CheckSpec> specs;
  std::set<std::string> seen;
  for (const auto& e : j.at("checks")) {
    CheckSpec s;
    s.name = sfield(e, "name", "manifest entry");
    s.module = sfield(e, "module", s.name.c_str());
    s.operation = sfield(e, "operation", s.name.c_str());
    s.source = sfield(e, "source", s.name.c_str());
    if (s.source != "stated" && s.source != "derived" && s.source != "trivial")
      throw CheckConfigError(s.name + ": source must be stated, derived, or trivial");
    s.params = e.value("params", OJson::object());
    s.precision = e.value("precision", OJson::object());
    s.digest = e.value("digest", std::string());
    if (!seen.insert(s.name).second)
      throw CheckConfigError("duplicate check name " + s.name);
    specs.push_back(std::move(s));
  }
  return specs;
}

bool glob_match(const std::string& pattern, const std::string& name) {
  return fnmatch(pattern.c_str(), name.c_str(), 0) == 0;
}

CheckReport run_checks(const std::vector<CheckSpec>& specs,
                       const std::string& filter, unsigned jobs, uint64_t seed) {
  std::vector<const CheckSpec*> todo;
  for (const auto& s : specs)
    if (glob_match(filter, s.name)) todo.push_back(&s);

  CheckReport rep;
  rep.results.resize(todo.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      rep.results[i] = run_one(*todo[i], seed);
    }
  };
  size_t nworkers = std::max(1u, jobs);
  nworkers = std::min(nworkers, std::max<size_t>(todo.size(), 1));
  std::vector<std::thread> pool;
  for (size_t t = 0; t + 1 < nworkers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool any_error = false, any_mismatch = false;
  for (const auto& r : rep.results) {
    any_error = any_error || r.status == "error";
    any_mismatch = any_mismatch || r.status == "mismatch";
  }
  rep.exit_code = any_error ? 2 : any_mismatch ? 1 : 0;
  return rep;
}

uint64_t seed_from_env() {
  const char* v = std::getenv("QDR_SEED");
  if (!v || !*v) return kDefaultSeed;
  char* end = nullptr;
  unsigned long long r = std::strtoull(v, &end, 10);
  if (end && *end == '\0') return static_cast<uint64_t>(r);
  return kDefaultSeed;
}

OJson report_json(const CheckReport& rep) {
  OJson checks = OJson::array();
  unsigned pass = 0, mismatch = 0, error = 0;
  for (const auto& r : rep.results) {
    OJson e;
    e["name"] = r.name;
    e["module"] = r.module;
    e["operation"] = r.operation;
    e["source"] = r.source;
    e["status"] = r.status;
    e["digest"] = r.digest;
    e["detail"] = r.detail;
    checks.push_back(std::move(e));
    if (r.status == "pass") ++pass;
    if (r.status == "mismatch") ++mismatch;
    if (r.status == "error") ++error;
  }
  OJson out;
  out["checks"] = std::move(checks);
  OJson counts;
  counts["pass"] = dec(pass);
  counts["mismatch"] = dec(mismatch);
  counts["error"] = dec(error);
  out["counts"] = std::move(counts);
  out["exit"] = dec(static_cast<long>(rep.exit_code));
  return out;
}

std::string report_table(const CheckReport& rep) {
  size_t width = 4;
  for (const auto& r : rep.results) width = std::max(width, r.name.size());
  std::ostringstream os;
  unsigned pass = 0;
  for (const auto& r : rep.results) {
    os << r.name << std::string(width - r.name.size() + 2, ' ')
       << (r.status == "pass" ? "PASS" : r.status == "mismatch" ? "FAIL" : "ERROR");
    if (!r.detail.empty()) os << "  " << r.detail;
    os << "\n";
    if (r.status == "pass") ++pass;
  }
  os << pass << "/" << rep.results.size() << " checks passed\n";
  return os.str();
}

}  // namespace qdr
