#include "qderham/context.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

namespace qdr {

TruncContext TruncContext::integral(unsigned N) {
  TruncContext c;
  c.qmod = QMod::QOnePow;
  c.N = N;
  return c;
}

TruncContext TruncContext::integral_qm(unsigned m, unsigned N) {
  TruncContext c;
  c.qmod = QMod::QmOnePow;
  c.m = m;
  c.N = N;
  return c;
}

TruncContext TruncContext::localized(const mpz_class& M, unsigned m, unsigned N) {
  TruncContext c;
  c.base = Base::IntLoc;
  c.loc_m = M;
  c.qmod = m == 1 ? QMod::QOnePow : QMod::QmOnePow;
  c.m = m;
  c.N = N;
  return c;
}

TruncContext TruncContext::padic(unsigned p, unsigned K, unsigned N) {
  TruncContext c;
  c.base = Base::Padic;
  c.p = p;
  c.K = K;
  c.qmod = QMod::QOnePow;
  c.N = N;
  return c;
}

TruncContext TruncContext::padic_qm(unsigned p, unsigned K, unsigned m, unsigned N) {
  TruncContext c = padic(p, K, N);
  c.qmod = QMod::QmOnePow;
  c.m = m;
  return c;
}

TruncContext TruncContext::padic_cyc(unsigned p, unsigned K, unsigned m, unsigned N) {
  TruncContext c = padic(p, K, N);
  c.qmod = QMod::CycPow;
  c.m = m;
  return c;
}

TruncContext TruncContext::integral_cyc(unsigned m, unsigned N) {
  TruncContext c;
  c.qmod = QMod::CycPow;
  c.m = m;
  c.N = N;
  return c;
}

TruncContext TruncContext::localized_cyc(const mpz_class& M, unsigned m, unsigned N) {
  TruncContext c = integral_cyc(m, N);
  c.base = Base::IntLoc;
  c.loc_m = M;
  return c;
}

unsigned TruncContext::dim() const {
  switch (qmod) {
    case QMod::QOnePow: return N;
    case QMod::QmOnePow: return m * N;
    case QMod::CycPow: return euler_phi(m) * N;
  }
  throw std::logic_error("unreachable");
}

ZPoly TruncContext::modulus() const {
  switch (qmod) {
    case QMod::QOnePow: return zp_pow(zp_from({-1, 1}), N);
    case QMod::QmOnePow: return zp_pow(zp_qm_minus_one(m), N);
    case QMod::CycPow: return zp_pow(cyclotomic(m), N);
  }
  throw std::logic_error("unreachable");
}

mpz_class TruncContext::char_modulus() const {
  if (base != Base::Padic) return 0;
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, K);
  return r;
}

bool TruncContext::operator==(const TruncContext& o) const {
  if (base != o.base || qmod != o.qmod || N != o.N) return false;
  if (qmod != QMod::QOnePow && m != o.m) return false;
  if (base == Base::IntLoc && loc_m != o.loc_m) return false;
  if (base == Base::Padic && (p != o.p || K != o.K)) return false;
  return true;
}

std::string TruncContext::descriptor() const {
  std::ostringstream os;
  switch (base) {
    case Base::Int: os << "Z"; break;
    case Base::IntLoc: os << "Z[1/" << loc_m.get_str() << "]"; break;
    case Base::Padic: os << "Zp(" << p << "," << K << ")"; break;
  }
  os << ";";
  switch (qmod) {
    case QMod::QOnePow: os << "(q-1)^" << N; break;
    case QMod::QmOnePow:
      if (m == 1)
        os << "(q-1)^" << N;
      else
        os << "(q^" << m << "-1)^" << N;
      break;
    case QMod::CycPow: os << "Phi_" << m << "(q)^" << N; break;
  }
  return os.str();
}

TruncContext TruncContext::parse(const std::string& d) {
  auto semi = d.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("context descriptor: missing ';' in \"" + d + "\"");
  std::string bs = d.substr(0, semi), qs = d.substr(semi + 1);
  TruncContext c;

  static const std::regex re_int(R"(^\s*Z\s*$)");
  static const std::regex re_loc(R"(^\s*Z\[1/(\d+)\]\s*$)");
  static const std::regex re_padic(R"(^\s*Zp\((\d+),(\d+)\)\s*$)");
  std::smatch mb;
  if (std::regex_match(bs, mb, re_int)) {
    c.base = Base::Int;
  } else if (std::regex_match(bs, mb, re_loc)) {
    c.base = Base::IntLoc;
    c.loc_m = mpz_class(mb[1].str());
  } else if (std::regex_match(bs, mb, re_padic)) {
    c.base = Base::Padic;
    c.p = std::stoul(mb[1].str());
    c.K = std::stoul(mb[2].str());
    if (c.K == 0) throw std::invalid_argument("context descriptor: p-adic precision must be >= 1");
  } else {
    throw std::invalid_argument("context descriptor: bad base \"" + bs + "\"");
  }

  static const std::regex re_q1(R"(^\s*\(q-1\)\^(\d+)\s*$)");
  static const std::regex re_qm(R"(^\s*\(q\^(\d+)-1\)\^(\d+)\s*$)");
  static const std::regex re_cyc(R"(^\s*Phi_(\d+)\(q\)\^(\d+)\s*$)");
  std::smatch mq;
  if (std::regex_match(qs, mq, re_q1)) {
    c.qmod = QMod::QOnePow;
    c.m = 1;
    c.N = std::stoul(mq[1].str());
  } else if (std::regex_match(qs, mq, re_qm)) {
    c.qmod = QMod::QmOnePow;
    c.m = std::stoul(mq[1].str());
    c.N = std::stoul(mq[2].str());
  } else if (std::regex_match(qs, mq, re_cyc)) {
    c.qmod = QMod::CycPow;
    c.m = std::stoul(mq[1].str());
    c.N = std::stoul(mq[2].str());
  } else {
    throw std::invalid_argument("context descriptor: bad q-modulus \"" + qs + "\"");
  }
  if (c.N == 0) throw std::invalid_argument("context descriptor: power must be >= 1");
  if (c.m == 0) throw std::invalid_argument("context descriptor: m must be >= 1");
  return c;
}

}  // namespace qdr
