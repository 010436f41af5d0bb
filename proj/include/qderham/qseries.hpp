#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "qderham/context.hpp"
#include "qderham/ratpoly.hpp"

namespace qdr {

// Element of the truncated ring described by a TruncContext, stored on the
// canonical basis for that context:
//   (q-1)^N      -> coefficients of 1, (q-1), ..., (q-1)^{N-1}
//   (q^m-1)^N    -> coefficients of 1, q, ..., q^{mN-1}
//   Phi_m(q)^N   -> coefficients of 1, q, ..., q^{phi(m)N-1}
// Coefficients are kept canonical for the base ring: integers for Z,
// exact rationals with denominator supported on the localized primes for
// Z[1/M], and representatives in [0, p^K) for Z_p at precision K.
class QSeries {
 public:
  QSeries() = default;
  QSeries(TruncContext ctx, std::vector<mpq_class> coeffs);

  static QSeries zero(const TruncContext& ctx);
  static QSeries one(const TruncContext& ctx);
  static QSeries constant(const TruncContext& ctx, const mpq_class& c);
  static QSeries q(const TruncContext& ctx);

  // Reduce a polynomial in q into the context.
  static QSeries from_qpoly(const TruncContext& ctx, const RPoly& poly);
  static QSeries from_qpoly(const TruncContext& ctx, const ZPoly& poly);

  // Representative polynomial in q (degree < deg(modulus)).
  RPoly to_qpoly() const;

  const TruncContext& context() const { return ctx_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const mpq_class& coeff(size_t i) const { return c_.at(i); }

  bool is_zero() const;
  bool operator==(const QSeries& o) const;
  bool operator!=(const QSeries& o) const { return !(*this == o); }

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator-() const;
  QSeries operator*(const QSeries& o) const;
  QSeries scaled(const mpq_class& c) const;
  QSeries pow(unsigned e) const;

  // Substitute q -> q^n and re-reduce in the same context (n >= 1).
  QSeries adams(unsigned n) const;

  // Reinterpret in another context by reducing the representative.
  QSeries convert(const TruncContext& target) const;

  std::string to_string() const;

 private:
  void canonicalize_scalars();

  TruncContext ctx_;
  std::vector<mpq_class> c_;
};

// [m]_q = 1 + q + ... + q^{m-1} in the context.  m = 0 gives 0.
QSeries q_integer(const TruncContext& ctx, unsigned m);

// [m]_q! in the context.
QSeries q_factorial(const TruncContext& ctx, unsigned m);

// (q;q)_d = prod_{j=1}^d (1 - q^j) in the context.
QSeries q_pochhammer(const TruncContext& ctx, unsigned d);

// q^u as the binomial series sum_n binom(u,n) (q-1)^n, for an arbitrary
// integer exponent u.  Requires a (q-1)^N context.  For a p-adic base the
// series is only well defined in u mod p^K when v_p(n!) < K for all n < N;
// violations raise std::domain_error.
QSeries q_power_u(const TruncContext& ctx, const mpz_class& u);

// Exact binomial coefficient binom(u, n) for arbitrary integer u.
mpz_class integer_binomial(const mpz_class& u, unsigned n);

// Phi_d(q) reduced into the given context.
QSeries cyclotomic_series(const TruncContext& ctx, unsigned d);

// A finite-stage element of the inverse limit of the (q^m-1)-completions of
// Z[q]: one component per level m in a divisor-closed level set, compatible
// under the quotient maps level m -> level d for d | m.
class CyclotomicFamily {
 public:
  // All components reduced from one global polynomial (always compatible).
  static CyclotomicFamily from_polynomial(const ZPoly& f,
                                          const std::vector<unsigned>& levels,
                                          unsigned N);

  // Validates divisor-closedness and compatibility; throws on violation.
  CyclotomicFamily(std::map<unsigned, QSeries> components);

  const std::map<unsigned, QSeries>& components() const { return comp_; }
  const QSeries& at(unsigned level) const { return comp_.at(level); }

 private:
  std::map<unsigned, QSeries> comp_;
};

}  // namespace qdr
