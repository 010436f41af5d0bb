#pragma once

#include <map>
#include <vector>

#include "qderham/qseries.hpp"

namespace qdr {

// Exponent vector, one entry per variable.
using Exp = std::vector<unsigned>;

unsigned exp_total(const Exp& e);

// Weight-graded multivariate polynomial with QSeries coefficients.  The
// weight of a monomial is its total x-degree.  All arithmetic enforces the
// declared degree bound: results that would exceed it throw instead of
// truncating silently.
class QPolynomial {
 public:
  QPolynomial(TruncContext ctx, unsigned nvars, unsigned degree_bound);

  static QPolynomial monomial(const TruncContext& ctx, unsigned nvars,
                              unsigned degree_bound, const Exp& e,
                              const QSeries& c);

  const TruncContext& context() const { return ctx_; }
  unsigned nvars() const { return nvars_; }
  unsigned degree_bound() const { return bound_; }
  const std::map<Exp, QSeries>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const QPolynomial& o) const;
  bool operator!=(const QPolynomial& o) const { return !(*this == o); }

  QPolynomial operator+(const QPolynomial& o) const;
  QPolynomial operator-(const QPolynomial& o) const;
  QPolynomial operator*(const QPolynomial& o) const;
  QPolynomial scaled(const QSeries& c) const;

  // Coefficient of the monomial e (zero series if absent).
  QSeries coeff(const Exp& e) const;

  // Terms of total degree w only.
  QPolynomial weight_component(unsigned w) const;

  void add_term(const Exp& e, const QSeries& c);

 private:
  TruncContext ctx_;
  unsigned nvars_;
  unsigned bound_;
  std::map<Exp, QSeries> terms_;
};

// q-derivative in variable i: x_i^m u |-> [m]_q x_i^{m-1} u.
QPolynomial q_partial(const QPolynomial& f, unsigned i);

// Substitution x_i -> q x_i (the twist entering the Leibniz rule).
QPolynomial sigma_q(const QPolynomial& f, unsigned i);

// Differential form of fixed degree: components indexed by subsets of the
// variables (bitmask with popcount == degree).  The weight of a monomial in
// the dx_S component is its x-degree plus |S|.
class QForm {
 public:
  // degree may be nvars + 1 to represent the (necessarily zero) image of a
  // top-degree form under the differential.
  QForm(TruncContext ctx, unsigned nvars, unsigned degree_bound, unsigned degree);

  unsigned degree() const { return deg_; }
  unsigned nvars() const { return nvars_; }
  const TruncContext& context() const { return ctx_; }
  unsigned degree_bound() const { return bound_; }
  const std::map<unsigned, QPolynomial>& components() const { return comps_; }

  bool is_zero() const;
  bool operator==(const QForm& o) const;

  void add_component(unsigned mask, const QPolynomial& f);
  QPolynomial component(unsigned mask) const;

 private:
  TruncContext ctx_;
  unsigned nvars_;
  unsigned bound_;
  unsigned deg_;
  std::map<unsigned, QPolynomial> comps_;
};

// The q-de Rham differential: f dx_S |-> sum_{i not in S} ±∂_{q,i}(f) dx_{S+i},
// with the Koszul sign from sorted subset ordering.
QForm q_nabla(const QForm& w);

}  // namespace qdr
