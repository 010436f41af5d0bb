#include "qderham/qpoly.hpp"

#include <bit>
#include <stdexcept>

namespace qdr {

unsigned exp_total(const Exp& e) {
  unsigned t = 0;
  for (unsigned x : e) t += x;
  return t;
}

QPolynomial::QPolynomial(TruncContext ctx, unsigned nvars, unsigned degree_bound)
    : ctx_(std::move(ctx)), nvars_(nvars), bound_(degree_bound) {}

QPolynomial QPolynomial::monomial(const TruncContext& ctx, unsigned nvars,
                                  unsigned degree_bound, const Exp& e,
                                  const QSeries& c) {
  QPolynomial f(ctx, nvars, degree_bound);
  f.add_term(e, c);
  return f;
}

void QPolynomial::add_term(const Exp& e, const QSeries& c) {
  if (e.size() != nvars_) throw std::invalid_argument("QPolynomial: exponent arity");
  if (exp_total(e) > bound_)
    throw std::domain_error("QPolynomial: monomial exceeds the degree bound");
  if (c.context() != ctx_) throw std::invalid_argument("QPolynomial: context mismatch");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  QSeries sum = it->second + c;
  if (sum.is_zero())
    terms_.erase(it);
  else
    it->second = std::move(sum);
}

bool QPolynomial::operator==(const QPolynomial& o) const {
  return nvars_ == o.nvars_ && ctx_ == o.ctx_ && terms_ == o.terms_;
}

QPolynomial QPolynomial::operator+(const QPolynomial& o) const {
  QPolynomial r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

QPolynomial QPolynomial::operator-(const QPolynomial& o) const {
  QPolynomial r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

QPolynomial QPolynomial::operator*(const QPolynomial& o) const {
  QPolynomial r(ctx_, nvars_, bound_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exp e(nvars_);
      for (unsigned i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

QPolynomial QPolynomial::scaled(const QSeries& c) const {
  QPolynomial r(ctx_, nvars_, bound_);
  for (const auto& [e, x] : terms_) r.add_term(e, x * c);
  return r;
}

QSeries QPolynomial::coeff(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QSeries::zero(ctx_) : it->second;
}

QPolynomial QPolynomial::weight_component(unsigned w) const {
  QPolynomial r(ctx_, nvars_, bound_);
  for (const auto& [e, c] : terms_)
    if (exp_total(e) == w) r.add_term(e, c);
  return r;
}

QPolynomial q_partial(const QPolynomial& f, unsigned i) {
  if (i >= f.nvars()) throw std::invalid_argument("q_partial: variable index");
  QPolynomial r(f.context(), f.nvars(), f.degree_bound());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exp e2 = e;
    e2[i] -= 1;
    r.add_term(e2, c * q_integer(f.context(), e[i]));
  }
  return r;
}

QPolynomial sigma_q(const QPolynomial& f, unsigned i) {
  if (i >= f.nvars()) throw std::invalid_argument("sigma_q: variable index");
  QPolynomial r(f.context(), f.nvars(), f.degree_bound());
  auto qs = QSeries::q(f.context());
  for (const auto& [e, c] : f.terms()) r.add_term(e, c * qs.pow(e[i]));
  return r;
}

QForm::QForm(TruncContext ctx, unsigned nvars, unsigned degree_bound, unsigned degree)
    : ctx_(std::move(ctx)), nvars_(nvars), bound_(degree_bound), deg_(degree) {
  if (deg_ > nvars_ + 1)
    throw std::invalid_argument("QForm: degree exceeds variable count");
}

bool QForm::is_zero() const {
  for (const auto& [mask, f] : comps_)
    if (!f.is_zero()) return false;
  return true;
}

bool QForm::operator==(const QForm& o) const {
  if (deg_ != o.deg_ || nvars_ != o.nvars_) return false;
  // compare sparsely: every component present on either side must agree
  for (const auto& [mask, f] : comps_)
    if (o.component(mask) != f) return false;
  for (const auto& [mask, f] : o.comps_)
    if (component(mask) != f) return false;
  return true;
}

void QForm::add_component(unsigned mask, const QPolynomial& f) {
  if (static_cast<unsigned>(std::popcount(mask)) != deg_)
    throw std::invalid_argument("QForm: subset size does not match form degree");
  if (mask >= (1u << nvars_)) throw std::invalid_argument("QForm: subset out of range");
  auto it = comps_.find(mask);
  if (it == comps_.end()) {
    if (!f.is_zero()) comps_.emplace(mask, f);
    return;
  }
  QPolynomial sum = it->second + f;
  if (sum.is_zero())
    comps_.erase(it);
  else
    it->second = std::move(sum);
}

QPolynomial QForm::component(unsigned mask) const {
  auto it = comps_.find(mask);
  return it == comps_.end() ? QPolynomial(ctx_, nvars_, bound_) : it->second;
}

QForm q_nabla(const QForm& w) {
  QForm out(w.context(), w.nvars(), w.degree_bound(), w.degree() + 1);
  for (const auto& [mask, f] : w.components()) {
    for (unsigned i = 0; i < w.nvars(); ++i) {
      if (mask & (1u << i)) continue;
      QPolynomial df = q_partial(f, i);
      if (df.is_zero()) continue;
      if (std::popcount(mask & ((1u << i) - 1)) % 2)
        df = df.scaled(QSeries::constant(df.context(), -1));
      out.add_component(mask | (1u << i), df);
    }
  }
  return out;
}

}  // namespace qdr
