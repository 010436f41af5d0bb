#pragma once

#include <gmpxx.h>

#include <string>

#include "qderham/zpoly.hpp"

namespace qdr {

// Base coefficient ring for a truncated q-series.
enum class Base {
  Int,       // Z
  IntLoc,    // Z[1/M]
  Padic,     // Z_p at finite precision p^K
};

// Modulus in q.
enum class QMod {
  QOnePow,    // (q-1)^N, coefficients stored on the (q-1)-power basis
  QmOnePow,   // (q^m-1)^N, stored on the q-power basis, degree < m*N
  CycPow,     // Phi_m(q)^N, stored on the q-power basis, degree < phi(m)*N
};

// A truncation context: which coefficient ring, which q-modulus.  All
// series arithmetic is exact inside the quotient this describes.
struct TruncContext {
  Base base = Base::Int;
  mpz_class loc_m = 1;   // Z[1/loc_m] when base == IntLoc
  unsigned p = 0;        // prime when base == Padic
  unsigned K = 0;        // p-adic precision exponent

  QMod qmod = QMod::QOnePow;
  unsigned m = 1;        // the m in (q^m-1)^N or Phi_m(q)^N
  unsigned N = 1;        // the outer power

  static TruncContext integral(unsigned N);
  static TruncContext integral_qm(unsigned m, unsigned N);
  static TruncContext localized(const mpz_class& M, unsigned m, unsigned N);
  static TruncContext padic(unsigned p, unsigned K, unsigned N);
  static TruncContext padic_qm(unsigned p, unsigned K, unsigned m, unsigned N);
  static TruncContext padic_cyc(unsigned p, unsigned K, unsigned m, unsigned N);
  static TruncContext integral_cyc(unsigned m, unsigned N);
  static TruncContext localized_cyc(const mpz_class& M, unsigned m, unsigned N);

  // Number of basis elements of the underlying free module over the base.
  unsigned dim() const;

  // The q-modulus as an integer polynomial ((q-1)^N, (q^m-1)^N or Phi_m^N).
  ZPoly modulus() const;

  bool q1_basis() const { return qmod == QMod::QOnePow; }

  // p^K as an integer (0 when base is not Padic).
  mpz_class char_modulus() const;

  bool operator==(const TruncContext& o) const;
  bool operator!=(const TruncContext& o) const { return !(*this == o); }

  // Descriptor grammar: "Z;(q-1)^8", "Z[1/6];(q^6-1)^1", "Zp(3,5);(q-1)^10",
  // "Z;Phi_6(q)^2".
  std::string descriptor() const;
  static TruncContext parse(const std::string& descriptor);
};

}  // namespace qdr
