#pragma once

#include <map>

#include "qderham/qseries.hpp"

namespace qdr {

// Split an element of base[q]/(q^m-1)^N into its components modulo
// Phi_d(q)^N for each divisor d of m.  Keys of the result are the divisors.
std::map<unsigned, QSeries> crt_split(const QSeries& f);

// Inverse of crt_split.  The interpolation introduces denominators dividing
// a power of m; the base ring of the target context must invert them, or a
// std::domain_error is raised (this is the same error canonicalization
// performs for a coefficient outside the base).
QSeries crt_combine(const TruncContext& target, const std::map<unsigned, QSeries>& comps);

}  // namespace qdr
