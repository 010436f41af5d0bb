#pragma once

#include "qderham/qdr_complex.hpp"

namespace qdr {

// Result of adjoining fil^i/(q^m-1)^i, 1 <= i <= i_max, to the degree-0 ring
// of a filtered complex.  Stored in cleared form: `cleared[w]` spans
// (q^m-1)^{i_max} times the rescaled lattice at weight w, so the actual
// module is cleared[w] / (q^m-1)^{i_max}.  When i_max < N the division is
// carried out exactly at reduced precision N - i_max into `normalized`.
struct HabiroRescale {
  TruncContext ctx;
  unsigned m = 1;
  unsigned i_max = 0;
  std::vector<ZMat> cleared;           // per weight, HNF rows
  bool normalized_valid = false;
  TruncContext reduced_ctx;            // precision N - i_max
  std::vector<ZMat> normalized;        // per weight, HNF rows

  // Membership of numerator/(q^m-1)^{den_pow} (den_pow <= i_max) in the
  // rescaled module at weight w; numerator is flattened on the weight-w
  // monomial basis x (q-1)-power basis.
  bool contains(unsigned w, const ZVec& numerator, unsigned den_pow) const;
};

HabiroRescale habiro_hodge_rescale(const FilteredComplex& c, unsigned m,
                                   unsigned i_max);

}  // namespace qdr
