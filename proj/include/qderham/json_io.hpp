#pragma once

#include <gmpxx.h>

#include <string>

#include "json.hpp"
#include "qderham/kufix.hpp"
#include "qderham/lattice.hpp"
#include "qderham/qdr_complex.hpp"
#include "qderham/qseries.hpp"

namespace qdr {

// All JSON documents use insertion-ordered objects and carry every number as
// a decimal string, so the canonical byte serialization is independent of
// platform integer width and floating point formatting.
using OJson = nlohmann::ordered_json;

std::string dec(const mpz_class& v);
std::string dec(const mpq_class& v);
std::string dec(long v);
std::string dec(unsigned long v);
inline std::string dec(int v) { return dec(static_cast<long>(v)); }
inline std::string dec(unsigned v) { return dec(static_cast<unsigned long>(v)); }

// Canonical compact serialization: no whitespace, keys in insertion order.
std::string canonical(const OJson& j);

// {"context": descriptor, "coeffs": [decimal strings on the context basis]}
OJson qseries_json(const QSeries& f);

// {"den": "...", "ncols": "...", "rows": [["..."]]}
OJson lattice_json(const ScaledLattice& l);

// [{"degree": "...", "weight": "...", "invariant_factors": ["..."]}],
// sorted by (degree, weight).
OJson graded_module_json(const GradedModule& m);

// {"display", "m", "precision": {p, p_prec, q_prec}, "beta_image",
//  "degrees": [{"degree", "rank", "invariant_factors", "basis_labels",
//               "lattice"?}]}
OJson presentation_json(const GradedRingPresentation& pres,
                        bool include_lattices = false);

OJson fracture_json(const FractureReport& rep);
OJson pullback_json(const PullbackReport& rep);
OJson inflation_json(const InflationReport& rep);

}  // namespace qdr
