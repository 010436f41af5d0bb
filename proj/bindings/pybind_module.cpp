#include <pybind11/pybind11.h>

#include <string>

#include "qderham/checks.hpp"
#include "qderham/context.hpp"
#include "qderham/json_io.hpp"
#include "qderham/kufix.hpp"
#include "qderham/qdr_complex.hpp"
#include "qderham/qpd.hpp"
#include "qderham/sha256.hpp"
#include "qderham/zpoly.hpp"

namespace py = pybind11;
using namespace qdr;

namespace {

// Every structured result crosses the boundary as its canonical JSON byte
// string; the python wrapper parses it.  This keeps the exact-arithmetic
// values (arbitrary precision integers and rationals) lossless.

std::string graded_doc(unsigned nvars, const std::string& ctx, unsigned degree_bound,
                       unsigned level, bool classical) {
  auto c = build_qdr(nvars, TruncContext::parse(ctx), degree_bound, level);
  auto mod = classical ? cohomology(c.reduce_mod_q1(), level) : cohomology(c, level);
  return canonical(graded_module_json(mod));
}

std::string witness_doc(unsigned p, unsigned alpha, unsigned deg, unsigned qprec,
                        unsigned pprec) {
  auto w = check_p_power_divisibility(p, alpha, deg,
                                      TruncContext::padic(p, pprec, qprec));
  OJson out;
  out["p"] = dec(w.p);
  out["alpha"] = dec(w.alpha);
  out["deg"] = dec(w.deg);
  out["q_prec"] = dec(w.qprec);
  out["p_prec"] = dec(w.pprec);
  out["ok"] = w.ok;
  OJson stages = OJson::array();
  for (char s : w.stage_ok) stages.push_back(s ? "1" : "0");
  out["stages"] = std::move(stages);
  OJson quot = OJson::array();
  for (const auto& c : w.quotient) quot.push_back(dec(c));
  out["quotient"] = std::move(quot);
  return canonical(out);
}

std::string presentation_doc(const GradedRingPresentation& pres, bool lattices) {
  return canonical(presentation_json(pres, lattices));
}

std::string checks_doc(const std::string& manifest, const std::string& filter,
                       unsigned jobs) {
  auto specs = parse_manifest(manifest);
  auto rep = run_checks(specs, filter, jobs, seed_from_env());
  return canonical(report_json(rep));
}

}  // namespace

PYBIND11_MODULE(_qderham, m) {
  m.doc() = "exact q-series, q-de Rham and cyclic ku fixed point computations";

  m.def("context_roundtrip",
        [](const std::string& d) { return TruncContext::parse(d).descriptor(); },
        py::arg("descriptor"));
  m.def("cyclotomic_str", [](unsigned n) { return zp_to_string(cyclotomic(n)); },
        py::arg("n"));
  m.def("q_integer_str", [](unsigned n) { return zp_to_string(q_integer_poly(n)); },
        py::arg("n"));
  m.def("sha256_hex", [](const std::string& s) { return sha256_hex(s); },
        py::arg("data"));

  m.def("qdr_cohomology", &graded_doc, py::arg("nvars"), py::arg("ctx"),
        py::arg("degree_bound"), py::arg("level") = 0, py::arg("classical") = false);

  m.def("qpd_verify", &witness_doc, py::arg("p"), py::arg("alpha"), py::arg("deg"),
        py::arg("q_prec") = 6, py::arg("p_prec") = 5);

  m.def("pi_genuine",
        [](unsigned m_, long bound, bool lat) {
          return presentation_doc(pi_genuine(m_, bound), lat);
        },
        py::arg("m"), py::arg("degree_bound"), py::arg("lattices") = false);
  m.def("pi_homotopy_fixed",
        [](unsigned m_, long bound, unsigned nprec, bool lat) {
          return presentation_doc(pi_homotopy_fixed(m_, bound, nprec), lat);
        },
        py::arg("m"), py::arg("degree_bound"), py::arg("q_prec"),
        py::arg("lattices") = false);
  m.def("pi_geometric",
        [](unsigned m_, long bound, bool lat) {
          return presentation_doc(pi_geometric(m_, bound), lat);
        },
        py::arg("m"), py::arg("degree_bound"), py::arg("lattices") = true);
  m.def("pi_geometric_localized",
        [](unsigned m_, unsigned nprec, long bound, bool lat) {
          return presentation_doc(pi_geometric_localized(m_, nprec, bound), lat);
        },
        py::arg("m"), py::arg("q_prec"), py::arg("degree_bound"),
        py::arg("lattices") = false);
  m.def("pi_geometric_p_complete",
        [](unsigned p, unsigned alpha, unsigned m_p, unsigned kprec, long bound,
           bool lat) {
          return presentation_doc(pi_geometric_p_complete(p, alpha, m_p, kprec, bound),
                                  lat);
        },
        py::arg("p"), py::arg("alpha"), py::arg("m_p"), py::arg("p_prec"),
        py::arg("degree_bound"), py::arg("lattices") = false);
  m.def("tc_minus_zpzeta",
        [](unsigned p, unsigned kprec, unsigned nprec, long bound, bool lat) {
          return presentation_doc(tc_minus_zpzeta(p, kprec, nprec, bound), lat);
        },
        py::arg("p"), py::arg("p_prec"), py::arg("q_prec"), py::arg("degree_bound"),
        py::arg("lattices") = false);

  m.def("fracture",
        [](unsigned m_, long bound, unsigned kprec, unsigned nprec) {
          return canonical(fracture_json(fracture_assemble(m_, bound, kprec, nprec)));
        },
        py::arg("m"), py::arg("degree_bound"), py::arg("p_prec"), py::arg("q_prec"));
  m.def("pullback",
        [](unsigned p, long bound, unsigned kprec) {
          return canonical(pullback_json(genuine_pullback_check(p, bound, kprec)));
        },
        py::arg("p"), py::arg("degree_bound"), py::arg("p_prec"));
  m.def("inflation",
        [](unsigned m_, unsigned n, long bound) {
          return canonical(inflation_json(inflation_check(m_, n, bound)));
        },
        py::arg("m"), py::arg("n"), py::arg("degree_bound"));

  m.def("run_checks", &checks_doc, py::arg("manifest"), py::arg("filter") = "*",
        py::arg("jobs") = 1);
}
