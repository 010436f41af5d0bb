#include <iostream>

#include "CLI11.hpp"
#include "qderham/json_io.hpp"
#include "qderham/kufix.hpp"

using namespace qdr;

namespace {

void emit_presentation(const GradedRingPresentation& pres,
                       const std::string& format, bool lattices) {
  if (format == "table") {
    std::cout << pres.display << "\n";
    std::cout << "degree  rank  basis\n";
    for (const auto& [d, c] : pres.comp) {
      std::cout << d << "    " << c.rank << "    ";
      for (size_t i = 0; i < c.basis.size(); ++i)
        std::cout << (i ? ", " : "") << c.basis[i];
      std::cout << "\n";
    }
    return;
  }
  std::cout << canonical(presentation_json(pres, lattices)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded homotopy rings of cyclic-group fixed points of ku"};
  app.require_subcommand(1);

  std::string which = "genuine";
  unsigned m = 1, p = 2, alpha = 1, max_deg = 10, qprec = 6, pprec = 5;
  unsigned n = 2;
  std::string format = "json";
  bool lattices = false;

  auto* pi = app.add_subcommand("pi", "graded ring of one fixed-point flavour");
  pi->add_option("--which", which)
      ->check(CLI::IsMember({"genuine", "hfp", "geom", "geom-p", "tcminus"}));
  pi->add_option("--m", m, "order of the cyclic group");
  pi->add_option("--p", p, "prime (geom-p, tcminus)");
  pi->add_option("--alpha", alpha, "p-exponent of m (geom-p)");
  pi->add_option("--max-deg", max_deg, "largest |degree| to emit");
  pi->add_option("--qprec", qprec, "q-direction precision (hfp, tcminus)");
  pi->add_option("--pprec", pprec, "p-adic precision (geom-p, tcminus)");
  pi->add_flag("--lattices", lattices, "include coordinate lattices");
  pi->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* fr = app.add_subcommand("fracture",
                                "assemble the geometric ring from its pieces");
  fr->add_option("--m", m, "order of the cyclic group")->required();
  fr->add_option("--max-deg", max_deg, "largest degree to compare");
  fr->add_option("--qprec", qprec, "denominator budget exponent");
  fr->add_option("--pprec", pprec, "p-adic precision");
  fr->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* pb = app.add_subcommand("pullback",
                                "exactness of the genuine corner against the square");
  pb->add_option("--p", p, "prime")->required();
  pb->add_option("--max-deg", max_deg, "largest |degree| to test");
  pb->add_option("--pprec", pprec, "p-adic precision");
  pb->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* inf = app.add_subcommand("inflate", "inflation consistency report");
  inf->add_option("--m", m, "source group order")->required();
  inf->add_option("--n", n, "power map degree")->required();
  inf->add_option("--max-deg", max_deg, "largest degree to test");
  inf->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (pi->parsed()) {
      GradedRingPresentation pres;
      if (which == "genuine") {
        pres = pi_genuine(m, max_deg);
      } else if (which == "hfp") {
        pres = pi_homotopy_fixed(m, max_deg, qprec);
      } else if (which == "geom") {
        pres = pi_geometric(m, max_deg);
        lattices = true;
      } else if (which == "geom-p") {
        unsigned pa = 1;
        for (unsigned i = 0; i < alpha; ++i) pa *= p;
        if (m % pa != 0)
          throw std::invalid_argument("geom-p: p^alpha must divide m");
        pres = pi_geometric_p_complete(p, alpha, m / pa, pprec, max_deg);
      } else {
        pres = tc_minus_zpzeta(p, pprec, qprec, max_deg);
      }
      emit_presentation(pres, format, lattices);
      return 0;
    }

    if (fr->parsed()) {
      auto rep = fracture_assemble(m, max_deg, pprec, qprec);
      if (format == "table") {
        std::cout << "m=" << rep.m << " status=" << rep.status
                  << " gluing=" << (rep.gluing_ok ? "ok" : "FAIL") << "\n";
        for (const auto& d : rep.degrees)
          std::cout << "  degree " << d.degree << ": rank " << d.rank_pullback
                    << " vs " << d.rank_reference << " "
                    << (d.match && d.surjective ? "ok" : "FAIL") << "\n";
      } else {
        std::cout << canonical(fracture_json(rep)) << "\n";
      }
      if (rep.status.rfind("insufficient", 0) == 0) return 2;
      return rep.ok ? 0 : 1;
    }

    if (pb->parsed()) {
      auto rep = genuine_pullback_check(p, max_deg, pprec);
      if (format == "table") {
        std::cout << "p=" << rep.p << " status=" << rep.status << "\n";
        for (const auto& d : rep.degrees)
          std::cout << "  degree " << d.degree << ": kernel rank "
                    << d.kernel_rank << " " << (d.exact ? "exact" : "FAIL")
                    << "\n";
      } else {
        std::cout << canonical(pullback_json(rep)) << "\n";
      }
      if (rep.status.rfind("insufficient", 0) == 0) return 2;
      return rep.ok ? 0 : 1;
    }

    if (inf->parsed()) {
      auto rep = inflation_check(m, n, max_deg);
      if (format == "table") {
        std::cout << "inf_" << n << " on m=" << m << ": relation "
                  << (rep.relation_ok ? "ok" : "FAIL") << ", base change "
                  << (rep.base_change_iso ? "iso" : "FAIL") << "\n";
      } else {
        std::cout << canonical(inflation_json(rep)) << "\n";
      }
      return rep.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
