#include <iostream>

#include "CLI11.hpp"
#include "qderham/json_io.hpp"
#include "qderham/qpd.hpp"

using namespace qdr;

int main(int argc, char** argv) {
  CLI::App app{"q-divided-power envelopes and divisibility witnesses"};
  app.require_subcommand(1);

  unsigned p = 2, alpha = 1, deg = 6, qprec = 6, pprec = 5;
  std::string format = "json";

  auto* verify = app.add_subcommand(
      "verify", "stage-by-stage divisibility of x^{p^a} - y^{p^a} by [p^a]_q");
  verify->add_option("--p", p, "prime")->required();
  verify->add_option("--alpha", alpha, "prime power exponent")->required();
  verify->add_option("--deg", deg, "monomial degree bound");
  verify->add_option("--qprec", qprec, "(q-1)-adic precision");
  verify->add_option("--pprec", pprec, "p-adic precision");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    auto ctx = TruncContext::padic(p, pprec, qprec);
    auto w = check_p_power_divisibility(p, alpha, deg, ctx);
    OJson stages = OJson::array();
    for (char ok : w.stage_ok) stages.push_back(ok ? "1" : "0");
    OJson quot = OJson::array();
    for (const auto& c : w.quotient) quot.push_back(dec(c));
    OJson out;
    out["p"] = dec(w.p);
    out["alpha"] = dec(w.alpha);
    out["deg"] = dec(w.deg);
    out["q_prec"] = dec(w.qprec);
    out["p_prec"] = dec(w.pprec);
    out["ok"] = w.ok;
    out["stages"] = std::move(stages);
    out["quotient"] = std::move(quot);
    if (format == "table") {
      std::cout << "p=" << w.p << " alpha=" << w.alpha << " deg=" << w.deg
                << " : " << (w.ok ? "PASS" : "FAIL") << "\n";
      for (size_t i = 0; i < w.stage_ok.size(); ++i)
        std::cout << "  stage " << i + 1 << ": "
                  << (w.stage_ok[i] ? "in envelope" : "NOT in envelope") << "\n";
    } else {
      std::cout << canonical(out) << "\n";
    }
    return w.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
