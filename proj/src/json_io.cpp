#include "qderham/json_io.hpp"

namespace qdr {

std::string dec(const mpz_class& v) { return v.get_str(); }
std::string dec(const mpq_class& v) { return v.get_str(); }
std::string dec(long v) { return std::to_string(v); }
std::string dec(unsigned long v) { return std::to_string(v); }

std::string canonical(const OJson& j) { return j.dump(); }

OJson qseries_json(const QSeries& f) {
  OJson out;
  out["context"] = f.context().descriptor();
  OJson coeffs = OJson::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(dec(c));
  out["coeffs"] = std::move(coeffs);
  return out;
}

OJson lattice_json(const ScaledLattice& l) {
  OJson out;
  out["den"] = dec(l.den);
  out["ncols"] = dec(static_cast<unsigned long>(l.ncols));
  OJson rows = OJson::array();
  for (const auto& r : l.rows) {
    OJson row = OJson::array();
    for (const auto& v : r) row.push_back(dec(v));
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

OJson graded_module_json(const GradedModule& m) {
  OJson out = OJson::array();
  for (const auto& [key, factors] : m.piece) {
    OJson entry;
    entry["degree"] = dec(key.first);
    entry["weight"] = dec(key.second);
    OJson fs = OJson::array();
    for (const auto& f : factors) fs.push_back(dec(f));
    entry["invariant_factors"] = std::move(fs);
    out.push_back(std::move(entry));
  }
  return out;
}

OJson presentation_json(const GradedRingPresentation& pres,
                        bool include_lattices) {
  OJson out;
  out["display"] = pres.display;
  out["m"] = dec(pres.m);
  OJson prec;
  prec["p"] = dec(pres.prec.p);
  prec["p_prec"] = dec(pres.prec.p_prec);
  prec["q_prec"] = dec(pres.prec.q_prec);
  out["precision"] = std::move(prec);
  if (!pres.beta_image.empty()) out["beta_image"] = zp_to_string(pres.beta_image);
  OJson degrees = OJson::array();
  for (const auto& [d, comp] : pres.comp) {
    OJson entry;
    entry["degree"] = dec(d);
    entry["rank"] = dec(comp.rank);
    OJson fs = OJson::array();
    for (const auto& t : comp.torsion) fs.push_back(dec(t));
    entry["invariant_factors"] = std::move(fs);
    entry["basis_labels"] = comp.basis;
    if (include_lattices && comp.lattice.ncols > 0)
      entry["lattice"] = lattice_json(comp.lattice);
    degrees.push_back(std::move(entry));
  }
  out["degrees"] = std::move(degrees);
  return out;
}

OJson fracture_json(const FractureReport& rep) {
  OJson out;
  out["m"] = dec(rep.m);
  out["p_prec"] = dec(rep.kprec);
  out["q_prec"] = dec(rep.nprec);
  out["degree_bound"] = dec(rep.bound);
  out["gluing_ok"] = rep.gluing_ok;
  out["ok"] = rep.ok;
  out["status"] = rep.status;
  OJson degrees = OJson::array();
  for (const auto& d : rep.degrees) {
    OJson entry;
    entry["degree"] = dec(d.degree);
    entry["rank_pullback"] = dec(d.rank_pullback);
    entry["rank_reference"] = dec(d.rank_reference);
    entry["match"] = d.match;
    entry["surjective"] = d.surjective;
    degrees.push_back(std::move(entry));
  }
  out["degrees"] = std::move(degrees);
  return out;
}

OJson pullback_json(const PullbackReport& rep) {
  OJson out;
  out["p"] = dec(rep.p);
  out["p_prec"] = dec(rep.kprec);
  out["degree_bound"] = dec(rep.bound);
  out["ok"] = rep.ok;
  out["status"] = rep.status;
  OJson degrees = OJson::array();
  for (const auto& d : rep.degrees) {
    OJson entry;
    entry["degree"] = dec(d.degree);
    entry["kernel_rank"] = dec(d.kernel_rank);
    entry["exact"] = d.exact;
    degrees.push_back(std::move(entry));
  }
  out["degrees"] = std::move(degrees);
  return out;
}

OJson inflation_json(const InflationReport& rep) {
  OJson out;
  out["m"] = dec(rep.m);
  out["n"] = dec(rep.n);
  out["degree_bound"] = dec(rep.bound);
  out["relation_ok"] = rep.relation_ok;
  out["base_change_iso"] = rep.base_change_iso;
  out["ok"] = rep.ok;
  return out;
}

}  // namespace qdr
