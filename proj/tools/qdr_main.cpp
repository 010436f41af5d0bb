#include <iostream>

#include "CLI11.hpp"
#include "qderham/habiro.hpp"
#include "qderham/json_io.hpp"
#include "qderham/preimage.hpp"
#include "qderham/qdr_complex.hpp"

using namespace qdr;

namespace {

// Prints a graded module as JSON (sorted by degree, weight) or a table.
void emit_graded(const GradedModule& mod, const std::string& format) {
  if (format == "table") {
    std::cout << "degree  weight  invariant_factors\n";
    for (const auto& [key, factors] : mod.piece) {
      std::cout << key.first << "       " << key.second << "       ";
      if (factors.empty()) {
        std::cout << "-";
      } else {
        for (size_t i = 0; i < factors.size(); ++i)
          std::cout << (i ? "," : "") << factors[i].get_str();
      }
      std::cout << "\n";
    }
    return;
  }
  std::cout << canonical(graded_module_json(mod)) << "\n";
}

// Relation list grammar: comma-separated pure powers "x1^2,x2^3".
std::vector<std::pair<unsigned, unsigned>> parse_relations(const std::string& text) {
  std::vector<std::pair<unsigned, unsigned>> rels;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma
                                                                   : comma - pos);
    size_t caret = item.find('^');
    if (item.size() < 2 || item[0] != 'x' || caret == std::string::npos)
      throw CLI::ValidationError("--relations",
                                 "expected items of the form x<k>^<a>: " + item);
    unsigned var = std::stoul(item.substr(1, caret - 1));
    unsigned exp = std::stoul(item.substr(caret + 1));
    if (var == 0) throw CLI::ValidationError("--relations", "variables are 1-based");
    rels.emplace_back(var - 1, exp);
    pos = comma == std::string::npos ? text.size() : comma + 1;
  }
  return rels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinate q-de Rham complexes over truncated q-series rings"};
  app.require_subcommand(1);

  unsigned vars = 1, deg = 6, fil = 0, level = 0, max_weight = 6;
  unsigned depth = 4;
  std::string ctx_desc = "Z;(q-1)^6";
  std::string format = "json";
  std::string relations;
  std::string den_bound = "1000000000000";

  auto add_complex_opts = [&](CLI::App* cmd) {
    cmd->add_option("--vars", vars, "number of variables");
    cmd->add_option("--ctx", ctx_desc, "context descriptor, e.g. \"Z;(q-1)^6\"");
    cmd->add_option("--deg", deg, "monomial degree bound");
    cmd->add_option("--fil", fil, "filtration depth to carry");
  };

  auto* build = app.add_subcommand("build", "build a complex and report its shape");
  add_complex_opts(build);
  build->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* coh = app.add_subcommand("cohomology", "invariant factors of H^level");
  add_complex_opts(coh);
  coh->add_option("--level", level, "filtration level");
  coh->add_option("--max-weight", max_weight, "largest weight to report");
  coh->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* red = app.add_subcommand("reduce-q1", "classical reduction at q = 1");
  add_complex_opts(red);
  red->add_option("--level", level, "filtration level");
  red->add_option("--max-weight", max_weight, "largest weight to report");
  red->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* pre = app.add_subcommand("preimage",
                                 "integral preimage filtration of a monomial quotient");
  pre->add_option("--relations", relations, "pure power relations, e.g. \"x1^2,x2^3\"")
      ->required();
  pre->add_option("--vars", vars, "number of variables");
  pre->add_option("--ctx", ctx_desc, "context descriptor");
  pre->add_option("--deg", deg, "monomial degree bound");
  pre->add_option("--depth", depth, "deepest filtration level");
  pre->add_option("--den-bound", den_bound, "abort when denominators exceed this");
  pre->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    TruncContext ctx = TruncContext::parse(ctx_desc);

    if (build->parsed()) {
      auto c = build_qdr(vars, ctx, deg, fil);
      OJson pieces = OJson::array();
      bool dd_zero = true;
      for (unsigned w = 0; w <= c.max_weight(); ++w) {
        for (unsigned j = 0; j <= vars; ++j) {
          size_t dim = c.flat_dim(j, w);
          if (dim == 0) continue;
          OJson e;
          e["degree"] = dec(j);
          e["weight"] = dec(w);
          e["rank"] = dec(dim);
          pieces.push_back(std::move(e));
          if (j + 1 <= vars) {
            const ZMat& d1 = c.differential(j, w);
            const ZMat& d2 = c.differential(j + 1, w);
            if (!d1.empty() && !d2.empty()) {
              for (size_t col = 0; col < d1[0].size() && dd_zero; ++col) {
                for (size_t row = 0; row < d2.size() && dd_zero; ++row) {
                  mpz_class acc = 0;
                  for (size_t k = 0; k < d1.size(); ++k)
                    acc += d2[row][k] * d1[k][col];
                  if (acc != 0) dd_zero = false;
                }
              }
            }
          }
        }
      }
      OJson out;
      out["context"] = ctx.descriptor();
      out["vars"] = dec(vars);
      out["degree_bound"] = dec(deg);
      out["fil_depth"] = dec(fil);
      out["d_squared_zero"] = dd_zero;
      out["pieces"] = std::move(pieces);
      if (format == "table") {
        std::cout << "degree  weight  rank\n";
        for (const auto& e : out["pieces"])
          std::cout << e["degree"].get<std::string>() << "       "
                    << e["weight"].get<std::string>() << "       "
                    << e["rank"].get<std::string>() << "\n";
        std::cout << "d^2 = 0: " << (dd_zero ? "yes" : "NO") << "\n";
      } else {
        std::cout << canonical(out) << "\n";
      }
      return dd_zero ? 0 : 1;
    }

    if (coh->parsed() || red->parsed()) {
      unsigned bound = std::max(deg, max_weight);
      auto c = build_qdr(vars, ctx, bound, std::max(fil, level));
      GradedModule mod = coh->parsed() ? cohomology(c, level)
                                       : cohomology(c.reduce_mod_q1(), level);
      GradedModule trimmed;
      for (const auto& [key, factors] : mod.piece)
        if (key.second <= max_weight) trimmed.piece[key] = factors;
      emit_graded(trimmed, format);
      return 0;
    }

    if (pre->parsed()) {
      QuotientSpec spec;
      spec.nvars = vars;
      spec.degree_bound = deg;
      spec.relations = parse_relations(relations);
      spec.validate();
      auto filtration = preimage_filtration(spec, TruncContext::parse(ctx_desc),
                                            depth, mpz_class(den_bound));
      OJson levels = OJson::array();
      for (unsigned i = 0; i < filtration.fil.size(); ++i) {
        OJson e;
        e["level"] = dec(i);
        e["rank"] = dec(filtration.fil[i].size());
        OJson rows = OJson::array();
        for (const auto& row : filtration.fil[i]) {
          OJson r = OJson::array();
          for (const auto& v : row) r.push_back(dec(v));
          rows.push_back(std::move(r));
        }
        e["rows"] = std::move(rows);
        levels.push_back(std::move(e));
      }
      OJson out;
      out["context"] = filtration.ctx.descriptor();
      out["flat_dim"] = dec(filtration.flat_dim());
      out["max_denominator_seen"] = dec(filtration.max_denominator_seen);
      out["levels"] = std::move(levels);
      if (format == "table") {
        std::cout << "level  rank\n";
        for (const auto& e : out["levels"])
          std::cout << e["level"].get<std::string>() << "      "
                    << e["rank"].get<std::string>() << "\n";
      } else {
        std::cout << canonical(out) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
