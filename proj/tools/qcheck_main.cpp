#include <iostream>

#include "CLI11.hpp"
#include "qderham/checks.hpp"

using namespace qdr;

int main(int argc, char** argv) {
  CLI::App app{"named golden-digest checks against the pinned manifest"};

  std::string manifest = "data/checks.json";
  std::string filter = "*";
  unsigned jobs = 1;
  std::string format = "table";

  app.add_option("--manifest", manifest, "manifest file");
  app.add_option("--filter", filter, "glob on check names");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  CLI11_PARSE(app, argc, argv);

  try {
    auto specs = parse_manifest(manifest);
    auto rep = run_checks(specs, filter, jobs, seed_from_env());
    if (format == "json")
      std::cout << canonical(report_json(rep)) << "\n";
    else
      std::cout << report_table(rep);
    return rep.exit_code;
  } catch (const CheckConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
