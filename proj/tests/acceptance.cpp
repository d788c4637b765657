// Runs the fifteen acceptance criteria and prints one PASS/FAIL line each.
// Exit status is zero only when every criterion passes within its budget.
//
//   rso_acceptance [--only 3,7] [--manifest out.json]

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rso/demo_suite.hpp"

int main(int argc, char** argv) {
  rso::SuiteOptions opt;
  std::string manifest_path;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) opt.only.push_back(std::stoi(tok));
    } else if (!std::strcmp(argv[i], "--manifest") && i + 1 < argc) {
      manifest_path = argv[++i];
    } else {
      std::cerr << "usage: rso_acceptance [--only i,j,...] [--manifest file]\n";
      return 2;
    }
  }
  opt.on_result = [](const rso::CriterionResult& r) { std::cout << rso::format_result(r) << std::endl; };
  auto results = rso::run_suite(opt);
  int passed = 0;
  for (const auto& r : results) passed += r.pass();
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  if (!manifest_path.empty()) {
    std::ofstream out(manifest_path);
    out << rso::suite_manifest(results).dump(2) << "\n";
  }
  return passed == static_cast<int>(results.size()) ? EXIT_SUCCESS : EXIT_FAILURE;
}
