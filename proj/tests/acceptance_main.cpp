#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  confspace::acceptance::Options opts;
  opts.log = &std::cerr;
  for (int i = 1; i < argc; ++i) opts.only.insert(std::stoi(argv[i]));
  if (const char* w = std::getenv("CONFSPACE_WORKERS")) opts.workers = std::max(1, std::atoi(w));
  auto results = confspace::acceptance::run(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << confspace::acceptance::format_line(r) << "\n";
    if (!r.passed()) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
