#include <cstring>
#include <iostream>
#include <string>

#include "dqm/checks.hpp"

int main(int argc, char** argv) {
  std::string filter;
  std::string scratch;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) filter = argv[++i];
    if (std::strcmp(argv[i], "--scratch") == 0 && i + 1 < argc) scratch = argv[++i];
  }
  const auto results = dqm::checks::run_acceptance(filter, scratch);
  bool all_pass = !results.empty();
  for (const auto& r : results) {
    std::cout << dqm::checks::format_result_line(r) << std::endl;
    all_pass = all_pass && r.pass;
  }
  if (results.empty()) std::cout << "no checks matched the filter" << std::endl;
  return all_pass ? 0 : 1;
}
