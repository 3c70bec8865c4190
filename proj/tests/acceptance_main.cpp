#include <iostream>

#include "bfzeta/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= bfzeta::kAcceptanceCriteria; ++id) {
    const auto r = bfzeta::run_criterion(id);
    std::cout << bfzeta::format_criterion(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : std::string("acceptance: all 12 criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
