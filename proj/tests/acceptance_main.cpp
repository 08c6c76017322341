// Runs acceptance criteria by name or number; all of them without arguments.
// Exit status is 0 only when every selected criterion passes.

#include <cstdio>
#include <stdexcept>
#include <vector>

#include "rescurve/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  try {
    if (argc < 2) ids = rescurve::suite_criteria("all");
    for (int i = 1; i < argc; ++i)
      for (int id : rescurve::suite_criteria(argv[i])) ids.push_back(id);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  int failed = 0;
  for (int id : ids) {
    const auto result = rescurve::run_criterion(id);
    std::printf("%s\n", rescurve::format_result(result).c_str());
    std::fflush(stdout);
    failed += result.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
