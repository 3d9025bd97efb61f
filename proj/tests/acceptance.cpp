// One line per acceptance criterion; exit status is nonzero if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "btq/verify.h"

int main(int argc, char** argv) {
  uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 12345;
  int failed = 0;
  for (auto& name : btq::suite_names()) {
    auto R = btq::run_suite(name, seed);
    std::string why;
    for (auto& c : R.checks)
      if (!c.pass) why += " [" + c.what + (c.detail.empty() ? "" : ": " + c.detail) + "]";
    if (R.seconds >= R.budget_seconds) why += " [over budget]";
    std::printf("%s %2d %-18s %-44s %7.2fs / %.0fs%s\n", R.pass() ? "PASS" : "FAIL", R.id, R.name.c_str(),
                R.title.c_str(), R.seconds, R.budget_seconds, why.c_str());
    std::fflush(stdout);
    failed += !R.pass();
  }
  return failed ? 1 : 0;
}
