// Runs every acceptance criterion and prints one line per criterion.
// Exit status is the number of failed criteria (capped at 125).

#include <cstdio>
#include <algorithm>
#include <cstdlib>

#include "relwave/acceptance.hpp"

int main(int argc, char** argv) {
  relwave::acceptance::Options opt;
  if (argc > 1) opt.threads = std::max(1, std::atoi(argv[1]));
  int failed = 0;
  relwave::acceptance::run_all(opt, [&](const relwave::acceptance::CriterionResult& r) {
    std::printf("%s\n", relwave::acceptance::format(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d criteria failed\n", failed);
  return failed > 125 ? 125 : failed;
}
