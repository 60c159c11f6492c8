#include <chrono>
#include <cstdio>
#include <exception>

#include "acceptance.hpp"

using namespace rank1::acceptance;

int main(int argc, char **argv)
{
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  bool all = true;
  auto criteria = all_criteria();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = criteria[i]();
    } catch (std::exception const &e) {
      c.id = static_cast<int>(i + 1);
      c.pass = false;
      c.summary = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s (%.1fs)\n", c.id, c.pass ? "PASS" : "FAIL", c.summary.c_str(), secs);
    for (auto const &r : c.rows)
      if (verbose || !r.pass)
        std::printf("  %s %s: %s\n", r.pass ? "ok  " : "FAIL", r.subject.c_str(), r.outcome.c_str());
    std::fflush(stdout);
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
