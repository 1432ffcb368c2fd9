// Acceptance criteria runner: one line per criterion, exit 0 iff all pass.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "acs/checks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::size_t trunc = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, acs::kCheckCount));
  app.add_option("--trunc", trunc, "override the ladder truncation");
  CLI11_PARSE(app, argc, argv);

  acs::CheckOptions opts;
  if (trunc > 0) opts.trunc = trunc;
  const auto results = only ? std::vector{acs::run_check(only, opts)} : acs::run_all_checks(opts);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << acs::format_check(r) << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
