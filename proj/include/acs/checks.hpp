#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace acs {

struct CheckOptions {
  /// Replaces the ladder truncation of the criteria that take a fixed window
  /// (1, 5, 6, 7, 11); used to provoke truncation failures on purpose.
  std::optional<std::size_t> trunc;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Number of acceptance criteria; ids run from 1 to kCheckCount.
inline constexpr int kCheckCount = 12;

std::string check_name(int id);

/// Runs one criterion. Exceptions inside a criterion become a failing result
/// whose detail carries the message. Output depends only on `opts`.
CheckResult run_check(int id, const CheckOptions& opts = {});
std::vector<CheckResult> run_all_checks(const CheckOptions& opts = {});

/// "PASS  3 figure-2 intervals: ..." on one line, no trailing newline.
std::string format_check(const CheckResult& r);

}  // namespace acs
