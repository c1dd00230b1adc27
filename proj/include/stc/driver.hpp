#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stc::cli {

// Exit codes: 0 all verdicts pass, 1 a semantic check failed, 2 usage, IO or
// parse error.  Never throws; every failure becomes a diagnostic.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};
RunResult run_capture(const std::vector<std::string>& args);

const char* version();

}  // namespace stc::cli
