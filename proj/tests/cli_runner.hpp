// Runs the command line tool through the shell and captures stdout.

#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;
};

inline Result run(const std::string& args) {
  const std::string cmd = std::string("'") + FLATKAHLER_CLI + "' " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string tool() { return std::string("'") + FLATKAHLER_CLI + "'"; }

}  // namespace cli
