// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it directly.

#ifndef EDL_CLI_HPP
#define EDL_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace edl::cli {

enum Exit : int {
  ok = 0,
  claim_failed = 1,  // examples: a replayed claim did not hold
  usage = 2,
  load = 3,
  evaluation = 4,
  disagreement = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// $EDL_FIXTURES if set, else the directory baked in at build time.
std::filesystem::path fixture_dir();

// The bundled fixture names, sorted.
std::vector<std::string> fixture_names();

}  // namespace edl::cli

#endif  // EDL_CLI_HPP
