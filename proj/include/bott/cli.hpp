#pragma once

// Command implementations behind the bott executable. Each returns the
// process exit code and writes its report to out (text or JSON).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace bott {

enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // well-formed negative answer or failed verification
  kExitResource = 2,
  kExitBound = 3,
  kExitParse = 4,
};

struct Config {
  int max_n = 7;
  std::size_t orbit_memory_budget = std::size_t{1} << 30;
  int gl_ceiling = 6;
  int threads = 0;  // 0 = auto
  std::string cache_dir;
  std::uint64_t seed = 1;
  bool json = false;
};

// Defaults, with cache_dir taken from BOTT_CACHE_DIR, else
// $XDG_CACHE_HOME/bott, else $HOME/.cache/bott.
Config default_config();

// Throws BoundError when a bound is out of range.
void validate(const Config& config);

// Cache file for the class table of B(n).
std::string cache_path(const Config& config, int n);

int cmd_classify(const Config& config, int n, const std::string& out_path, std::ostream& out, std::ostream& err);
int cmd_iso(const Config& config, const std::string& file_a, const std::string& file_b, std::ostream& out,
            std::ostream& err);
int cmd_decompose(const Config& config, const std::string& file, std::ostream& out, std::ostream& err);
int cmd_invariants(const Config& config, const std::string& file, std::ostream& out, std::ostream& err);
int cmd_canon(const Config& config, const std::string& file, std::ostream& out, std::ostream& err);

struct VerifyArgs {
  std::string suite;  // affine, unique-decomposition, cancellation, theorem-1
  int n = 3;
  int samples = 20;
  std::size_t instances = 0;  // affine: 0 = exhaustive for n <= 4, else 200
  std::size_t pairs = 0;      // theorem-1: 0 = all pairs for n <= 3, else 500
};
int cmd_verify(const Config& config, const VerifyArgs& args, std::ostream& out, std::ostream& err);

int cmd_count_delta(const Config& config, int n, std::ostream& out, std::ostream& err);

}  // namespace bott
