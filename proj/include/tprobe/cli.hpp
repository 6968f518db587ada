#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tprobe/distributions.hpp"
#include "tprobe/error.hpp"

namespace tprobe::cli {

/// Malformed command line input that the parser itself cannot catch.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Parses `name:key=val,...`. Recognized names: golden_nugget (alpha, n),
/// counterexample3 (n), f_a (n, eps), f_b (n), uniform01, file:<path.json>
/// and smooth:<spec>. A missing n falls back to `default_n`.
Distribution parse_distribution(const std::string& spec, std::optional<long long> default_n = std::nullopt);

/// Seed from THRESHOLD_PROBE_SEED, else 1.
std::uint64_t default_seed();

/// Runs one command. Exit codes: 0 success, 1 computation error, 2 usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tprobe::cli
