#pragma once

// Command-line front end. `run` never exits the process: it returns the exit
// code (0 success, 1 suite failure, 2 usage or precondition error) so tests
// can drive it with string streams.

#include "altzeta/special.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace altzeta::cli {

/// Parses `RE`, `RE+IMi`, `RE-IMi` or `IMi`. Throws Errc::DomainError.
cplx parse_complex(const std::string& text);

/// "4,8,16" or "lo:hi" (doubling from lo while <= hi). Throws Errc::DomainError.
std::vector<int> parse_n_range(const std::string& text);

/// Positive integer count, accepting exponent notation such as 1e5.
long parse_count(const std::string& text);

/// Comma-separated list of doubles.
std::vector<double> parse_list(const std::string& text);

/// Seed used when --seed is absent: ALTZETA_SEED if set, else 42.
std::uint64_t default_seed();

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altzeta::cli
