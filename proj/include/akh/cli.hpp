#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "akh/f2_linear.hpp"
#include "akh/tangle.hpp"

namespace akh {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInvalidInput = 2, kInternalError = 3 };

struct RunConfig {
  std::string command;  // resolve, complex, homology, oracle, compare, spectral, selftest, gen-corpus
  std::vector<std::string> inputs;  // files or directories of *.json
  std::optional<Closure> closure;   // compare defaults to both, the rest to over
  std::string format = "json";      // json | table
  std::optional<std::size_t> max_crossings;  // crossing limit, or the corpus bound for gen-corpus
  std::uint64_t seed = 1;
  bool bigraded = false;
  bool unsafe_large = false;
  std::size_t count = 100;
  int max_loops = 3;
  std::string out_dir;
};

constexpr std::size_t kSafeCrossingLimit = 20;

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Poincare grid: one column per h, one row per q (descending).
std::string render_table(const HomologyTable& table);

/// Line diff of two tables: "-" lines only in `expected`, "+" lines only in
/// `actual`. Empty when equal.
std::string diff_tables(const HomologyTable& expected, const HomologyTable& actual, const std::string& expected_name,
                        const std::string& actual_name);

}  // namespace akh
