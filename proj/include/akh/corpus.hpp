#pragma once

// Random annular 1-tangles from self-crossing walks on a cylinder grid.
// The walk starts on the inner boundary row, may revisit a vertex only by
// crossing straight through an earlier straight pass, and stops when it steps
// onto the outer boundary row. Cutting the cylinder along one seam gives the
// disk encoding; over/under is chosen uniformly at each crossing.
// generate_corpus draws a target crossing number uniformly for each slot and
// rejects walks until one has it, so large diagrams are not crowded out.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "akh/tangle.hpp"

namespace akh {

/// Uniform integer in [0, n), identical on every platform for a given engine
/// state (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct CorpusOptions {
  std::size_t count = 100;
  std::size_t max_crossings = 6;
  int max_loops = 3;
  std::uint64_t seed = 1;
};

/// One walk; returns false if it got stuck or broke the bounds.
bool random_tangle(std::mt19937_64& rng, std::size_t max_crossings, int max_loops, AnnularTangle& out);

std::vector<AnnularTangle> generate_corpus(const CorpusOptions& opts);

}  // namespace akh
