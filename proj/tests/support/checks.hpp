#pragma once

// Property checks shared by the unit tests and the acceptance run. Each
// returns a list of human-readable failures; empty means the property holds.

#include <random>
#include <string>
#include <vector>

#include "akh/annular_complex.hpp"
#include "akh/f2_linear.hpp"
#include "akh/tangle.hpp"

namespace akh::checks {

/// The seeded corpus used throughout the tests: c <= 6, loops <= 3.
const std::vector<AnnularTangle>& corpus();

/// Saddle classification on every edge of the cube of `t`.
std::vector<std::string> saddle_table(const AnnularTangle& t);

/// Winding and circle numbers of the cube of flip_outer_loop(t, mode) against
/// the cube of t, state by state. The table is stated for the over flip.
/// Requires at least one loop.
std::vector<std::string> flip_table(const AnnularTangle& t, Closure mode = Closure::Over);

/// d^2 = 0, (d0)^2 = 0, all bidegrees, the left/right identity for the
/// two-saddle term, and block recomposition.
std::vector<std::string> structure(const AnnularComplex& c);

/// Over and under builds agree once gradings are forgotten.
std::vector<std::string> ungraded_agreement(const AnnularComplex& over, const AnnularComplex& under);

/// Sum of the ranks of the entries from generators of bigrading (h, q) to
/// (h + dh, q + dq) that do not have that bidegree.
std::string bidegree_problem(const SparseMatrixF2& m, const std::vector<Generator>& gens, int dh, int dq);

struct RandomComplex {
  BigradedComplex complex;
  HomologyTable expected;
};

/// A minimal part plus contractible pairs, conjugated by random elementary
/// basis changes inside each bigrading. At most `max_size` generators.
RandomComplex random_complex(std::mt19937_64& rng, std::size_t max_size);

}  // namespace akh::checks
