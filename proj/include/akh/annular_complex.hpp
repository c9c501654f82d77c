#pragma once

// The bigraded complex of an annular 1-tangle: one copy of A^{(x)c(p)} per
// resolution p, shifted by resolution degree, winding sector and closure,
// with differential d0 + (dtilde_L Q + Q dtilde_L) for the over closure and
// d0 + (dtilde_L P + P dtilde_L) for the under closure.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "akh/f2_linear.hpp"
#include "akh/frobenius.hpp"
#include "akh/resolution.hpp"
#include "akh/tangle.hpp"

namespace akh {

struct GradingShift {
  Closure mode = Closure::Over;
  int loops = 0;
  int hT = 0;  // -n_-
  int qT = 0;  // n_+ - 2 n_-
  int hA(int n) const;
  int qA(int n) const;
};

GradingShift grading_shift(const AnnularTangle& t, Closure mode);

struct AnnularGenerator {
  State bits = 0;
  Labeling labels;
  int h = 0;
  int q = 0;
  int n = 0;  // winding sector
  int s = 0;  // resolution degree
  std::string id;
};

struct AnnularComplex {
  Closure mode = Closure::Over;
  GradingShift shift;
  Cube cube;
  std::vector<AnnularGenerator> generators;
  std::vector<std::size_t> state_offset;  // first generator of each state
  SparseMatrixF2 d0;
  SparseMatrixF2 dtilde_l;
  SparseMatrixF2 dtilde_r;
  SparseMatrixF2 q_map;
  SparseMatrixF2 p_map;
  SparseMatrixF2 d_pm;  // the two-saddle part for this closure

  std::size_t index_of(State bits, const Labeling& labels) const;
  BigradedSpace space() const;
  /// d0 + d_pm, validated (d^2 = 0, bidegree (1,0)).
  BigradedComplex complex() const;
};

/// Builds every piece for one closure. Throws InvariantError with a dump of
/// the offending generators if the assembled differential does not square
/// to zero.
AnnularComplex build_annular_complex(const AnnularTangle& t, Closure mode,
                                     std::size_t limit = kDefaultCrossingLimit);

BigradedSpace build_space(const AnnularTangle& t, Closure mode);
SparseMatrixF2 build_d0(const AnnularTangle& t, Closure mode);
SparseMatrixF2 build_dtilde(const AnnularTangle& t, Closure mode, Side side);
SparseMatrixF2 build_Q(const AnnularTangle& t, Closure mode);
SparseMatrixF2 build_P(const AnnularTangle& t, Closure mode);
BigradedComplex build_differential(const AnnularTangle& t, Closure mode);

/// Returns the first entry of `m` whose bidegree is not (dh, dq), as
/// "source -> target" ids, or an empty string.
std::string bidegree_violation(const SparseMatrixF2& m, const std::vector<AnnularGenerator>& gens, int dh, int dq);

using TypePair = std::pair<TangleType, TangleType>;  // (source type, target type)

/// Splits `m` into blocks by the tangle types of source and target states.
/// Each block keeps the full matrix size.
std::map<TypePair, SparseMatrixF2> block_by_type(const SparseMatrixF2& m, const AnnularComplex& c);

nlohmann::json complex_to_json(const AnnularComplex& c);

}  // namespace akh
