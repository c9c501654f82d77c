#pragma once

// Reference Khovanov homology over F_2 of a closed diagram, computed directly
// from the full cube of resolutions with bitmask circle labels. Shares no
// code with the annular construction beyond the linear algebra.

#include <cstddef>

#include "akh/f2_linear.hpp"
#include "akh/tangle.hpp"

namespace akh {

constexpr std::size_t kOracleCrossingLimit = 20;

/// The cube complex. Reduced keeps the subcomplex where the circle through
/// the basepoint edge is labeled x, shifted so the unknot sits at (0,0).
BigradedComplex oracle_complex(const ClosedDiagram& d, bool reduced, std::size_t limit = kOracleCrossingLimit);

HomologyTable reduced_homology(const ClosedDiagram& d, std::size_t limit = kOracleCrossingLimit);
HomologyTable unreduced_homology(const ClosedDiagram& d, std::size_t limit = kOracleCrossingLimit);

}  // namespace akh
