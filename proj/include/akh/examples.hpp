#pragma once

// Built-in diagrams used by the self test and the golden tests.

#include "akh/tangle.hpp"

namespace akh {

/// Two crossings, one loop. Over closure: a 3-crossing unknot diagram; under
/// closure: the right-handed trefoil.
extern const char* const kWorkedExampleJson;
AnnularTangle worked_example();

/// No crossings, no loops.
AnnularTangle trivial_tangle();

}  // namespace akh
