#include "akh/examples.hpp"

namespace akh {

const char* const kWorkedExampleJson =
    R"({"loop_number": 1, "crossings": [[2, 6, 3, 5], [4, 2, 5, 1]], "boundary": [6, 3, 1, 4]})";

AnnularTangle worked_example() { return parse_tangle(kWorkedExampleJson); }

AnnularTangle trivial_tangle() { return AnnularTangle::make(0, {}, {1, 1}); }

}  // namespace akh
