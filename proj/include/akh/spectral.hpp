#pragma once

// The spectral sequence of the resolution-degree filtration
// K^r = (sum over s >= r of C^s) on the annular complex. Pages are computed
// from approximate cycles Z_r^s = {x in K^s : dx in K^{s+r}}, separately in
// each bigrading (the differential is homogeneous of bidegree (1,0)).

#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "akh/annular_complex.hpp"

namespace akh {

struct Page {
  int r = 0;
  std::map<int, std::size_t> dims;     // s -> dim E_r^s
  std::map<int, std::size_t> d_ranks;  // s -> rank of d_r : E_r^s -> E_r^{s+r}
  std::map<std::tuple<int, int, int>, std::size_t> bigraded;  // (s, h, q) -> dim
  std::size_t total() const;
};

struct SpectralSequence {
  std::vector<Page> pages;  // E_1, E_2, ...
  std::map<int, std::size_t> e_infinity;
  /// Sum of ranks of d_r for r >= 3 (none are expected).
  std::size_t anomalies = 0;
  std::size_t e_infinity_total() const;
};

/// E_2 = H(C, d0) per resolution degree, with d_2 computed directly as the
/// induced map [x] -> [d_pm x].
Page e2_page(const AnnularComplex& c);

/// Pages E_1 .. E_{r_max}, stopping after the page where the filtration span
/// guarantees stability. d_r ranks are recovered from consecutive pages.
SpectralSequence run_pages(const AnnularComplex& c, int r_max = 0);

nlohmann::json to_json(const SpectralSequence& ss, bool bigraded);

}  // namespace akh
