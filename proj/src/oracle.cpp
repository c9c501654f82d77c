#include "akh/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "akh/errors.hpp"

namespace akh {

namespace {

// Circles of one smoothing, as a map from edge label to circle index.
// Circles are numbered by their smallest edge label; free loops come last.
struct Smoothing {
  std::map<int, int> circle_of;
  int circles = 0;
};

Smoothing smooth_all(const ClosedDiagram& d, std::uint64_t state) {
  const std::size_t c = d.crossings.size();
  std::map<int, int> parent;
  for (const auto& x : d.crossings) {
    for (int lab : x) parent.emplace(lab, lab);
  }
  auto find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t k = 0; k < c; ++k) {
    const auto& x = d.crossings[k];
    if (((state >> (c - 1 - k)) & 1U) == 0) {
      unite(x[0], x[1]);
      unite(x[2], x[3]);
    } else {
      unite(x[1], x[2]);
      unite(x[3], x[0]);
    }
  }
  Smoothing s;
  std::map<int, int> root_index;
  for (auto& [lab, par] : parent) {
    const int root = find(lab);
    auto [it, fresh] = root_index.emplace(root, s.circles);
    if (fresh) ++s.circles;
    s.circle_of[lab] = it->second;
  }
  s.circles += d.free_loops;
  return s;
}

}  // namespace

BigradedComplex oracle_complex(const ClosedDiagram& d, bool reduced, std::size_t limit) {
  const std::size_t c = d.crossings.size();
  if (c > limit) {
    throw InputError("closed diagram has " + std::to_string(c) + " crossings, above the limit of " + std::to_string(limit));
  }
  const std::uint64_t states = std::uint64_t{1} << c;
  std::vector<Smoothing> sm;
  sm.reserve(states);
  for (std::uint64_t v = 0; v < states; ++v) sm.push_back(smooth_all(d, v));

  auto marked = [&](const Smoothing& s) -> int {
    if (c == 0) return 0;
    auto it = s.circle_of.find(d.basepoint_edge);
    if (it == s.circle_of.end()) throw InputError("basepoint edge is not in the diagram");
    return it->second;
  };

  // Generator numbering: state-major, then label mask (bit i set = circle i is x).
  std::vector<std::uint64_t> offset(states + 1, 0);
  std::vector<std::vector<std::uint32_t>> masks(states);
  for (std::uint64_t v = 0; v < states; ++v) {
    const int mk = marked(sm[v]);
    for (std::uint32_t mask = 0; mask < (1U << sm[v].circles); ++mask) {
      if (reduced && ((mask >> mk) & 1U) == 0) continue;
      masks[v].push_back(mask);
    }
    offset[v + 1] = offset[v] + masks[v].size();
  }
  auto index = [&](std::uint64_t v, std::uint32_t mask) -> std::size_t {
    const auto& ms = masks[v];
    auto it = std::lower_bound(ms.begin(), ms.end(), mask);
    if (it == ms.end() || *it != mask) throw InvariantError("reduced subcomplex is not closed under the differential");
    return offset[v] + static_cast<std::size_t>(it - ms.begin());
  };

  std::vector<Generator> gens;
  for (std::uint64_t v = 0; v < states; ++v) {
    const int r = std::popcount(v);
    for (auto mask : masks[v]) {
      const int xs = std::popcount(mask);
      const int ones = sm[v].circles - xs;
      Generator g;
      g.id = std::to_string(v) + ":" + std::to_string(mask);
      g.h = r - d.n_minus;
      g.q = r + ones - xs + d.n_plus - 2 * d.n_minus + (reduced ? 1 : 0);
      gens.push_back(g);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::uint64_t v = 0; v < states; ++v) {
    for (std::size_t k = 0; k < c; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (c - 1 - k);
      if ((v & bit) != 0) continue;
      const std::uint64_t w = v | bit;
      const Smoothing& a = sm[v];
      const Smoothing& b = sm[w];
      const auto& x = d.crossings[k];
      const int a0 = a.circle_of.at(x[0]);
      const int a2 = a.circle_of.at(x[2]);
      // Where each untouched source circle goes in the target.
      std::vector<int> image(static_cast<std::size_t>(a.circles), -1);
      for (const auto& [lab, ci] : a.circle_of) image[static_cast<std::size_t>(ci)] = b.circle_of.at(lab);
      for (int f = 0; f < d.free_loops; ++f) {
        image[static_cast<std::size_t>(a.circles - d.free_loops + f)] = b.circles - d.free_loops + f;
      }
      for (auto mask : masks[v]) {
        const std::size_t j = offset[v] + static_cast<std::size_t>(
                                              std::lower_bound(masks[v].begin(), masks[v].end(), mask) - masks[v].begin());
        std::uint32_t carried = 0;
        for (int ci = 0; ci < a.circles; ++ci) {
          if (ci == a0 || ci == a2) continue;
          if ((mask >> ci) & 1U) carried |= 1U << image[static_cast<std::size_t>(ci)];
        }
        const bool xa0 = ((mask >> a0) & 1U) != 0;
        if (a0 != a2) {
          // Merge: 1*1 = 1, 1*x = x, x*x = 0.
          const bool xa2 = ((mask >> a2) & 1U) != 0;
          if (xa0 && xa2) continue;
          const int target = b.circle_of.at(x[0]);
          entries.emplace_back(index(w, carried | ((xa0 || xa2) ? 1U << target : 0U)), j);
        } else {
          // Split: 1 -> 1x + x1, x -> xx.
          const int t0 = b.circle_of.at(x[0]);
          const int t2 = b.circle_of.at(x[2]);
          if (t0 == t2) throw InvariantError("a saddle on one circle did not split it");
          if (xa0) {
            entries.emplace_back(index(w, carried | (1U << t0) | (1U << t2)), j);
          } else {
            entries.emplace_back(index(w, carried | (1U << t0)), j);
            entries.emplace_back(index(w, carried | (1U << t2)), j);
          }
        }
      }
    }
  }
  const std::size_t n = gens.size();
  return BigradedComplex(BigradedSpace(std::move(gens)), SparseMatrixF2::from_entries(n, n, std::move(entries)));
}

HomologyTable reduced_homology(const ClosedDiagram& d, std::size_t limit) {
  return homology_dims(oracle_complex(d, true, limit));
}

HomologyTable unreduced_homology(const ClosedDiagram& d, std::size_t limit) {
  return homology_dims(oracle_complex(d, false, limit));
}

}  // namespace akh
