#include "akh/corpus.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

#include "akh/errors.hpp"

namespace akh {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw InputError("uniform_below needs a positive bound");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

namespace {

// Grid directions: 0 = +x, 1 = +y, 2 = -x, 3 = -y. On the cylinder +x runs
// counterclockwise; the disk picture uses (-x, y) so that it is positively
// oriented.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

struct Visit {
  int x;
  int y;
  int dir_in;   // direction of travel when arriving
  int dir_out;  // direction of travel when leaving
};

}  // namespace

bool random_tangle(std::mt19937_64& rng, std::size_t max_crossings, int max_loops, AnnularTangle& out) {
  const int width = 2 + static_cast<int>(uniform_below(rng, 5));
  const int height = 1 + static_cast<int>(uniform_below(rng, 5));  // interior rows 1..height
  const int x0 = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(width)));

  // 0 fresh, 1 passed straight along x, 2 passed straight along y, 3 closed.
  std::map<std::pair<int, int>, int> vstate;
  std::set<std::array<int, 3>> used_edges;  // (x, y, axis) from (x,y) towards +axis
  auto edge_key = [&](int x, int y, int dir) -> std::array<int, 3> {
    if (dir == 0) return {x, y, 0};
    if (dir == 1) return {x, y, 1};
    if (dir == 2) return {(x + width - 1) % width, y, 0};
    return {x, y - 1, 1};
  };

  std::vector<Visit> path;
  int x = x0;
  int y = 1;
  int dir = 1;
  used_edges.insert(edge_key(x0, 0, 1));
  const int max_steps = 6 * width * height + 8;
  for (int step = 0;; ++step) {
    if (step > max_steps) return false;
    const int vs = vstate[{x, y}];
    std::vector<int> options;
    if (vs == 0) {
      options = {dir, (dir + 1) % 4, (dir + 3) % 4};
    } else {
      options = {dir};  // crossing an earlier straight pass
    }
    std::vector<int> allowed;
    for (int d : options) {
      if (used_edges.count(edge_key(x, y, d)) != 0) continue;
      const int ny = y + kDy[d];
      if (ny < 1 && d == 3) continue;
      if (ny > height) {
        allowed.push_back(d);
        continue;
      }
      const int nx = (x + kDx[d] + width) % width;
      const int ns = vstate[{nx, ny}];
      const int axis = d % 2 == 0 ? 1 : 2;
      if (ns == 0 || (ns != 3 && ns != axis)) allowed.push_back(d);
    }
    if (allowed.empty()) return false;
    // Leaving through the top is taken only one time in four while the walk
    // has somewhere else to go; otherwise most walks are nearly straight.
    const bool can_exit = std::find(allowed.begin(), allowed.end(), 1) != allowed.end() && y == height;
    if (can_exit && allowed.size() > 1 && uniform_below(rng, 4) != 0) {
      allowed.erase(std::find(allowed.begin(), allowed.end(), 1));
    }
    // Going straight leaves the vertex open for a later crossing, so it is
    // weighted double.
    if (vs == 0 && std::find(allowed.begin(), allowed.end(), dir) != allowed.end()) allowed.push_back(dir);
    const int d = allowed[uniform_below(rng, allowed.size())];
    if (vs == 0) {
      vstate[{x, y}] = d == dir ? (d % 2 == 0 ? 1 : 2) : 3;
    } else {
      vstate[{x, y}] = 3;
    }
    path.push_back({x, y, dir, d});
    used_edges.insert(edge_key(x, y, d));
    if (y + kDy[d] > height) break;
    x = (x + kDx[d] + width) % width;
    y += kDy[d];
    dir = d;
  }

  std::map<std::pair<int, int>, int> visits;
  for (const auto& v : path) ++visits[{v.x, v.y}];
  std::size_t crossings = 0;
  for (const auto& [pos, n] : visits) {
    if (n == 2) ++crossings;
  }
  if (crossings > max_crossings) return false;

  // Label edges along the walk: a new edge starts after every crossing pass
  // and every seam traversal.
  struct Pass {
    int dir_in;
    int dir_out;
    int label_in;
    int label_out;
  };
  std::map<std::pair<int, int>, std::vector<Pass>> passes;
  struct Seam {
    int y;
    int left_label;   // disk side next to column width-1
    int right_label;  // disk side next to column 0
  };
  std::vector<Seam> seams;
  int label = 1;
  for (const auto& v : path) {
    if (visits[{v.x, v.y}] == 2) {
      passes[{v.x, v.y}].push_back({v.dir_in, v.dir_out, label, label + 1});
      ++label;
    }
    const bool wraps = (v.dir_out == 0 && v.x == width - 1) || (v.dir_out == 2 && v.x == 0);
    if (wraps) {
      if (v.dir_out == 0) {
        seams.push_back({v.y, label, label + 1});
      } else {
        seams.push_back({v.y, label + 1, label});
      }
      ++label;
    }
  }
  const int loops = static_cast<int>(seams.size());
  if (loops > max_loops) return false;

  std::vector<Crossing> xs;
  for (const auto& [pos, ps] : passes) {
    // Side labels in grid terms: the side a pass enters from carries its
    // incoming label, the side it leaves through its outgoing label.
    std::array<int, 4> side{};  // indexed by grid direction of the side
    for (const auto& p : ps) {
      side[static_cast<std::size_t>((p.dir_in + 2) % 4)] = p.label_in;
      side[static_cast<std::size_t>(p.dir_out)] = p.label_out;
    }
    const std::size_t under = uniform_below(rng, 2);
    const int under_from = (ps[under].dir_in + 2) % 4;
    // Counterclockwise in the disk picture: sides -x, +y, +x, -y.
    constexpr int kCcw[4] = {2, 1, 0, 3};
    int start = 0;
    while (kCcw[start] != under_from) ++start;
    Crossing c{};
    for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] = side[static_cast<std::size_t>(kCcw[(start + k) % 4])];
    xs.push_back(c);
  }
  // Crossings are listed by their smallest label.
  std::vector<std::pair<int, Crossing>> keyed;
  for (const auto& c : xs) keyed.emplace_back(*std::min_element(c.begin(), c.end()), c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  xs.clear();
  for (auto& [k, c] : keyed) xs.push_back(c);

  std::vector<Seam> by_row = seams;
  std::sort(by_row.begin(), by_row.end(), [](const Seam& a, const Seam& b) { return a.y > b.y; });
  std::vector<int> boundary;
  boundary.push_back(label);  // outer endpoint
  for (const auto& s : by_row) boundary.push_back(s.left_label);
  boundary.push_back(1);  // inner endpoint
  for (auto it = by_row.rbegin(); it != by_row.rend(); ++it) boundary.push_back(it->right_label);
  out = AnnularTangle::make(loops, std::move(xs), std::move(boundary));
  return true;
}

std::vector<AnnularTangle> generate_corpus(const CorpusOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<AnnularTangle> corpus;
  corpus.reserve(opts.count);
  // Stratify by crossing number: short walks dominate otherwise. Samples
  // that miss the current target are pooled for later draws.
  std::vector<std::deque<AnnularTangle>> pools(opts.max_crossings + 1);
  AnnularTangle t = AnnularTangle::make(0, {}, {1, 1});
  while (corpus.size() < opts.count) {
    auto& pool = pools[uniform_below(rng, opts.max_crossings + 1)];
    while (pool.empty()) {
      if (random_tangle(rng, opts.max_crossings, opts.max_loops, t)) pools[t.crossing_count()].push_back(t);
    }
    corpus.push_back(std::move(pool.front()));
    pool.pop_front();
  }
  return corpus;
}

}  // namespace akh
