#include "akh/tangle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "akh/errors.hpp"

namespace akh {

std::string to_string(Closure mode) { return mode == Closure::Over ? "over" : "under"; }

Closure parse_closure(const std::string& s) {
  if (s == "over" || s == "+") return Closure::Over;
  if (s == "under" || s == "-") return Closure::Under;
  throw InputError("closure must be 'over' or 'under', got '" + s + "'");
}

AnnularTangle AnnularTangle::make(int loop_number, std::vector<Crossing> crossings,
                                  std::vector<int> boundary) {
  if (loop_number < 0) throw InputError("loop_number must be non-negative");
  AnnularTangle t;
  t.loop_number_ = loop_number;
  t.crossings_ = std::move(crossings);
  t.boundary_ = std::move(boundary);
  const std::size_t points = 2 * static_cast<std::size_t>(t.m());
  if (t.boundary_.size() != points) {
    throw InputError("boundary has " + std::to_string(t.boundary_.size()) + " points but m = loop_number+1 = " +
                     std::to_string(t.m()) + " requires " + std::to_string(points));
  }
  t.index();

  // Planarity: with a vertex at infinity whose rotation is the boundary read
  // clockwise, the map is a sphere iff V - E + F = 2.
  const std::size_t c = t.crossings_.size();
  const std::size_t n = t.half_edge_count();
  auto succ = [&](std::size_t h) -> std::size_t {
    if (h < 4 * c) return 4 * (h / 4) + (h + 1) % 4;
    const std::size_t b = h - 4 * c;
    return 4 * c + (b + points - 1) % points;
  };
  std::vector<char> seen(n, 0);
  std::size_t faces = 0;
  for (std::size_t h0 = 0; h0 < n; ++h0) {
    if (seen[h0] != 0) continue;
    ++faces;
    for (std::size_t h = h0; seen[h] == 0; h = succ(t.mate_[h])) seen[h] = 1;
  }
  const std::size_t expected_faces = c + static_cast<std::size_t>(t.m()) + 1;
  if (faces != expected_faces) {
    throw InputError("diagram is not planar in the disk (found " + std::to_string(faces) + " faces, expected " +
                     std::to_string(expected_faces) + ")");
  }

  t.orient();
  bool rotated = false;
  for (std::size_t k = 0; k < c; ++k) {
    if (t.incoming(t.crossing_half_edge(k, 0))) continue;
    if (!t.incoming(t.crossing_half_edge(k, 2))) {
      throw InvariantError("under-strand of crossing " + std::to_string(k) + " is not traversed");
    }
    auto& x = t.crossings_[k];
    x = {x[2], x[3], x[0], x[1]};
    rotated = true;
  }
  if (rotated) {
    t.index();
    t.orient();
  }
  return t;
}

void AnnularTangle::index() {
  label_.clear();
  for (const auto& x : crossings_) label_.insert(label_.end(), x.begin(), x.end());
  label_.insert(label_.end(), boundary_.begin(), boundary_.end());
  std::map<int, std::vector<std::size_t>> where;
  for (std::size_t h = 0; h < label_.size(); ++h) {
    if (label_[h] <= 0) throw InputError("edge labels must be positive integers");
    where[label_[h]].push_back(h);
  }
  mate_.assign(label_.size(), 0);
  max_label_ = 0;
  for (const auto& [lab, hs] : where) {
    if (hs.size() != 2) {
      throw InputError("edge label " + std::to_string(lab) + " occurs " + std::to_string(hs.size()) +
                       " times (every label must occur exactly twice)");
    }
    mate_[hs[0]] = hs[1];
    mate_[hs[1]] = hs[0];
    max_label_ = std::max(max_label_, lab);
  }
}

int AnnularTangle::glued_partner(int point) const {
  if (point == 1 || point == m() + 1) return 0;
  return 2 * m() + 2 - point;
}

void AnnularTangle::orient() {
  incoming_.assign(label_.size(), 0);
  strand_.clear();
  std::set<int> used;
  std::size_t cur = boundary_half_edge(m() + 1);
  for (;;) {
    if (!used.insert(label_[cur]).second) throw InvariantError("strand trace revisits an edge");
    strand_.push_back(label_[cur]);
    const std::size_t next = mate_[cur];
    incoming_[next] = 1;
    if (!is_boundary(next)) {
      cur = 4 * (next / 4) + (next + 2) % 4;
      continue;
    }
    const int p = boundary_point(next);
    if (p == 1) break;
    if (p == m() + 1) throw InvariantError("strand returned to the inner endpoint");
    cur = boundary_half_edge(glued_partner(p));
  }
  const std::size_t edges = label_.size() / 2;
  if (strand_.size() != edges) {
    throw InputError("diagram has a closed component: the strand covers " + std::to_string(strand_.size()) +
                     " of " + std::to_string(edges) + " edges");
  }
}

AnnularTangle tangle_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("tangle file must be a JSON object");
    const int loops = j.at("loop_number").get<int>();
    std::vector<Crossing> crossings;
    for (const auto& x : j.at("crossings")) {
      if (!x.is_array() || x.size() != 4) throw InputError("each crossing must list exactly 4 edge labels");
      crossings.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
    }
    auto boundary = j.at("boundary").get<std::vector<int>>();
    return AnnularTangle::make(loops, std::move(crossings), std::move(boundary));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed tangle file: ") + e.what());
  }
}

AnnularTangle parse_tangle(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tangle file is not valid JSON: ") + e.what());
  }
  return tangle_from_json(j);
}

nlohmann::json to_json(const AnnularTangle& t) {
  nlohmann::json x = nlohmann::json::array();
  for (const auto& c : t.crossings()) x.push_back(c);
  return {{"loop_number", t.loop_number()}, {"crossings", x}, {"boundary", t.boundary()}};
}

std::vector<int> crossing_signs(const AnnularTangle& t) {
  std::vector<int> signs;
  for (std::size_t k = 0; k < t.crossing_count(); ++k) {
    signs.push_back(t.incoming(t.crossing_half_edge(k, 3)) ? 1 : -1);
  }
  return signs;
}

AnnularTangle mirror(const AnnularTangle& t) {
  std::vector<Crossing> xs;
  for (const auto& x : t.crossings()) xs.push_back({x[1], x[2], x[3], x[0]});
  return AnnularTangle::make(t.loop_number(), std::move(xs), t.boundary());
}

ClosedDiagram make_closed(std::vector<Crossing> crossings, int basepoint_edge, int free_loops) {
  ClosedDiagram d;
  d.crossings = std::move(crossings);
  d.basepoint_edge = basepoint_edge;
  d.free_loops = free_loops;
  const std::size_t n = 4 * d.crossings.size();
  std::map<int, std::vector<std::size_t>> where;
  for (std::size_t h = 0; h < n; ++h) where[d.crossings[h / 4][h % 4]].push_back(h);
  std::vector<std::size_t> mate(n);
  for (const auto& [lab, hs] : where) {
    if (hs.size() != 2) throw InputError("closed diagram label " + std::to_string(lab) + " does not occur twice");
    mate[hs[0]] = hs[1];
    mate[hs[1]] = hs[0];
  }
  if (!d.crossings.empty() && where.count(basepoint_edge) == 0) {
    throw InputError("basepoint edge " + std::to_string(basepoint_edge) + " is not in the diagram");
  }

  // entering[h]: 1 when the traced orientation enters the crossing at h.
  std::vector<int> entering(n, -1);
  auto trace = [&](std::size_t start) {
    std::size_t h = start;
    do {
      if (entering[h] != -1) throw InvariantError("inconsistent orientation while tracing the diagram");
      const std::size_t out = 4 * (h / 4) + (h + 2) % 4;
      entering[h] = 1;
      entering[out] = 0;
      h = mate[out];
    } while (h != start);
    ++d.components;
  };
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    if (entering[4 * k] == -1) trace(4 * k);
  }
  // Components that only ever pass over get an arbitrary orientation.
  for (std::size_t h = 0; h < n; ++h) {
    if (entering[h] == -1) trace(h);
  }
  d.components += free_loops;
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    if (entering[4 * k] != 1) {
      throw InvariantError("crossing " + std::to_string(k) + " is not listed from its incoming under-strand");
    }
    const int s = entering[4 * k + 3] == 1 ? 1 : -1;
    d.signs.push_back(s);
    (s > 0 ? d.n_plus : d.n_minus) += 1;
  }
  return d;
}

ClosedDiagram close(const AnnularTangle& t, Closure mode) {
  const int l = t.loop_number();
  const int m = t.m();
  const auto& b = t.boundary();
  auto e = [&](int point) { return b[static_cast<std::size_t>(point - 1)]; };

  std::vector<Crossing> xs = t.crossings();
  if (l == 0) {
    const int outer = e(1);
    const int inner = e(m + 1);
    if (outer == inner) return make_closed({}, outer, 1);
    for (auto& x : xs) {
      for (auto& lab : x) {
        if (lab == inner) lab = outer;
      }
    }
    auto d = make_closed(std::move(xs), outer);
    if (d.signs != crossing_signs(t)) throw InvariantError("closure changed a crossing sign");
    return d;
  }

  // Arc a runs down the left/right seam: a_0 = e_1, a_l = e_{m+1}.
  std::vector<int> a(static_cast<std::size_t>(l) + 1);
  a[0] = e(1);
  for (int k = 1; k < l; ++k) a[static_cast<std::size_t>(k)] = t.max_label() + k;
  a[static_cast<std::size_t>(l)] = e(m + 1);
  for (int k = 1; k <= l; ++k) {
    const int i = k + 1;
    const int j = 2 * m + 1 - k;
    const int ei = e(i);
    const int ej = e(j);
    const int above = a[static_cast<std::size_t>(k - 1)];
    const int below = a[static_cast<std::size_t>(k)];
    if (mode == Closure::Over) {
      const bool i_to_j = t.incoming(t.boundary_half_edge(i));
      xs.push_back(i_to_j ? Crossing{ei, above, ej, below} : Crossing{ej, below, ei, above});
    } else {
      xs.push_back({above, ej, below, ei});
    }
  }
  auto d = make_closed(std::move(xs), e(m + 1));
  const auto tangle_signs = crossing_signs(t);
  if (!std::equal(tangle_signs.begin(), tangle_signs.end(), d.signs.begin())) {
    throw InvariantError("closure changed a crossing sign");
  }
  if (d.components != 1) throw InvariantError("closure of a 1-tangle is not a knot");
  return d;
}

AnnularTangle flip_outer_loop(const AnnularTangle& t, Closure mode) {
  if (t.loop_number() == 0) throw InputError("no loop to flip");
  const int m = t.m();
  const auto& b = t.boundary();
  const int e1 = b[0];
  const int e2 = b[1];
  const int e2m = b[static_cast<std::size_t>(2 * m - 1)];
  const int f = t.max_label() + 1;

  // The new crossing sits just above point 1: e_1 below, f above, e_2 to the
  // left and e_2m to the right. The loop passes under the endpoint strand for
  // an over closure and over it for an under closure.
  Crossing x;
  if (mode == Closure::Over) {
    const bool left_to_right = t.incoming(t.boundary_half_edge(2));
    x = left_to_right ? Crossing{e2, e1, e2m, f} : Crossing{e2m, f, e2, e1};
  } else {
    x = {e1, e2m, f, e2};
  }
  std::vector<Crossing> xs = t.crossings();
  xs.push_back(x);
  std::vector<int> nb{f};
  nb.insert(nb.end(), b.begin() + 2, b.end() - 1);
  return AnnularTangle::make(t.loop_number() - 1, std::move(xs), std::move(nb));
}

}  // namespace akh
