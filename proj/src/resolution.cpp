#include "akh/resolution.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "akh/errors.hpp"

namespace akh {

std::string bit_string(State bits, std::size_t c) {
  std::string s(c, '0');
  for (std::size_t k = 0; k < c; ++k) {
    if (state_bit(bits, c, k)) s[k] = '1';
  }
  return s;
}

int resolution_degree(State bits) { return std::popcount(bits); }

char to_char(ArcType t) { return t == ArcType::E ? 'e' : t == ArcType::U ? 'u' : 'c'; }
char to_char(Side s) { return s == Side::L ? 'L' : s == Side::R ? 'R' : 'U'; }

std::size_t PlanarState::disk_circle_count() const {
  return static_cast<std::size_t>(std::count_if(circles.begin(), circles.end(), [](const Circle& c) { return !c.annular; }));
}

std::size_t PlanarState::annular_circle_count() const { return circles.size() - disk_circle_count(); }

int PlanarState::circle_index(int key) const {
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (circles[i].key == key) return static_cast<int>(i);
  }
  return -1;
}

std::string PlanarState::circle_name(int key) const {
  return bit_string(bits, crossings) + ":c" + std::to_string(key);
}

namespace {

// Slot reached through the smoothing at a crossing. The 0-smoothing joins
// slots {0,1} and {2,3} (the overpass turns left); the 1-smoothing joins
// {1,2} and {3,0}.
int smooth(int slot, bool one) {
  if (!one) return slot ^ 1;
  static constexpr int kOne[4] = {3, 2, 1, 0};
  return kOne[slot];
}

int corner_of(int slot_in, int slot_out) {
  // Corner 0 is the one containing slot 0, corner 1 the one containing slot 2.
  return (slot_in == 0 || slot_out == 0) ? 0 : 1;
}

}  // namespace

PlanarState resolve(const AnnularTangle& t, State bits) {
  const std::size_t c = t.crossing_count();
  if (c < 64 && (bits >> c) != 0) throw InputError("state has more bits than the tangle has crossings");
  PlanarState p;
  p.bits = bits;
  p.crossings = c;
  p.corners.resize(c);
  const int m = t.m();
  p.matching.assign(static_cast<std::size_t>(2 * m), 0);
  std::set<int> used;

  // Walks from the vertex owning `start`, leaving through it. Returns when a
  // stop condition in `on_boundary` says so. Records corners and arcs.
  auto walk = [&](std::size_t start, int component, bool oriented) {
    std::size_t cur = start;
    DiskArc arc;
    arc.component = component;
    arc.from_point = t.is_boundary(start) ? t.boundary_point(start) : 0;
    std::vector<int> edges;
    int seam = 0;
    bool has_arc_start = t.is_boundary(start);
    std::vector<std::pair<std::size_t, int>> pending;  // crossing, corner awaiting arc index
    for (;;) {
      const int lab = t.label(cur);
      used.insert(lab);
      edges.push_back(lab);
      arc.edges.push_back(lab);
      if (component == kStrand) p.strand_edges.push_back(lab);
      const std::size_t next = t.mate(cur);
      if (!t.is_boundary(next)) {
        const std::size_t k = next / 4;
        const int s_in = static_cast<int>(next % 4);
        const int s_out = smooth(s_in, state_bit(bits, c, k));
        Corner corner;
        corner.component = component;
        if (oriented) {
          corner.side = s_out == (s_in + 1) % 4 ? Side::L : Side::R;
          corner.position = static_cast<int>(p.strand_edges.size()) - 1;
        }
        const int which = corner_of(s_in, s_out);
        p.corners[k][static_cast<std::size_t>(which)] = corner;
        pending.emplace_back(k, which);
        cur = t.crossing_half_edge(k, s_out);
        if (cur == start) break;
        continue;
      }
      const int point = t.boundary_point(next);
      arc.to_point = point;
      auto close_arc = [&]() {
        const int idx = has_arc_start ? static_cast<int>(p.arcs.size()) : -1;
        for (auto [k, which] : pending) p.corners[k][static_cast<std::size_t>(which)].arc = idx;
        pending.clear();
        if (has_arc_start) {
          p.matching[static_cast<std::size_t>(arc.from_point - 1)] = arc.to_point;
          p.matching[static_cast<std::size_t>(arc.to_point - 1)] = arc.from_point;
          p.arcs.push_back(arc);
        }
      };
      close_arc();
      if (point == 1) break;
      const int partner = t.glued_partner(point);
      if (partner == 0) throw InvariantError("a component ends at the inner endpoint");
      seam += point <= m ? 1 : -1;
      if (component == kStrand) p.cut_crossings.push_back(point <= m ? 1 : -1);
      cur = t.boundary_half_edge(partner);
      arc = DiskArc{};
      arc.component = component;
      arc.from_point = partner;
      has_arc_start = true;
      if (cur == start) break;
    }
    // Corners on a disk circle never see a boundary point.
    for (auto [k, which] : pending) p.corners[k][static_cast<std::size_t>(which)].arc = -1;
    return std::make_pair(edges, seam);
  };

  auto [strand, w] = walk(t.boundary_half_edge(m + 1), kStrand, true);
  p.winding = w;
  const std::size_t strand_arcs = p.arcs.size();
  for (std::size_t a = 0; a < strand_arcs; ++a) {
    const std::size_t from_end = strand_arcs - 1 - a;
    p.arcs[a].type = from_end % 2 == 0 ? ArcType::E : ArcType::U;
  }

  // Remaining edges lie on circles. Start each circle at a boundary point if
  // it has one so that its disk arcs come out whole.
  std::map<int, std::size_t> first_half_edge;
  for (std::size_t h = 0; h < t.half_edge_count(); ++h) first_half_edge.emplace(t.label(h), h);
  std::map<int, std::size_t> boundary_start;
  for (int point = 2; point <= 2 * m; ++point) {
    if (point == m + 1) continue;
    boundary_start.emplace(t.label(t.boundary_half_edge(point)), t.boundary_half_edge(point));
  }
  std::vector<std::pair<int, std::vector<int>>> found;
  for (const auto& [lab, h] : first_half_edge) {
    if (used.count(lab) != 0) continue;
    // Find the circle's edges first with a throwaway walk over the labels.
    std::vector<int> members;
    {
      std::size_t cur = h;
      std::optional<std::size_t> bstart;
      do {
        members.push_back(t.label(cur));
        if (t.is_boundary(cur) && !bstart) bstart = cur;
        const std::size_t next = t.mate(cur);
        if (t.is_boundary(next)) {
          if (!bstart) bstart = next;
          cur = t.boundary_half_edge(t.glued_partner(t.boundary_point(next)));
        } else {
          const std::size_t k = next / 4;
          cur = t.crossing_half_edge(k, smooth(static_cast<int>(next % 4), state_bit(bits, c, k)));
        }
      } while (cur != h);
      const int key = *std::min_element(members.begin(), members.end());
      auto [edges, seam] = walk(bstart ? *bstart : h, key, false);
      if (seam != 0) throw InvariantError("a circle winds around the annulus");
      Circle circle;
      circle.key = key;
      circle.annular = bstart.has_value();
      circle.edges = edges;
      std::sort(circle.edges.begin(), circle.edges.end());
      p.circles.push_back(std::move(circle));
    }
  }
  std::sort(p.circles.begin(), p.circles.end(), [](const Circle& a, const Circle& b) { return a.key < b.key; });
  for (std::size_t a = strand_arcs; a < p.arcs.size(); ++a) p.arcs[a].type = ArcType::C;
  if (used.size() != t.half_edge_count() / 2) throw InvariantError("resolution left edges untraced");
  return p;
}

TangleType tangle_type(const PlanarState& p) { return {p.matching, p.winding}; }

std::string to_string(const TangleType& type) {
  std::ostringstream os;
  os << "P" << type.winding << "[";
  bool first = true;
  for (std::size_t i = 0; i < type.matching.size(); ++i) {
    const int a = static_cast<int>(i) + 1;
    if (type.matching[i] < a) continue;
    if (!first) os << ' ';
    first = false;
    os << a << '-' << type.matching[i];
  }
  os << ']';
  return os.str();
}

std::vector<std::vector<int>> crossingless_matchings(int m) {
  // Points lo..hi (inclusive, even count) matched without crossings.
  std::vector<std::vector<std::pair<int, int>>> out;
  std::function<void(int, int, std::vector<std::pair<int, int>>&, const std::function<void()>&)> rec =
      [&](int lo, int hi, std::vector<std::pair<int, int>>& acc, const std::function<void()>& done) {
        if (lo > hi) {
          done();
          return;
        }
        for (int j = lo + 1; j <= hi; j += 2) {
          acc.emplace_back(lo, j);
          rec(lo + 1, j - 1, acc, [&, j]() { rec(j + 1, hi, acc, done); });
          acc.pop_back();
        }
      };
  std::vector<std::pair<int, int>> acc;
  rec(1, 2 * m, acc, [&]() { out.push_back(acc); });
  std::vector<std::vector<int>> result;
  for (const auto& pairs : out) {
    std::vector<int> partner(static_cast<std::size_t>(2 * m), 0);
    for (auto [a, b] : pairs) {
      partner[static_cast<std::size_t>(a - 1)] = b;
      partner[static_cast<std::size_t>(b - 1)] = a;
    }
    result.push_back(std::move(partner));
  }
  std::sort(result.begin(), result.end());
  return result;
}

int matching_winding(const std::vector<int>& partner) {
  const int m = static_cast<int>(partner.size()) / 2;
  int point = m + 1;
  int w = 0;
  for (std::size_t guard = 0; guard <= partner.size(); ++guard) {
    const int end = partner[static_cast<std::size_t>(point - 1)];
    if (end == 1) return w;
    if (end == m + 1) break;
    w += end <= m ? 1 : -1;
    point = 2 * m + 2 - end;
  }
  throw InvariantError("matching does not trace a strand from the inner to the outer endpoint");
}

SaddleData saddle(const PlanarState& from, const PlanarState& to, std::size_t k) {
  SaddleData s;
  s.from_bits = from.bits;
  s.to_bits = to.bits;
  s.crossing = k;
  s.source_corners = from.corners[k];
  s.target_corners = to.corners[k];
  s.dw = to.winding - from.winding;
  s.dc = static_cast<int>(to.circles.size()) - static_cast<int>(from.circles.size());
  s.dca = static_cast<int>(to.annular_circle_count()) - static_cast<int>(from.annular_circle_count());

  std::set<std::vector<int>> src_circles;
  std::set<std::vector<int>> dst_circles;
  for (const auto& ci : from.circles) src_circles.insert(ci.edges);
  for (const auto& ci : to.circles) dst_circles.insert(ci.edges);
  for (const auto& ci : from.circles) {
    if (dst_circles.count(ci.edges) == 0) s.consumed.push_back(ci.key);
  }
  for (const auto& ci : to.circles) {
    if (src_circles.count(ci.edges) == 0) s.produced.push_back(ci.key);
  }
  std::vector<int> a = from.strand_edges;
  std::vector<int> b = to.strand_edges;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  s.touches_strand = a != b;

  if (s.dw != 0) {
    if (s.dw != 2 && s.dw != -2) throw InvariantError("saddle changes winding by " + std::to_string(s.dw));
    if (!s.consumed.empty() || !s.produced.empty()) {
      throw InvariantError("winding-changing saddle also changes circles");
    }
    s.geometry = s.dw > 0 ? Geometry::WindingUp : Geometry::WindingDown;
    s.kind = SaddleKind::Rewind;
    return s;
  }
  s.geometry = Geometry::CircleChange;
  if (s.dc == 1) {
    s.kind = SaddleKind::Split;
  } else if (s.dc == -1) {
    s.kind = SaddleKind::Merge;
  } else {
    throw InvariantError("winding-preserving saddle changes circle count by " + std::to_string(s.dc));
  }
  const std::size_t expect_consumed = s.kind == SaddleKind::Split ? (s.touches_strand ? 0 : 1) : (s.touches_strand ? 1 : 2);
  const std::size_t expect_produced = s.kind == SaddleKind::Split ? (s.touches_strand ? 1 : 2) : (s.touches_strand ? 0 : 1);
  if (s.consumed.size() != expect_consumed || s.produced.size() != expect_produced) {
    throw InvariantError("saddle participants do not match a split or merge");
  }
  if (s.touches_strand) {
    const auto& corners = s.kind == SaddleKind::Split ? s.target_corners : s.source_corners;
    const Corner& strand_corner = corners[0].component == kStrand ? corners[0] : corners[1];
    if (strand_corner.component != kStrand) throw InvariantError("strand saddle without a strand corner");
    s.side = strand_corner.side;
  }
  return s;
}

SaddleData saddle(const AnnularTangle& t, State bits, std::size_t k) {
  const std::size_t c = t.crossing_count();
  if (k >= c) throw InputError("crossing index out of range");
  if (state_bit(bits, c, k)) throw InputError("bit " + std::to_string(k) + " is already 1");
  return saddle(resolve(t, bits), resolve(t, with_bit(bits, c, k)), k);
}

Cube enumerate_cube(const AnnularTangle& t, std::size_t limit) {
  const std::size_t c = t.crossing_count();
  if (c > limit) {
    throw InputError("tangle has " + std::to_string(c) + " crossings, above the limit of " + std::to_string(limit));
  }
  Cube cube;
  const State n = State{1} << c;
  cube.states.reserve(n);
  for (State bits = 0; bits < n; ++bits) cube.states.push_back(resolve(t, bits));
  for (State bits = 0; bits < n; ++bits) {
    for (std::size_t k = 0; k < c; ++k) {
      if (state_bit(bits, c, k)) continue;
      cube.saddles.push_back(saddle(cube.states[bits], cube.states[with_bit(bits, c, k)], k));
    }
  }
  return cube;
}

}  // namespace akh
