#pragma once

// Planar resolutions of an annular tangle: components, winding number, disk
// arcs and their e/u/c types, tangle types, and saddles between neighbouring
// resolutions.
//
// A state is an integer whose binary expansion, read most significant bit
// first, is the string b_0 ... b_{c-1}; crossing k is resolved by b_k. So
// ascending integers list the states in ascending string order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "akh/tangle.hpp"

namespace akh {

using State = std::uint64_t;

inline bool state_bit(State bits, std::size_t c, std::size_t k) { return ((bits >> (c - 1 - k)) & 1U) != 0; }
inline State with_bit(State bits, std::size_t c, std::size_t k) { return bits | (State{1} << (c - 1 - k)); }
std::string bit_string(State bits, std::size_t c);
int resolution_degree(State bits);

enum class ArcType { E, U, C };
enum class Side { L, R, U };
char to_char(ArcType t);
char to_char(Side s);

/// Component id of the strand; circles use their minimum edge label.
constexpr int kStrand = -1;

struct DiskArc {
  int from_point = 0;  // 1-based boundary points; strand arcs run with the strand
  int to_point = 0;
  ArcType type = ArcType::C;
  int component = kStrand;
  std::vector<int> edges;
};

struct Circle {
  int key = 0;           // minimum edge label
  bool annular = false;  // passes through glued boundary points
  std::vector<int> edges;  // sorted
};

/// How the resolved diagram passes one corner of a smoothed crossing.
struct Corner {
  int component = kStrand;
  int arc = -1;        // index into PlanarState::arcs, -1 on a disk circle
  Side side = Side::U;  // side of the oriented strand facing the crossing centre
  int position = -1;   // step index along the strand, -1 for circles
};

struct PlanarState {
  State bits = 0;
  std::size_t crossings = 0;
  int winding = 0;
  std::vector<int> strand_edges;   // inner to outer
  std::vector<int> cut_crossings;  // +1 / -1 per seam traversal of the strand
  std::vector<Circle> circles;     // sorted by key
  std::vector<DiskArc> arcs;       // strand arcs in strand order, then circle arcs
  std::vector<int> matching;       // matching[p-1] = boundary point joined to p
  /// corners[k][0] is the corner through slot 0, corners[k][1] through slot 2.
  std::vector<std::array<Corner, 2>> corners;

  std::size_t circle_count() const { return circles.size(); }
  std::size_t disk_circle_count() const;
  std::size_t annular_circle_count() const;
  /// Index into `circles`, or -1.
  int circle_index(int key) const;
  std::string circle_name(int key) const;
};

PlanarState resolve(const AnnularTangle& t, State bits);

struct TangleType {
  std::vector<int> matching;
  int winding = 0;
  friend auto operator<=>(const TangleType&, const TangleType&) = default;
};

TangleType tangle_type(const PlanarState& p);
std::string to_string(const TangleType& type);

/// All crossingless perfect matchings of 2m points on a circle, each as
/// partner[p-1] for 1-based p, in lexicographic order.
std::vector<std::vector<int>> crossingless_matchings(int m);

/// Winding number of the strand of a crossingless matching seen as a planar
/// tangle type (strand from point m+1 to point 1 through the gluing).
int matching_winding(const std::vector<int>& partner);

enum class Geometry { WindingDown, WindingUp, CircleChange };
enum class SaddleKind { Merge, Split, Rewind };

struct SaddleData {
  State from_bits = 0;
  State to_bits = 0;
  std::size_t crossing = 0;
  Geometry geometry = Geometry::CircleChange;
  SaddleKind kind = SaddleKind::Rewind;
  bool touches_strand = false;
  std::vector<int> consumed;  // circle keys in the source
  std::vector<int> produced;  // circle keys in the target
  /// For a circle split from or merged into the strand: the side of the
  /// strand the circle attaches to, read where the two are separate (target
  /// for a split, source for a merge). U otherwise.
  Side side = Side::U;
  std::array<Corner, 2> source_corners;
  std::array<Corner, 2> target_corners;
  int dw = 0;
  int dc = 0;
  int dca = 0;
};

SaddleData saddle(const AnnularTangle& t, State bits, std::size_t k);
SaddleData saddle(const PlanarState& from, const PlanarState& to, std::size_t k);

struct Cube {
  std::vector<PlanarState> states;  // index = bits
  std::vector<SaddleData> saddles;  // by source state, then crossing
};

constexpr std::size_t kDefaultCrossingLimit = 20;

Cube enumerate_cube(const AnnularTangle& t, std::size_t limit = kDefaultCrossingLimit);

}  // namespace akh
