#pragma once

// Annular 1-tangle diagrams, encoded as a disk m-tangle whose boundary points
// 2..m are glued to points 2m..m+2, plus their closures and the loop flip.
//
// Geometry: boundary points 1..2m run counterclockwise, point 1 at the top
// (outer endpoint), point m+1 at the bottom (inner endpoint). Points 2..m lie
// on the left edge of the disk and m+2..2m on the right edge; gluing the two
// edges recovers the annulus, so point i is identified with 2m+2-i.
//
// Crossings are 4-tuples of edge labels counterclockwise from the incoming
// under-strand: slot 0 (incoming under), 1, 2 (outgoing under), 3.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace akh {

enum class Closure { Over, Under };

std::string to_string(Closure mode);
/// Accepts "over" / "under".
Closure parse_closure(const std::string& s);

using Crossing = std::array<int, 4>;

class AnnularTangle {
 public:
  /// Validates and normalizes. Tuples whose under-strand is traced 2 -> 0 are
  /// rotated by two slots so that slot 0 is incoming.
  static AnnularTangle make(int loop_number, std::vector<Crossing> crossings, std::vector<int> boundary);

  int loop_number() const { return loop_number_; }
  int m() const { return loop_number_ + 1; }
  std::size_t crossing_count() const { return crossings_.size(); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<int>& boundary() const { return boundary_; }
  int max_label() const { return max_label_; }

  // Half-edge view: crossing k slot s is 4k+s, boundary point i (1-based) is
  // 4c+i-1.
  std::size_t half_edge_count() const { return label_.size(); }
  std::size_t crossing_half_edge(std::size_t k, int slot) const { return 4 * k + static_cast<std::size_t>(slot); }
  std::size_t boundary_half_edge(int point) const { return 4 * crossings_.size() + static_cast<std::size_t>(point - 1); }
  bool is_boundary(std::size_t h) const { return h >= 4 * crossings_.size(); }
  /// 1-based boundary point of a boundary half-edge.
  int boundary_point(std::size_t h) const { return static_cast<int>(h - 4 * crossings_.size()) + 1; }
  int label(std::size_t h) const { return label_[h]; }
  /// The other half-edge carrying the same edge label.
  std::size_t mate(std::size_t h) const { return mate_[h]; }
  /// True when the oriented strand enters the vertex (crossing or boundary
  /// point) through this half-edge.
  bool incoming(std::size_t h) const { return incoming_[h] != 0; }
  /// Glued partner of a boundary point, or 0 for the two endpoints.
  int glued_partner(int point) const;

  /// Edge labels in strand order, inner endpoint to outer endpoint.
  const std::vector<int>& strand() const { return strand_; }

 private:
  void index();
  void orient();

  int loop_number_ = 0;
  std::vector<Crossing> crossings_;
  std::vector<int> boundary_;
  int max_label_ = 0;
  std::vector<int> label_;
  std::vector<std::size_t> mate_;
  std::vector<char> incoming_;
  std::vector<int> strand_;
};

AnnularTangle parse_tangle(const std::string& text);
AnnularTangle tangle_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AnnularTangle& t);

/// +1 / -1 per crossing in file order. Positive means the over-strand passes
/// from slot 3 to slot 1 (right-handed crossing).
std::vector<int> crossing_signs(const AnnularTangle& t);

/// Swaps over and under at every crossing.
AnnularTangle mirror(const AnnularTangle& t);

struct ClosedDiagram {
  std::vector<Crossing> crossings;  // slot 0 incoming under
  int basepoint_edge = 0;
  int free_loops = 0;               // crossingless components
  std::vector<int> signs;
  int n_plus = 0;
  int n_minus = 0;
  int components = 0;
};

/// Builds a closed link diagram from PD tuples (slot 0 incoming under) and
/// computes orientations and signs by tracing every component.
ClosedDiagram make_closed(std::vector<Crossing> crossings, int basepoint_edge, int free_loops = 0);

/// Joins the outer endpoint to the inner one with the arc a running along the
/// cut from the top, over (T+) or under (T-) every glued pair it meets. The
/// tangle's crossings keep their indices; closure crossings follow.
ClosedDiagram close(const AnnularTangle& t, Closure mode);

/// Moves the outermost loop across the outer endpoint, trading one crossing
/// with the closure arc for a tangle crossing. The new crossing goes last.
/// The link of close(result, mode) is isotopic to that of close(t, mode).
AnnularTangle flip_outer_loop(const AnnularTangle& t, Closure mode);

}  // namespace akh
