#include "akh/annular_complex.hpp"

#include <algorithm>
#include <sstream>

#include "akh/errors.hpp"

namespace akh {

int GradingShift::hA(int n) const {
  const int v = mode == Closure::Over ? loops + n : loops - n;
  if (v % 2 != 0) throw InvariantError("winding sector has the wrong parity");
  return v / 2;
}

int GradingShift::qA(int n) const {
  const int v = mode == Closure::Over ? loops + 3 * n : loops - 3 * n;
  if (v % 2 != 0) throw InvariantError("winding sector has the wrong parity");
  return v / 2;
}

GradingShift grading_shift(const AnnularTangle& t, Closure mode) {
  const ClosedDiagram d = close(t, mode);
  GradingShift g;
  g.mode = mode;
  g.loops = t.loop_number();
  g.hT = -d.n_minus;
  g.qT = d.n_plus - 2 * d.n_minus;
  return g;
}

std::size_t AnnularComplex::index_of(State bits, const Labeling& labels) const {
  const PlanarState& p = cube.states[bits];
  if (labels.size() != p.circles.size()) throw InvariantError("labeling does not match the circles of its state");
  std::size_t mask = 0;
  for (std::size_t i = 0; i < p.circles.size(); ++i) {
    auto it = labels.find(p.circles[i].key);
    if (it == labels.end()) throw InvariantError("labeling misses circle " + p.circle_name(p.circles[i].key));
    if (it->second == Label::X) mask |= std::size_t{1} << i;
  }
  return state_offset[bits] + mask;
}

BigradedSpace AnnularComplex::space() const {
  std::vector<Generator> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back({g.id, g.h, g.q});
  return BigradedSpace(std::move(gens));
}

BigradedComplex AnnularComplex::complex() const { return BigradedComplex(space(), d0 + d_pm); }

std::string bidegree_violation(const SparseMatrixF2& m, const std::vector<AnnularGenerator>& gens, int dh, int dq) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (auto i : m.column(j)) {
      if (gens[i].h - gens[j].h != dh || gens[i].q - gens[j].q != dq) return gens[j].id + " -> " + gens[i].id;
    }
  }
  return {};
}

namespace {

std::string labels_string(const PlanarState& p, const Labeling& l) {
  std::string s;
  for (const auto& c : p.circles) s += label_char(l.at(c.key));
  return s;
}

// Lists two-step paths j -> k -> i through `a` then `b` for a forensic dump.
std::string paths(const SparseMatrixF2& first, const SparseMatrixF2& second, std::size_t j, std::size_t i,
                  const std::vector<AnnularGenerator>& gens) {
  std::ostringstream os;
  for (auto k : first.column(j)) {
    if (second.get(i, k)) os << " " << gens[j].id << " -> " << gens[k].id << " -> " << gens[i].id << ";";
  }
  return os.str();
}

}  // namespace

AnnularComplex build_annular_complex(const AnnularTangle& t, Closure mode, std::size_t limit) {
  AnnularComplex ac;
  ac.mode = mode;
  ac.shift = grading_shift(t, mode);
  ac.cube = enumerate_cube(t, limit);
  const std::size_t c = t.crossing_count();

  for (const auto& p : ac.cube.states) {
    ac.state_offset.push_back(ac.generators.size());
    const std::size_t r = p.circles.size();
    if (r >= 8 * sizeof(std::size_t) - 1) throw InputError("too many circles in one resolution");
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
      AnnularGenerator g;
      g.bits = p.bits;
      for (std::size_t i = 0; i < r; ++i) {
        g.labels[p.circles[i].key] = ((mask >> i) & 1U) != 0 ? Label::X : Label::One;
      }
      g.n = p.winding;
      g.s = resolution_degree(p.bits);
      g.h = g.s + ac.shift.hT + ac.shift.hA(g.n);
      g.q = g.s + labeling_qsum(g.labels) + ac.shift.qT + ac.shift.qA(g.n);
      g.id = bit_string(p.bits, c) + "|" + labels_string(p, g.labels);
      ac.generators.push_back(std::move(g));
    }
  }

  using Entries = std::vector<std::pair<std::size_t, std::size_t>>;
  Entries d0, dl, dr, qm, pm;
  for (const auto& sd : ac.cube.saddles) {
    const std::size_t first = ac.state_offset[sd.from_bits];
    const std::size_t count = std::size_t{1} << ac.cube.states[sd.from_bits].circles.size();
    for (std::size_t j = first; j < first + count; ++j) {
      const Labeling& l = ac.generators[j].labels;
      auto emit = [&](Entries& out, MapKind kind, const std::vector<int>& src, const std::vector<int>& dst) {
        for (const auto& img : apply(kind, l, src, dst)) out.emplace_back(ac.index_of(sd.to_bits, img), j);
      };
      if (sd.kind == SaddleKind::Rewind) {
        (sd.geometry == Geometry::WindingDown ? qm : pm).emplace_back(ac.index_of(sd.to_bits, l), j);
        continue;
      }
      Entries& side = sd.side == Side::L ? dl : dr;
      if (sd.touches_strand && sd.kind == SaddleKind::Split) {
        emit(d0, MapKind::EtaDot, {}, sd.produced);
        emit(side, MapKind::Eta, {}, sd.produced);
      } else if (sd.touches_strand) {
        emit(d0, MapKind::EpsilonDot, sd.consumed, {});
        emit(side, MapKind::Epsilon, sd.consumed, {});
      } else if (sd.kind == SaddleKind::Split) {
        emit(d0, MapKind::Delta, sd.consumed, sd.produced);
      } else {
        emit(d0, MapKind::Mult, sd.consumed, sd.produced);
      }
    }
  }
  const std::size_t n = ac.generators.size();
  ac.d0 = SparseMatrixF2::from_entries(n, n, std::move(d0));
  ac.dtilde_l = SparseMatrixF2::from_entries(n, n, std::move(dl));
  ac.dtilde_r = SparseMatrixF2::from_entries(n, n, std::move(dr));
  ac.q_map = SparseMatrixF2::from_entries(n, n, std::move(qm));
  ac.p_map = SparseMatrixF2::from_entries(n, n, std::move(pm));
  const SparseMatrixF2& winding = mode == Closure::Over ? ac.q_map : ac.p_map;
  ac.d_pm = ac.dtilde_l * winding + winding * ac.dtilde_l;

  const SparseMatrixF2 d = ac.d0 + ac.d_pm;
  if (auto bad = bidegree_violation(d, ac.generators, 1, 0); !bad.empty()) {
    throw InvariantError("construction inconsistency: differential entry " + bad + " does not have bidegree (1,0)");
  }
  const SparseMatrixF2 dd = d * d;
  if (!dd.is_zero()) {
    const auto [i, j] = dd.entries().front();
    throw InvariantError("construction inconsistency: d^2 maps " + ac.generators[j].id + " to " +
                         ac.generators[i].id + " via" + paths(d, d, j, i, ac.generators));
  }
  return ac;
}

BigradedSpace build_space(const AnnularTangle& t, Closure mode) { return build_annular_complex(t, mode).space(); }
SparseMatrixF2 build_d0(const AnnularTangle& t, Closure mode) { return build_annular_complex(t, mode).d0; }
SparseMatrixF2 build_dtilde(const AnnularTangle& t, Closure mode, Side side) {
  auto ac = build_annular_complex(t, mode);
  if (side == Side::U) throw InputError("dtilde needs side L or R");
  return side == Side::L ? ac.dtilde_l : ac.dtilde_r;
}
SparseMatrixF2 build_Q(const AnnularTangle& t, Closure mode) { return build_annular_complex(t, mode).q_map; }
SparseMatrixF2 build_P(const AnnularTangle& t, Closure mode) { return build_annular_complex(t, mode).p_map; }
BigradedComplex build_differential(const AnnularTangle& t, Closure mode) {
  return build_annular_complex(t, mode).complex();
}

std::map<TypePair, SparseMatrixF2> block_by_type(const SparseMatrixF2& m, const AnnularComplex& c) {
  std::map<TypePair, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  for (const auto& [i, j] : m.entries()) {
    const auto& src = c.cube.states[c.generators[j].bits];
    const auto& dst = c.cube.states[c.generators[i].bits];
    entries[{tangle_type(src), tangle_type(dst)}].emplace_back(i, j);
  }
  std::map<TypePair, SparseMatrixF2> blocks;
  for (auto& [key, e] : entries) blocks.emplace(key, SparseMatrixF2::from_entries(m.rows(), m.cols(), std::move(e)));
  return blocks;
}

nlohmann::json complex_to_json(const AnnularComplex& c) {
  const std::size_t crossings = c.cube.states.empty() ? 0 : c.cube.states.front().crossings;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : c.generators) {
    const auto& p = c.cube.states[g.bits];
    gens.push_back({{"id", g.id},
                    {"bits", bit_string(g.bits, crossings)},
                    {"labels", labels_string(p, g.labels)},
                    {"h", g.h},
                    {"q", g.q},
                    {"n", g.n},
                    {"s", g.s}});
  }
  nlohmann::json diff = nlohmann::json::array();
  for (const auto& [i, j] : (c.d0 + c.d_pm).entries()) diff.push_back({i, j});
  return {{"closure", to_string(c.mode)}, {"generators", gens}, {"differential", diff}};
}

}  // namespace akh
