#include "akh/spectral.hpp"

#include <algorithm>

#include "akh/errors.hpp"

namespace akh {

std::size_t Page::total() const {
  std::size_t n = 0;
  for (const auto& [s, d] : dims) n += d;
  return n;
}

std::size_t SpectralSequence::e_infinity_total() const {
  std::size_t n = 0;
  for (const auto& [s, d] : e_infinity) n += d;
  return n;
}

namespace {

using Bg = std::pair<int, int>;

// Generators of one bigrading with their positions in the full complex.
struct Block {
  std::vector<std::size_t> gens;
  std::map<std::size_t, std::size_t> local;  // global index -> position in gens
};

std::map<Bg, Block> blocks_of(const AnnularComplex& c) {
  std::map<Bg, Block> out;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    auto& b = out[{c.generators[i].h, c.generators[i].q}];
    b.local[i] = b.gens.size();
    b.gens.push_back(i);
  }
  return out;
}

const Block kEmpty{};

const Block& block_at(const std::map<Bg, Block>& blocks, Bg bg) {
  auto it = blocks.find(bg);
  return it == blocks.end() ? kEmpty : it->second;
}

// Image of a vector (in `from` coordinates) under d, in `to` coordinates.
BitVector push(const SparseMatrixF2& d, const BitVector& v, const Block& from, const Block& to) {
  BitVector out(to.gens.size());
  for (auto k : v.ones()) {
    for (auto row : d.column(from.gens[k])) {
      auto it = to.local.find(row);
      if (it == to.local.end()) throw InvariantError("differential leaves its bigrading block");
      out.flip(it->second);
    }
  }
  return out;
}

class PageSolver {
 public:
  PageSolver(const AnnularComplex& c, const SparseMatrixF2& d) : c_(c), d_(d), blocks_(blocks_of(c)) {}

  const std::map<Bg, Block>& blocks() const { return blocks_; }

  int s_of(std::size_t g) const { return c_.generators[g].s; }

  // Basis of Z_r^s in block bg (r may be 0 or negative: then just K^s).
  std::vector<BitVector> cycles(Bg bg, int s, int r) const {
    const Block& b = block_at(blocks_, bg);
    const Block& t = block_at(blocks_, {bg.first + 1, bg.second});
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < b.gens.size(); ++k) {
      if (s_of(b.gens[k]) >= s) cols.push_back(k);
    }
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < t.gens.size(); ++k) {
      if (s_of(t.gens[k]) < s + r) rows.push_back(k);
    }
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t k = 0; k < rows.size(); ++k) row_pos[t.gens[rows[k]]] = k;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      for (auto row : d_.column(b.gens[cols[k]])) {
        if (auto it = row_pos.find(row); it != row_pos.end()) entries.emplace_back(it->second, k);
      }
    }
    auto m = SparseMatrixF2::from_entries(rows.size(), cols.size(), std::move(entries));
    std::vector<BitVector> out;
    for (const auto& kv : kernel_basis(m)) {
      BitVector v(b.gens.size());
      for (auto k : kv.ones()) v.set(cols[k]);
      out.push_back(std::move(v));
    }
    return out;
  }

  // dim E_r^s in block bg.
  std::size_t page_dim(Bg bg, int s, int r) const {
    const Block& b = block_at(blocks_, bg);
    if (b.gens.empty()) return 0;
    const auto z = cycles(bg, s, r);
    XorBasis denom(b.gens.size());
    for (auto& v : cycles(bg, s + 1, r - 1)) denom.insert(std::move(v));
    const Bg below{bg.first - 1, bg.second};
    const Block& src = block_at(blocks_, below);
    if (!src.gens.empty()) {
      for (const auto& v : cycles(below, s - r + 1, r - 1)) denom.insert(push(d_, v, src, b));
    }
    XorBasis num = denom;
    for (auto v : z) num.insert(std::move(v));
    return num.dimension() - denom.dimension();
  }

 private:
  const AnnularComplex& c_;
  const SparseMatrixF2& d_;
  std::map<Bg, Block> blocks_;
};

}  // namespace

Page e2_page(const AnnularComplex& c) {
  Page page;
  page.r = 2;
  const auto blocks = blocks_of(c);
  std::map<int, std::size_t> d2_rank;
  for (const auto& [bg, b] : blocks) {
    const Block& up = block_at(blocks, {bg.first + 1, bg.second});
    std::map<int, std::vector<std::size_t>> by_s;
    for (std::size_t k = 0; k < b.gens.size(); ++k) by_s[c.generators[b.gens[k]].s].push_back(k);
    for (const auto& [s, ks] : by_s) {
      // d0 restricted to C^s of this block, into C^{s+1} of the block above.
      std::vector<std::pair<std::size_t, std::size_t>> e;
      for (std::size_t col = 0; col < ks.size(); ++col) {
        for (auto row : c.d0.column(b.gens[ks[col]])) {
          auto it = up.local.find(row);
          if (it == up.local.end()) throw InvariantError("d0 leaves its bigrading block");
          e.emplace_back(it->second, col);
        }
      }
      auto m = SparseMatrixF2::from_entries(up.gens.size(), ks.size(), std::move(e));
      const auto ker = kernel_basis(m);
      // Boundaries landing in C^s: d0 of C^{s-1} in the block below.
      const Block& down = block_at(blocks, {bg.first - 1, bg.second});
      XorBasis boundaries(b.gens.size());
      for (std::size_t k = 0; k < down.gens.size(); ++k) {
        if (c.generators[down.gens[k]].s != s - 1) continue;
        BitVector v(down.gens.size());
        v.set(k);
        boundaries.insert(push(c.d0, v, down, b));
      }
      const std::size_t dim = ker.size() - boundaries.dimension();
      if (dim == 0) continue;
      page.dims[s] += dim;
      page.bigraded[{s, bg.first, bg.second}] += dim;

      // d2: classes of d_pm(ker) modulo d0(C^{s+1}) inside C^{s+2} above.
      XorBasis im(up.gens.size());
      for (std::size_t k = 0; k < b.gens.size(); ++k) {
        if (c.generators[b.gens[k]].s != s + 1) continue;
        BitVector v(b.gens.size());
        v.set(k);
        im.insert(push(c.d0, v, b, up));
      }
      XorBasis with = im;
      for (const auto& kv : ker) {
        BitVector v(b.gens.size());
        for (auto k : kv.ones()) v.set(ks[k]);
        with.insert(push(c.d_pm, v, b, up));
      }
      d2_rank[s] += with.dimension() - im.dimension();
    }
  }
  for (auto& [s, r] : d2_rank) {
    if (r != 0) page.d_ranks[s] = r;
  }
  return page;
}

SpectralSequence run_pages(const AnnularComplex& c, int r_max) {
  SpectralSequence ss;
  const SparseMatrixF2 d = c.d0 + c.d_pm;
  PageSolver solver(c, d);
  int smin = 0;
  int smax = 0;
  if (!c.generators.empty()) {
    auto [lo, hi] = std::minmax_element(c.generators.begin(), c.generators.end(),
                                        [](const AnnularGenerator& a, const AnnularGenerator& b) { return a.s < b.s; });
    smin = lo->s;
    smax = hi->s;
  }
  // d_r vanishes once r exceeds the span, so E_{span+1} is E_infinity.
  const int last = std::max(3, r_max > 0 ? std::min(r_max, smax - smin + 1) : smax - smin + 1);
  for (int r = 1; r <= last; ++r) {
    Page page;
    page.r = r;
    for (const auto& [bg, b] : solver.blocks()) {
      for (int s = smin; s <= smax; ++s) {
        const std::size_t dim = solver.page_dim(bg, s, r);
        if (dim == 0) continue;
        page.dims[s] += dim;
        page.bigraded[{s, bg.first, bg.second}] += dim;
      }
    }
    ss.pages.push_back(std::move(page));
  }
  // rank d_r at s from E_r^s = E_{r+1}^s + out_r(s) + out_r(s - r).
  for (std::size_t i = 0; i + 1 < ss.pages.size(); ++i) {
    Page& p = ss.pages[i];
    const Page& next = ss.pages[i + 1];
    const int r = p.r;
    std::map<int, long long> out;
    for (int s = smin; s <= smax; ++s) {
      auto get = [](const std::map<int, std::size_t>& m, int key) -> long long {
        auto it = m.find(key);
        return it == m.end() ? 0 : static_cast<long long>(it->second);
      };
      const long long incoming = out.count(s - r) != 0 ? out[s - r] : 0;
      const long long v = get(p.dims, s) - get(next.dims, s) - incoming;
      if (v < 0) throw InvariantError("negative d_" + std::to_string(r) + " rank at s = " + std::to_string(s));
      if (v > 0 && s + r > smax) throw InvariantError("d_" + std::to_string(r) + " has no target at s = " + std::to_string(s));
      out[s] = v;
      if (v > 0) {
        p.d_ranks[s] = static_cast<std::size_t>(v);
        if (r >= 3) ss.anomalies += static_cast<std::size_t>(v);
      }
    }
  }
  ss.e_infinity = ss.pages.back().dims;
  return ss;
}

nlohmann::json to_json(const SpectralSequence& ss, bool bigraded) {
  auto smap = [](const std::map<int, std::size_t>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [s, v] : m) j[std::to_string(s)] = v;
    return j;
  };
  nlohmann::json pages = nlohmann::json::array();
  for (const auto& p : ss.pages) {
    nlohmann::json jp = {{"r", p.r}, {"dims", smap(p.dims)}, {"d_ranks", smap(p.d_ranks)}};
    if (bigraded) {
      nlohmann::json b = nlohmann::json::array();
      for (const auto& [key, dim] : p.bigraded) {
        b.push_back({{"s", std::get<0>(key)}, {"h", std::get<1>(key)}, {"q", std::get<2>(key)}, {"dim", dim}});
      }
      jp["bigraded"] = b;
    }
    pages.push_back(std::move(jp));
  }
  return {{"pages", pages}, {"e_infinity", smap(ss.e_infinity)}, {"anomalies", ss.anomalies}};
}

}  // namespace akh
