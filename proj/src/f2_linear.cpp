#include "akh/f2_linear.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "akh/errors.hpp"

namespace akh {

// ---------------------------------------------------------------------------
// BitVector / XorBasis

BitVector& BitVector::operator^=(const BitVector& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return size_;
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto word = words_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

bool XorBasis::reduce(BitVector& v) const {
  for (;;) {
    const std::size_t low = v.lowest();
    if (low == v.size()) return true;
    auto it = pivots_.find(low);
    if (it == pivots_.end()) return false;
    v ^= it->second;
  }
}

bool XorBasis::insert(BitVector v) {
  if (reduce(v)) return false;
  const std::size_t low = v.lowest();
  pivots_.emplace(low, std::move(v));
  return true;
}

// ---------------------------------------------------------------------------
// SparseMatrixF2

SparseMatrixF2 SparseMatrixF2::from_entries(
    std::size_t rows, std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>> entries) {
  SparseMatrixF2 m(rows, cols);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t run = k;
    while (run < entries.size() && entries[run] == entries[k]) ++run;
    const auto [r, c] = entries[k];
    if (r >= rows || c >= cols) throw InvariantError("matrix entry out of range");
    if ((run - k) % 2 == 1) m.columns_[c].push_back(static_cast<std::uint32_t>(r));
    k = run;
  }
  return m;
}

SparseMatrixF2 SparseMatrixF2::identity(std::size_t n) {
  SparseMatrixF2 m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back(static_cast<std::uint32_t>(i));
  return m;
}

bool SparseMatrixF2::get(std::size_t r, std::size_t c) const {
  const auto& col = columns_[c];
  return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(r));
}

void SparseMatrixF2::toggle(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= columns_.size()) throw InvariantError("matrix entry out of range");
  auto& col = columns_[c];
  const auto key = static_cast<std::uint32_t>(r);
  auto it = std::lower_bound(col.begin(), col.end(), key);
  if (it != col.end() && *it == key) {
    col.erase(it);
  } else {
    col.insert(it, key);
  }
}

void SparseMatrixF2::add_column(std::size_t dst, const std::vector<std::uint32_t>& src) {
  auto& col = columns_[dst];
  std::vector<std::uint32_t> merged;
  merged.reserve(col.size() + src.size());
  std::set_symmetric_difference(col.begin(), col.end(), src.begin(), src.end(),
                                std::back_inserter(merged));
  col = std::move(merged);
}

std::size_t SparseMatrixF2::nnz() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> SparseMatrixF2::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (auto r : columns_[c]) out.emplace_back(r, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseMatrixF2 SparseMatrixF2::transpose() const {
  SparseMatrixF2 t(cols(), rows_);
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    for (auto r : columns_[c]) t.columns_[r].push_back(static_cast<std::uint32_t>(c));
  }
  return t;
}

BitVector SparseMatrixF2::column_bits(std::size_t c) const {
  BitVector v(rows_);
  for (auto r : columns_[c]) v.set(r);
  return v;
}

BitVector SparseMatrixF2::apply(const BitVector& v) const {
  if (v.size() != cols()) throw InvariantError("dimension mismatch in matrix-vector product");
  BitVector out(rows_);
  for (auto c : v.ones()) {
    for (auto r : columns_[c]) out.flip(r);
  }
  return out;
}

SparseMatrixF2 operator*(const SparseMatrixF2& a, const SparseMatrixF2& b) {
  if (a.cols() != b.rows()) throw InvariantError("dimension mismatch in matrix product");
  SparseMatrixF2 out(a.rows(), b.cols());
  std::vector<std::uint8_t> acc(a.rows(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    touched.clear();
    for (auto k : b.column(c)) {
      for (auto r : a.column(k)) {
        if (acc[r] == 0) touched.push_back(r);
        acc[r] ^= 1;
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& col = out.columns_[c];
    for (auto r : touched) {
      if (acc[r] != 0) col.push_back(r);
      acc[r] = 0;
    }
  }
  return out;
}

SparseMatrixF2 operator+(const SparseMatrixF2& a, const SparseMatrixF2& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvariantError("dimension mismatch in matrix sum");
  }
  SparseMatrixF2 out = a;
  for (std::size_t c = 0; c < b.cols(); ++c) out.add_column(c, b.column(c));
  return out;
}

std::size_t rank(const SparseMatrixF2& m) {
  XorBasis basis(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!m.column(c).empty()) basis.insert(m.column_bits(c));
  }
  return basis.dimension();
}

std::size_t rank(const SparseMatrixF2& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  if (rows.empty() || cols.empty()) return 0;
  std::vector<std::int64_t> row_pos(m.rows(), -1);
  for (std::size_t k = 0; k < rows.size(); ++k) row_pos[rows[k]] = static_cast<std::int64_t>(k);
  XorBasis basis(rows.size());
  for (auto c : cols) {
    BitVector v(rows.size());
    bool any = false;
    for (auto r : m.column(c)) {
      if (row_pos[r] >= 0) {
        v.set(static_cast<std::size_t>(row_pos[r]));
        any = true;
      }
    }
    if (any) basis.insert(std::move(v));
    if (basis.dimension() == rows.size()) break;
  }
  return basis.dimension();
}

std::vector<BitVector> kernel_basis(const SparseMatrixF2& m) {
  // Column elimination that tracks which original columns were combined.
  struct Pivot {
    BitVector image;
    BitVector combo;
  };
  std::map<std::size_t, Pivot> pivots;
  std::vector<BitVector> kernel;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    BitVector image = m.column_bits(c);
    BitVector combo(m.cols());
    combo.set(c);
    for (;;) {
      const std::size_t low = image.lowest();
      if (low == image.size()) {
        kernel.push_back(std::move(combo));
        break;
      }
      auto it = pivots.find(low);
      if (it == pivots.end()) {
        pivots.emplace(low, Pivot{std::move(image), std::move(combo)});
        break;
      }
      image ^= it->second.image;
      combo ^= it->second.combo;
    }
  }
  return kernel;
}

// ---------------------------------------------------------------------------
// Bigraded spaces and complexes

BigradedSpace::BigradedSpace(std::vector<Generator> generators)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!index_.emplace(generators_[i].id, i).second) {
      throw InvariantError("duplicate generator id '" + generators_[i].id + "'");
    }
  }
}

std::optional<std::size_t> BigradedSpace::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BigradedComplex::BigradedComplex(BigradedSpace space, SparseMatrixF2 differential)
    : space_(std::move(space)), differential_(std::move(differential)) {
  const std::size_t n = space_.size();
  if (differential_.rows() != n || differential_.cols() != n) {
    throw InvariantError("differential is not an endomorphism of the generator space");
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i : differential_.column(j)) {
      const auto& src = space_[j];
      const auto& dst = space_[i];
      if (dst.h != src.h + 1 || dst.q != src.q) {
        throw InvariantError("differential entry " + src.id + " -> " + dst.id +
                             " does not have bidegree (1,0)");
      }
    }
  }
  if (!(differential_ * differential_).is_zero()) {
    throw InvariantError("differential does not square to zero");
  }
}

std::size_t HomologyTable::total() const {
  std::size_t n = 0;
  for (const auto& [bg, d] : dims) n += d;
  return n;
}

void HomologyTable::add(Bigrading bg, std::size_t dim) {
  if (dim == 0) return;
  dims[bg] += dim;
}

nlohmann::json to_json(const HomologyTable& table) {
  auto out = nlohmann::json::array();
  for (const auto& [bg, d] : table.dims) {
    out.push_back({{"h", bg.first}, {"q", bg.second}, {"dim", d}});
  }
  return out;
}

HomologyTable homology_table_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("homology table must be a JSON array");
  HomologyTable table;
  for (const auto& e : j) {
    table.add({e.at("h").get<int>(), e.at("q").get<int>()}, e.at("dim").get<std::size_t>());
  }
  return table;
}

std::string to_string(const HomologyTable& table) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [bg, d] : table.dims) {
    if (!first) os << ", ";
    first = false;
    os << '(' << bg.first << ',' << bg.second << "):" << d;
  }
  os << '}';
  return os.str();
}

HomologyTable homology_dims(const BigradedComplex& c) {
  const auto& space = c.space();
  std::map<Bigrading, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < space.size(); ++i) blocks[{space[i].h, space[i].q}].push_back(i);

  std::map<Bigrading, std::size_t> out_rank;
  for (const auto& [bg, cols] : blocks) {
    auto target = blocks.find({bg.first + 1, bg.second});
    out_rank[bg] = target == blocks.end() ? 0 : rank(c.differential(), target->second, cols);
  }

  HomologyTable table;
  for (const auto& [bg, gens] : blocks) {
    std::size_t incoming = 0;
    if (auto it = out_rank.find({bg.first - 1, bg.second}); it != out_rank.end()) {
      incoming = it->second;
    }
    table.add(bg, gens.size() - out_rank[bg] - incoming);
  }
  return table;
}

BigradedComplex reduce_entry(const BigradedComplex& c, std::size_t i, std::size_t j) {
  const auto& d = c.differential();
  if (i == j || i >= c.size() || j >= c.size() || !d.get(i, j)) {
    throw InputError("not reducible here: no unit entry between distinct generators");
  }
  const std::size_t n = c.size();
  // d' = d_AA + d_{A j} d_{i A}: add column j into every column b with d_{ib} = 1.
  SparseMatrixF2 work = d;
  const auto col_j = d.column(j);
  for (std::size_t b = 0; b < n; ++b) {
    if (b != j && d.get(i, b)) work.add_column(b, col_j);
  }

  std::vector<std::int64_t> new_index(n, -1);
  std::vector<Generator> kept;
  for (std::size_t g = 0; g < n; ++g) {
    if (g == i || g == j) continue;
    new_index[g] = static_cast<std::int64_t>(kept.size());
    kept.push_back(c.space()[g]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t b = 0; b < n; ++b) {
    if (new_index[b] < 0) continue;
    for (auto a : work.column(b)) {
      if (new_index[a] < 0) continue;
      entries.emplace_back(static_cast<std::size_t>(new_index[a]),
                           static_cast<std::size_t>(new_index[b]));
    }
  }
  auto reduced = SparseMatrixF2::from_entries(kept.size(), kept.size(), std::move(entries));
  return BigradedComplex(BigradedSpace(std::move(kept)), std::move(reduced));
}

BigradedComplex simplify(const BigradedComplex& c) {
  BigradedComplex current = c;
  for (;;) {
    const auto& d = current.differential();
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t col = 0; col < d.cols(); ++col) {
      for (auto row : d.column(col)) {
        if (row == col) continue;
        std::pair<std::size_t, std::size_t> cand{row, col};
        if (!best || cand < *best) best = cand;
        break;  // columns are sorted, so the first row is the smallest here
      }
    }
    if (!best) return current;
    current = reduce_entry(current, best->first, best->second);
  }
}

}  // namespace akh
