#pragma once

// Linear algebra over the two-element field: packed bit vectors, sparse
// matrices, bigraded chain complexes and their homology, and Gaussian
// elimination of unit entries ("reduction") on complexes.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace akh {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  bool none() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or size() when empty.
  std::size_t lowest() const;
  std::vector<std::size_t> ones() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incrementally built echelon basis of a subspace of F_2^n, keyed by the
/// lowest set bit of each basis vector.
class XorBasis {
 public:
  explicit XorBasis(std::size_t ambient) : ambient_(ambient) {}

  /// Reduces `v` against the basis in place; returns true when it reduced to 0.
  bool reduce(BitVector& v) const;
  /// Adds `v` if it is independent of the current basis.
  bool insert(BitVector v);
  bool contains(BitVector v) const { return reduce(v); }
  std::size_t dimension() const { return pivots_.size(); }
  std::size_t ambient() const { return ambient_; }

 private:
  std::size_t ambient_;
  std::map<std::size_t, BitVector> pivots_;
};

/// Sparse matrix over F_2 stored column-major; each column is a sorted list
/// of row indices. Setting an entry twice cancels it.
class SparseMatrixF2 {
 public:
  SparseMatrixF2() = default;
  SparseMatrixF2(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  /// Builds from (row, col) pairs; repeated pairs cancel in pairs.
  static SparseMatrixF2 from_entries(std::size_t rows, std::size_t cols,
                                     std::vector<std::pair<std::size_t, std::size_t>> entries);
  static SparseMatrixF2 identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::uint32_t>& column(std::size_t c) const { return columns_[c]; }

  bool get(std::size_t r, std::size_t c) const;
  void toggle(std::size_t r, std::size_t c);
  /// Adds column `src` of `other` into column `dst` of this matrix.
  void add_column(std::size_t dst, const std::vector<std::uint32_t>& src);

  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }
  /// All nonzero entries as (row, col), sorted by row then column.
  std::vector<std::pair<std::size_t, std::size_t>> entries() const;

  SparseMatrixF2 transpose() const;
  BitVector column_bits(std::size_t c) const;
  BitVector apply(const BitVector& v) const;

  friend SparseMatrixF2 operator*(const SparseMatrixF2& a, const SparseMatrixF2& b);
  friend SparseMatrixF2 operator+(const SparseMatrixF2& a, const SparseMatrixF2& b);
  friend bool operator==(const SparseMatrixF2&, const SparseMatrixF2&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<std::uint32_t>> columns_;
};

std::size_t rank(const SparseMatrixF2& m);
/// Rank of the submatrix selected by the given row and column index lists.
std::size_t rank(const SparseMatrixF2& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols);
/// Basis of the null space, as vectors over the column index set.
std::vector<BitVector> kernel_basis(const SparseMatrixF2& m);

struct Generator {
  std::string id;
  int h = 0;
  int q = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

class BigradedSpace {
 public:
  BigradedSpace() = default;
  explicit BigradedSpace(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::optional<std::size_t> find(const std::string& id) const;

 private:
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t> index_;
};

/// Square differential on a bigraded space. Construction checks d^2 = 0 and
/// that every entry has bidegree (1, 0); entry (i, j) means d(g_j) contains g_i.
class BigradedComplex {
 public:
  BigradedComplex(BigradedSpace space, SparseMatrixF2 differential);

  const BigradedSpace& space() const { return space_; }
  const SparseMatrixF2& differential() const { return differential_; }
  std::size_t size() const { return space_.size(); }

 private:
  BigradedSpace space_;
  SparseMatrixF2 differential_;
};

using Bigrading = std::pair<int, int>;  // (h, q)

/// Poincare data: bigrading -> dimension. Zero dimensions are never stored.
struct HomologyTable {
  std::map<Bigrading, std::size_t> dims;

  std::size_t total() const;
  void add(Bigrading bg, std::size_t dim);
  friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

nlohmann::json to_json(const HomologyTable& table);
HomologyTable homology_table_from_json(const nlohmann::json& j);
/// Human-readable "{(h,q):dim, ...}".
std::string to_string(const HomologyTable& table);

HomologyTable homology_dims(const BigradedComplex& c);

/// Cancels the unit entry d(g_j) ∋ g_i: removes g_i and g_j and adds the
/// zig-zag term d_{aj} d_{ib} to every remaining entry (a, b).
BigradedComplex reduce_entry(const BigradedComplex& c, std::size_t i, std::size_t j);

/// Repeatedly cancels the lexicographically smallest entry (row, col) until
/// the differential vanishes. The result has one generator per homology
/// dimension.
BigradedComplex simplify(const BigradedComplex& c);

}  // namespace akh
