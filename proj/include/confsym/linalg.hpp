#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "confsym/rational.hpp"

namespace confsym {

// Sorted by index, no zero entries.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;
using DenseVec = std::vector<Rational>;
using Matrix = std::vector<DenseVec>;

// y + f * x for sparse vectors.
SparseVec axpy(const SparseVec& y, const Rational& f, const SparseVec& x);
SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, std::size_t size);

// Row echelon form of a growing set of sparse vectors. Each row keeps a "tag"
// recording the combination of inserted vectors it came from, which turns
// span membership into explicit coefficients and dependencies into kernel
// vectors.
class SparseEchelon {
 public:
  // Reduces v (and its tag, when given) against the stored rows. On return v
  // has no entry in a pivot column.
  void reduce(SparseVec& v, SparseVec* tag = nullptr) const;

  // Inserts v if independent; returns false (and leaves the basis unchanged)
  // otherwise. When tag_out is non-null it receives the reduced tag.
  bool insert(SparseVec v, SparseVec tag = {}, SparseVec* tag_out = nullptr);

  bool contains(SparseVec v) const;
  // Coefficients c with v = sum_j c_j (j-th inserted vector), assuming every
  // inserted vector j carried the tag e_j. nullopt when v is not in the span.
  std::optional<SparseVec> coordinates(SparseVec v) const;
  std::size_t rank() const { return rows_.size(); }

  // Fully reduced rows, ordered by increasing pivot.
  std::vector<SparseVec> reduced_rows() const;

 private:
  struct Row {
    SparseVec v;
    SparseVec tag;
  };
  std::vector<Row> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
};

// Dense numbering of arbitrary ordered keys, in order of first use.
template <class Key>
class Indexer {
 public:
  std::uint32_t id(const Key& k) {
    auto [it, inserted] = ids_.try_emplace(k, static_cast<std::uint32_t>(keys_.size()));
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  std::optional<std::uint32_t> find(const Key& k) const {
    auto it = ids_.find(k);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(std::uint32_t i) const { return keys_[i]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::map<Key, std::uint32_t> ids_;
  std::vector<Key> keys_;
};

// Sorts entries by index and merges duplicates.
SparseVec normalize(std::vector<std::pair<std::uint32_t, Rational>> entries);

// Kernel of the linear map whose j-th column (image of the j-th domain basis
// vector) is columns[j]. Basis returned in reduced row echelon form.
std::vector<SparseVec> kernel_of_columns(const std::vector<SparseVec>& columns);

// Rank of a family of sparse vectors.
std::size_t rank_of(const std::vector<SparseVec>& vectors);

// Reduced echelon basis of the span of the given vectors.
std::vector<SparseVec> rref_basis(const std::vector<SparseVec>& vectors);

// Linear system with a small number of unknowns and many equations, kept in
// reduced row echelon form as equations arrive.
class DenseSystem {
 public:
  explicit DenseSystem(std::size_t unknowns);

  // sum_j coeffs[j] x_j = rhs.
  void add_equation(const DenseVec& coeffs, const Rational& rhs);
  void add_equation(const SparseVec& coeffs, const Rational& rhs);

  std::size_t unknowns() const { return width_ - 1; }
  std::size_t rank() const;
  bool consistent() const;

  // Particular solution with free variables set to zero; requires consistent().
  DenseVec particular_solution() const;
  // Basis of the homogeneous solution space.
  std::vector<DenseVec> kernel() const;
  // Pivot columns of the coefficient part.
  std::vector<std::size_t> pivot_columns() const;

 private:
  void insert_row(DenseVec row);

  std::size_t width_;
  std::vector<DenseVec> rows_;
  std::vector<std::size_t> pivots_;
};

Matrix identity_matrix(std::size_t n);
Rational determinant(Matrix a);
// Throws InvalidArgument when singular.
Matrix inverse(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
DenseVec multiply(const Matrix& a, const DenseVec& v);
std::size_t rank(Matrix a);

}  // namespace confsym
