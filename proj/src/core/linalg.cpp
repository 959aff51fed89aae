#include "confsym/linalg.hpp"

#include <algorithm>

#include "confsym/errors.hpp"

namespace confsym {

SparseVec axpy(const SparseVec& y, const Rational& f, const SparseVec& x) {
  if (f == 0 || x.empty()) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(*iy++);
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, f * ix->second);
      ++ix;
    } else {
      Rational v = iy->second + f * ix->second;
      if (v != 0) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  return out;
}

SparseVec to_sparse(const DenseVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  }
  return out;
}

DenseVec to_dense(const SparseVec& v, std::size_t size) {
  DenseVec out(size, Rational(0));
  for (const auto& [i, c] : v) {
    if (i >= size) throw IndexOutOfRange("sparse index beyond dense size");
    out[i] = c;
  }
  return out;
}

void SparseEchelon::reduce(SparseVec& v, SparseVec* tag) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = pivot_.find(v[pos].first);
    if (it == pivot_.end()) {
      ++pos;
      continue;
    }
    const Row& row = rows_[it->second];
    const Rational f = -v[pos].second;
    v = axpy(v, f, row.v);
    if (tag != nullptr) *tag = axpy(*tag, f, row.tag);
  }
}

bool SparseEchelon::insert(SparseVec v, SparseVec tag, SparseVec* tag_out) {
  reduce(v, &tag);
  if (tag_out != nullptr) *tag_out = tag;
  if (v.empty()) return false;
  const Rational inv = 1 / v.front().second;
  if (inv != 1) {
    for (auto& [i, c] : v) c *= inv;
    for (auto& [i, c] : tag) c *= inv;
  }
  pivot_.emplace(v.front().first, rows_.size());
  rows_.push_back(Row{std::move(v), std::move(tag)});
  return true;
}

bool SparseEchelon::contains(SparseVec v) const {
  reduce(v);
  return v.empty();
}

std::optional<SparseVec> SparseEchelon::coordinates(SparseVec v) const {
  SparseVec tag;
  reduce(v, &tag);
  if (!v.empty()) return std::nullopt;
  for (auto& [i, c] : tag) c = -c;
  return tag;
}

SparseVec normalize(std::vector<std::pair<std::uint32_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [i, c] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += c;
      if (out.back().second == 0) out.pop_back();
    } else if (c != 0) {
      out.emplace_back(i, std::move(c));
    }
  }
  return out;
}

std::vector<SparseVec> SparseEchelon::reduced_rows() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows_[a].v.front().first > rows_[b].v.front().first;
  });
  std::unordered_map<std::uint32_t, SparseVec> done;
  std::vector<SparseVec> out;
  for (std::size_t idx : order) {
    SparseVec v = rows_[idx].v;
    std::size_t pos = 1;
    while (pos < v.size()) {
      auto it = done.find(v[pos].first);
      if (it == done.end()) {
        ++pos;
        continue;
      }
      v = axpy(v, -v[pos].second, it->second);
    }
    done.emplace(v.front().first, v);
    out.push_back(std::move(v));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<SparseVec> kernel_of_columns(const std::vector<SparseVec>& columns) {
  SparseEchelon image;
  SparseEchelon kernel;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    SparseVec tag{{static_cast<std::uint32_t>(j), Rational(1)}};
    SparseVec reduced_tag;
    if (!image.insert(columns[j], tag, &reduced_tag)) kernel.insert(std::move(reduced_tag));
  }
  return kernel.reduced_rows();
}

std::size_t rank_of(const std::vector<SparseVec>& vectors) {
  SparseEchelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<SparseVec> rref_basis(const std::vector<SparseVec>& vectors) {
  SparseEchelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.reduced_rows();
}

DenseSystem::DenseSystem(std::size_t unknowns) : width_(unknowns + 1) {}

void DenseSystem::add_equation(const DenseVec& coeffs, const Rational& rhs) {
  if (coeffs.size() + 1 != width_) throw DimensionMismatch("equation width does not match unknowns");
  DenseVec row(coeffs);
  row.push_back(rhs);
  insert_row(std::move(row));
}

void DenseSystem::add_equation(const SparseVec& coeffs, const Rational& rhs) {
  DenseVec row = to_dense(coeffs, width_ - 1);
  row.push_back(rhs);
  insert_row(std::move(row));
}

void DenseSystem::insert_row(DenseVec row) {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = row[pivots_[r]];
    if (f == 0) continue;
    const DenseVec& base = rows_[r];
    for (std::size_t j = pivots_[r]; j < width_; ++j) {
      if (base[j] != 0) row[j] -= f * base[j];
    }
  }
  std::size_t piv = 0;
  while (piv < width_ && row[piv] == 0) ++piv;
  if (piv == width_) return;
  const Rational inv = 1 / row[piv];
  for (std::size_t j = piv; j < width_; ++j) row[j] *= inv;
  for (auto& other : rows_) {
    const Rational f = other[piv];
    if (f == 0) continue;
    for (std::size_t j = piv; j < width_; ++j) {
      if (row[j] != 0) other[j] -= f * row[j];
    }
  }
  auto at = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  const auto offset = at - pivots_.begin();
  pivots_.insert(at, piv);
  rows_.insert(rows_.begin() + offset, std::move(row));
}

std::size_t DenseSystem::rank() const {
  std::size_t r = 0;
  for (std::size_t p : pivots_) r += p + 1 < width_ ? 1 : 0;
  return r;
}

bool DenseSystem::consistent() const {
  return pivots_.empty() || pivots_.back() + 1 < width_;
}

DenseVec DenseSystem::particular_solution() const {
  if (!consistent()) throw InvalidArgument("linear system is inconsistent");
  DenseVec x(width_ - 1, Rational(0));
  for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = rows_[r][width_ - 1];
  return x;
}

std::vector<DenseVec> DenseSystem::kernel() const {
  const std::size_t w = width_ - 1;
  std::vector<bool> is_pivot(w, false);
  for (std::size_t p : pivots_) {
    if (p < w) is_pivot[p] = true;
  }
  std::vector<DenseVec> out;
  for (std::size_t f = 0; f < w; ++f) {
    if (is_pivot[f]) continue;
    DenseVec v(w, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (pivots_[r] < w) v[pivots_[r]] = -rows_[r][f];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::size_t> DenseSystem::pivot_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t p : pivots_) {
    if (p + 1 < width_) out.push_back(p);
  }
  return out;
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, DenseVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Rational inv = 1 / a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix m = a;
  Matrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw InvalidArgument("matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Rational s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  Matrix out(n, DenseVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b[l][j] != 0) out[i][j] += a[i][l] * b[l][j];
      }
    }
  }
  return out;
}

DenseVec multiply(const Matrix& a, const DenseVec& v) {
  DenseVec out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (a[i][j] != 0 && v[j] != 0) out[i] += a[i][j] * v[j];
    }
  }
  return out;
}

std::size_t rank(Matrix a) {
  std::vector<SparseVec> rows;
  rows.reserve(a.size());
  for (const auto& r : a) rows.push_back(to_sparse(r));
  return rank_of(rows);
}

}  // namespace confsym
