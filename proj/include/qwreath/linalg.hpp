#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qwreath/coeff.hpp"

namespace qw {

inline bool fieldIsZero(const Fp& x) { return x.isZero(); }
inline bool fieldIsZero(const Rational& x) { return x == 0; }
inline Fp fieldInverse(const Fp& x) { return x.inverse(); }
inline Rational fieldInverse(const Rational& x) { return 1 / x; }

template <class F>
using Matrix = std::vector<std::vector<F>>;

// Row-reduces in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rowReduce(Matrix<F>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && fieldIsZero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    F inv = fieldInverse(a[r][c]);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || fieldIsZero(a[i][c])) continue;
      F f = a[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!fieldIsZero(a[r][k])) a[i][k] = a[i][k] - f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return rowReduce(a).size();
}

// Basis of {x : a x = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> a, std::size_t cols) {
  std::vector<std::vector<F>> basis;
  if (a.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<F> e(cols);
      e[j] = F(1);
      basis.push_back(std::move(e));
    }
    return basis;
  }
  auto piv = rowReduce(a);
  std::vector<int> pivotRow(cols, -1);
  for (std::size_t i = 0; i < piv.size(); ++i) pivotRow[piv[i]] = static_cast<int>(i);
  for (std::size_t f = 0; f < cols; ++f) {
    if (pivotRow[f] >= 0) continue;
    std::vector<F> x(cols);
    x[f] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -a[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

// Solves a x = b; nullopt when inconsistent. Free variables are set to zero.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& a, const std::vector<F>& b, std::size_t cols) {
  Matrix<F> aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rowReduce(aug);
  std::vector<F> x(cols);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == cols) return std::nullopt;
    x[piv[i]] = aug[i][cols];
  }
  return x;
}

// Incrementally maintained reduced echelon basis of a row space.
template <class F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t cols) : cols_(cols), pivotOf_(cols, -1) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  // Reduces v against the basis; returns true if it was independent (and adds it).
  bool add(std::vector<F> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < cols_ && fieldIsZero(v[p])) ++p;
    if (p == cols_) return false;
    F inv = fieldInverse(v[p]);
    for (std::size_t k = p; k < cols_; ++k) v[k] = v[k] * inv;
    for (auto& row : rows_) {
      if (fieldIsZero(row[p])) continue;
      F f = row[p];
      for (std::size_t k = p; k < cols_; ++k)
        if (!fieldIsZero(v[k])) row[k] = row[k] - f * v[k];
    }
    pivotOf_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  void reduce(std::vector<F>& v) const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (fieldIsZero(v[c]) || pivotOf_[c] < 0) continue;
      F f = v[c];
      const auto& row = rows_[pivotOf_[c]];
      for (std::size_t k = c; k < cols_; ++k)
        if (!fieldIsZero(row[k])) v[k] = v[k] - f * row[k];
    }
  }

  const std::vector<std::vector<F>>& rows() const { return rows_; }

  // Basis of {x : r·x = 0 for every stored row r}.
  std::vector<std::vector<F>> kernel() const {
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivotOf_[f] >= 0) continue;
      std::vector<F> x(cols_);
      x[f] = F(1);
      for (std::size_t c = 0; c < cols_; ++c)
        if (pivotOf_[c] >= 0) x[c] = -rows_[pivotOf_[c]][f];
      basis.push_back(std::move(x));
    }
    return basis;
  }

  bool contains(std::vector<F> v) const {
    reduce(v);
    for (auto& x : v)
      if (!fieldIsZero(x)) return false;
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<int> pivotOf_;
  std::vector<std::vector<F>> rows_;
};

}  // namespace qw
