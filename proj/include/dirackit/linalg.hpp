#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dirackit/eigen_support.hpp"
#include "dirackit/errors.hpp"

namespace dirackit {

// Exact row reduction over any field scalar. Pivot rule: leftmost nonzero
// column, first available row. Returns the rank; pivot columns and the raw
// pivot values are reported through the optional out-parameters.
template <class F>
int rowReduce(Mat<F>& m, std::vector<int>* pivotCols = nullptr,
              std::vector<F>* pivots = nullptr) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    F piv = m(r, c);
    if (pivots) pivots->push_back(piv);
    if (pivotCols) pivotCols->push_back(c);
    F inv = F(1) / piv;
    for (int j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F factor = m(i, c);
      for (int j = c; j < cols; ++j) m(i, j) = m(i, j) - factor * m(r, j);
    }
    ++r;
  }
  return r;
}

template <class F>
Mat<F> rref(Mat<F> m) {
  rowReduce(m);
  return m;
}

template <class F>
int rank(Mat<F> m) {
  return rowReduce(m);
}

// RREF with zero rows dropped: the canonical basis of the row span.
template <class F>
Mat<F> rowSpanBasis(Mat<F> m, std::vector<F>* pivots = nullptr) {
  int r = rowReduce(m, nullptr, pivots);
  return m.topRows(r).eval();
}

// Basis of the right kernel, one row per free column, each row scaled so its
// first nonzero entry is 1.
template <class F>
Mat<F> kernelBasis(Mat<F> m, std::vector<F>* pivots = nullptr) {
  const int cols = static_cast<int>(m.cols());
  std::vector<int> pivotCols;
  int r = rowReduce(m, &pivotCols, pivots);
  std::vector<int> freeCols;
  {
    size_t k = 0;
    for (int c = 0; c < cols; ++c) {
      if (k < pivotCols.size() && pivotCols[k] == c) {
        ++k;
      } else {
        freeCols.push_back(c);
      }
    }
  }
  Mat<F> out(static_cast<int>(freeCols.size()), cols);
  out.setZero();
  for (size_t v = 0; v < freeCols.size(); ++v) {
    int f = freeCols[v];
    out(static_cast<int>(v), f) = F(1);
    for (int i = 0; i < r; ++i) out(static_cast<int>(v), pivotCols[i]) = -m(i, f);
    for (int c = 0; c < cols; ++c) {
      if (is_zero(out(static_cast<int>(v), c))) continue;
      F inv = F(1) / out(static_cast<int>(v), c);
      for (int j = c; j < cols; ++j)
        out(static_cast<int>(v), j) = out(static_cast<int>(v), j) * inv;
      break;
    }
  }
  return out;
}

template <class F>
Mat<F> stackRows(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw DimensionMismatch("stackRows: column counts differ");
  int cols = a.rows() != 0 ? static_cast<int>(a.cols()) : static_cast<int>(b.cols());
  Mat<F> out(a.rows() + b.rows(), cols);
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

template <class F>
bool matEq(const Mat<F>& a, const Mat<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class F>
bool sameRowSpan(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols() != b.cols()) return false;
  Mat<F> ra = rowSpanBasis(a), rb = rowSpanBasis(b);
  return matEq(ra, rb);
}

template <class F>
bool inRowSpan(const Mat<F>& rowVec, const Mat<F>& m) {
  if (m.rows() == 0) {
    for (int j = 0; j < rowVec.cols(); ++j)
      if (!is_zero(rowVec(0, j))) return false;
    return true;
  }
  return rank<F>(m) == rank<F>(stackRows(m, rowVec));
}

// rows spanning the annihilator {v : m v = 0} of the row span of m;
// over any field, double annihilation recovers the row span.
template <class F>
Mat<F> annihilator(const Mat<F>& m) {
  return kernelBasis<F>(m);
}

template <class F>
Mat<F> rowSpanSum(const Mat<F>& a, const Mat<F>& b) {
  return rowSpanBasis<F>(stackRows(a, b));
}

template <class F>
Mat<F> rowSpanIntersect(const Mat<F>& a, const Mat<F>& b) {
  Mat<F> constraints = stackRows(annihilator(a), annihilator(b));
  if (constraints.rows() == 0) {
    Mat<F> id(a.cols(), a.cols());
    id.setZero();
    for (int i = 0; i < a.cols(); ++i) id(i, i) = F(1);
    return id;
  }
  return rowSpanBasis<F>(kernelBasis(constraints));
}

// One solution of A x = b, or nothing when inconsistent.
template <class F>
std::optional<Vec<F>> solveLinear(const Mat<F>& a, const Vec<F>& b) {
  Mat<F> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<int> pivotCols;
  int r = rowReduce(aug, &pivotCols);
  if (!pivotCols.empty() && pivotCols.back() == static_cast<int>(a.cols()))
    return std::nullopt;
  Vec<F> x(a.cols());
  for (int j = 0; j < a.cols(); ++j) x(j) = F(0);
  for (int i = 0; i < r; ++i) x(pivotCols[i]) = aug(i, a.cols());
  return x;
}

template <class F>
Mat<F> inverseMatrix(const Mat<F>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const int n = static_cast<int>(m.rows());
  Mat<F> aug(n, 2 * n);
  aug.setZero();
  aug.leftCols(n) = m;
  for (int i = 0; i < n; ++i) aug(i, n + i) = F(1);
  std::vector<int> pivotCols;
  rowReduce(aug, &pivotCols);
  if (static_cast<int>(pivotCols.size()) < n || pivotCols[n - 1] >= n)
    throw NotTransverse("matrix not invertible over the field");
  return aug.rightCols(n).eval();
}

}  // namespace dirackit
